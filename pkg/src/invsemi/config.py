"""Run configuration: caps and knobs, overridable via INVSEMI_CAPS.

The environment variable holds comma-separated key=value pairs, e.g.
``INVSEMI_CAPS=closure=5000,cover=12,probe=500``.
"""

import os
from dataclasses import dataclass, replace

CAP_KEYS = ("closure", "cover", "congruence", "bisection", "probe", "depth")


@dataclass(frozen=True)
class Caps:
    closure: int = 20000
    cover: int = 16
    congruence: int = 12
    bisection: int = 12
    probe: int = 2000
    depth: int = 6

    @classmethod
    def from_env(cls, env=None):
        raw = (env if env is not None else os.environ).get("INVSEMI_CAPS", "")
        caps = cls()
        if not raw:
            return caps
        overrides = {}
        for chunk in raw.split(","):
            if not chunk.strip():
                continue
            key, _, value = chunk.partition("=")
            key = key.strip()
            if key not in CAP_KEYS:
                raise ValueError(f"unknown cap {key!r} in INVSEMI_CAPS")
            overrides[key] = int(value)
        return replace(caps, **overrides)
