"""Command-line front end.

Subcommands load a semigroup table or an action spec from JSON, run the
requested analysis, and print a text or JSON certificate.  Exit codes:
0 = verdict computed, 1 = input error, 2 = inconclusive (budget ran out).
"""

import argparse
import json
import sys

from . import algebra, congruence, groupoid, lattice, selfsimilar
from .config import Caps
from .errors import AxiomViolation, InvsemiError, ParseError
from .fields import Field
from .semigroup import InverseSemigroupTable, find_violations


def load_input(path):
    """Returns ("semigroup", table) or ("action", data, action)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if isinstance(data, dict) and "kind" in data:
        return "action", data, selfsimilar.action_from_json(data)
    if isinstance(data, dict) and "mul" in data:
        return "semigroup", data, InverseSemigroupTable.from_json(data)
    raise ParseError(f"{path}: neither a semigroup table nor an action spec")


def emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=1, default=str))
    else:
        for line in text_lines:
            print(line)


def fields_from_args(args):
    out = [Field(0)] if args.field is None else [Field(args.field)]
    if args.primes:
        out = [Field(0)] + [Field(p) for p in args.primes]
    return out


def cmd_validate(args, caps):
    try:
        kind, data, obj = load_input(args.path)
    except AxiomViolation as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    if kind == "semigroup":
        violations = find_violations(tuple(map(tuple, data["mul"])), tuple(data["star"]), limit=10)
        if violations:
            for kind_, witness in violations:
                print(f"violation {kind_}: {witness}", file=sys.stderr)
            return 1
        emit(args, {"valid": True, "size": obj.size}, [f"valid inverse semigroup with zero, size {obj.size}"])
    else:
        emit(args, {"valid": True, "kind": data["kind"]}, [f"valid action spec of kind {data['kind']}"])
    return 0


def cmd_analyze(args, caps):
    kind, data, S = load_input(args.path)
    if kind != "semigroup":
        raise ParseError("analyze expects a semigroup table")
    report = {"size": S.size}
    report.update(lattice.report_fragment(S))
    report.update(congruence.report_fragment(S))
    lines = [f"{k}: {v}" for k, v in report.items()]
    emit(args, report, lines)
    return 0


def cmd_simplicity(args, caps):
    kind, data, obj = load_input(args.path)
    worst = 0
    reports = []
    for field in fields_from_args(args):
        if kind == "semigroup":
            rep = algebra.simplicity_verdict(obj, field).to_json()
        else:
            rep, code = _action_report(obj, data, field, caps, args)
            worst = max(worst, code)
        reports.append(rep)
    payload = reports[0] if len(reports) == 1 else reports
    lines = []
    for rep in reports:
        char = rep["field"]["characteristic"] if "field" in rep else rep["characteristic"]
        reason = rep.get("verdict_reason") or rep.get("witness") or ""
        lines.append(f"char {char}: {rep['verdict']}" + (f" ({reason})" if reason else ""))
    emit(args, payload, lines)
    return worst


def _action_report(action, data, field, caps, args):
    branch_input = None
    if data.get("kind") == "branch-shape":
        branch_input = selfsimilar.branch_input_from_json(data, action)
    rep = selfsimilar.verdict_selfsimilar(
        action, field, probe_budget=args.probe_budget or caps.probe, branch_input=branch_input
    )
    code = 0
    sing = rep.get("singularity")
    if sing and sing.get("status") == "inconclusive":
        code = 2
    return rep, code


def cmd_sweep(args, caps):
    kind, data, obj = load_input(args.path)
    primes = args.primes or [2, 3, 5]
    worst = 0
    rows = []
    if kind == "semigroup":
        for rep in algebra.characteristic_sweep(obj, primes):
            rows.append(rep.to_json())
    else:
        for field in [Field(0)] + [Field(p) for p in primes]:
            rep, code = _action_report(obj, data, field, caps, args)
            worst = max(worst, code)
            rows.append(rep)
    # simplicity over some positive characteristic must lift to char 0
    verdicts = {
        (r["field"]["characteristic"] if "field" in r else r["characteristic"]): r["verdict"]
        for r in rows
    }
    if any(v == "simple" for c, v in verdicts.items() if c != 0):
        assert verdicts[0] == "simple", "positive-characteristic simplicity must lift to char 0"
    lines = [f"char {c}: {v}" for c, v in verdicts.items()]
    emit(args, {"sweep": rows}, lines)
    return worst


def cmd_groupoid(args, caps):
    kind, data, S = load_input(args.path)
    if kind != "semigroup":
        raise ParseError("groupoid expects a semigroup table")
    G = groupoid.tight_groupoid(S) if args.tight else groupoid.universal_groupoid(S)
    payload = G.to_json()
    payload["classification"] = groupoid.classify(G)
    lines = [
        f"{'tight' if args.tight else 'universal'} germ groupoid: "
        f"{G.n_objects} objects, {G.n_arrows} arrows",
        f"classification: {payload['classification']}",
    ]
    emit(args, payload, lines)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="invsemi",
        description=(
            "Exact simplicity analysis for contracted inverse semigroup algebras: "
            "congruence-freeness plus a trivial singular ideal decides simplicity, "
            "and over self-similar constructions the verdict can depend on the "
            "characteristic of the coefficient field."
        ),
    )
    ap.add_argument("--json", action="store_true", help="emit JSON instead of text")
    ap.add_argument("--seed", type=int, default=0, help="seed recorded in reports")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("path")
        p.add_argument("--field", type=int, help="characteristic: 0 or a prime")
        p.add_argument("--primes", type=int, nargs="*", help="primes for sweeps")
        p.add_argument("--tight", action="store_true", help="use the tight groupoid")
        p.add_argument("--depth", type=int, help="depth budget for word probes")
        p.add_argument("--probe-budget", type=int, dest="probe_budget")

    for name, fn in (
        ("validate", cmd_validate),
        ("analyze", cmd_analyze),
        ("simplicity", cmd_simplicity),
        ("sweep", cmd_sweep),
        ("groupoid", cmd_groupoid),
    ):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(fn=fn)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        caps = Caps.from_env()
    except ValueError as exc:
        print(f"bad INVSEMI_CAPS: {exc}", file=sys.stderr)
        return 1
    try:
        return args.fn(args, caps)
    except (ParseError, AxiomViolation) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except InvsemiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
