"""Semilattice analytics on the idempotents: covers, filters, tightness.

A finite semilattice makes every filter principal, so filters are stored
by their generating idempotent alone.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import CapExceeded, NotBelow, NotIdempotent
from .semigroup import ZERO


@dataclass(frozen=True)
class FilterRep:
    """The principal filter of nonzero idempotents above ``generator``."""

    generator: int


@dataclass(frozen=True)
class CoverWitness:
    e: int
    cover: frozenset


def is_cover(S, e, F):
    """True iff every nonzero idempotent below e meets some member of F."""
    if not S.is_idempotent(e) or e == ZERO:
        raise NotIdempotent(f"element {e} is not a nonzero idempotent")
    F = list(F)
    for f in F:
        if not S.is_idempotent(f):
            raise NotIdempotent(f"cover member {f} is not idempotent")
        if not S.leq(f, e):
            raise NotBelow(f"cover member {f} is not below {e}")
    for g in S.idempotents_below(e):
        if all(S.prod(g, f) == ZERO for f in F):
            return False
    return True


def is_zero_disjunctive(S):
    """No idempotent is covered by a single idempotent strictly below it.

    Returns (True, None) or (False, (e, f)) with f < e such that every
    nonzero g <= e meets f.
    """
    for e in S.nonzero_idempotents:
        for f in S.idempotents_below(e):
            if f == e:
                continue
            if all(S.prod(f, g) != ZERO for g in S.idempotents_below(e)):
                return False, (e, f)
    return True, None


def is_strongly_zero_disjunctive(S):
    """No idempotent admits any cover by idempotents strictly below it.

    Monotonicity of covering lets a single test per element decide: the
    set of all idempotents strictly below e covers e iff any cover does.
    Returns (True, None) or (False, (e, candidates)).
    """
    for e in S.nonzero_idempotents:
        strictly_below = [f for f in S.idempotents_below(e) if f != e]
        if strictly_below and is_cover(S, e, strictly_below):
            return False, (e, tuple(strictly_below))
    return True, None


def filters(S):
    return [FilterRep(e) for e in S.nonzero_idempotents]


def ultrafilters(S):
    return [FilterRep(m) for m in S.atoms]


def _principal_filter_is_tight(S, e):
    # Not tight iff some e' >= e admits a cover avoiding the filter; by
    # monotonicity the maximal avoiding candidate set decides.
    for ep in S.above(e):
        if not S.is_idempotent(ep):
            continue
        candidates = [f for f in S.idempotents_below(ep) if not S.leq(e, f)]
        if candidates and is_cover(S, ep, candidates):
            return False
    return True


def tight_filters(S):
    return [FilterRep(e) for e in S.nonzero_idempotents if _principal_filter_is_tight(S, e)]


def minimal_covers(S, e, cap=16):
    """All inclusion-minimal covers of e by idempotents strictly below it."""
    if not S.is_idempotent(e) or e == ZERO:
        raise NotIdempotent(f"element {e} is not a nonzero idempotent")
    candidates = [f for f in S.idempotents_below(e) if f != e]
    if len(candidates) > cap:
        raise CapExceeded(f"candidate set below {e}", cap)
    covers = []
    for size in range(1, len(candidates) + 1):
        for combo in combinations(candidates, size):
            if any(set(prev) <= set(combo) for prev in covers):
                continue
            if is_cover(S, e, combo):
                covers.append(combo)
    return [CoverWitness(e, frozenset(c)) for c in covers]


def report_fragment(S):
    """JSON-ready summary of the semilattice structure."""
    zd, zd_wit = is_zero_disjunctive(S)
    szd, szd_wit = is_strongly_zero_disjunctive(S)
    lab = S.label
    return {
        "zero_disjunctive": zd,
        "zero_disjunctive_witness": None if zd else [lab(zd_wit[0]), lab(zd_wit[1])],
        "strongly_zero_disjunctive": szd,
        "strongly_zero_disjunctive_witness": None
        if szd
        else {"element": lab(szd_wit[0]), "cover": sorted(lab(f) for f in szd_wit[1])},
        "filters": [lab(f.generator) for f in filters(S)],
        "ultrafilters": [lab(f.generator) for f in ultrafilters(S)],
        "tight_filters": [lab(f.generator) for f in tight_filters(S)],
    }
