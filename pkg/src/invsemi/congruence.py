"""Congruence-theoretic classification of a finite inverse semigroup.

The headline decision is congruence-freeness, via Baird's three criteria:
fundamental, 0-simple, and 0-disjunctive idempotents.  A brute-force
congruence enumerator doubles as the oracle for small inputs.
"""

from dataclasses import dataclass

from .errors import CapExceeded
from .lattice import is_zero_disjunctive
from .semigroup import ZERO

REASON_FUNDAMENTAL = "not fundamental"
REASON_ZERO_SIMPLE = "not 0-simple"
REASON_DISJUNCTIVE = "not 0-disjunctive"


@dataclass(frozen=True)
class Partition:
    """Block assignment per element id, normalized to first-occurrence ids."""

    blocks: tuple

    @classmethod
    def from_assignment(cls, assign):
        remap = {}
        out = []
        for b in assign:
            if b not in remap:
                remap[b] = len(remap)
            out.append(remap[b])
        return cls(tuple(out))

    def same(self, s, t):
        return self.blocks[s] == self.blocks[t]

    @property
    def block_count(self):
        return len(set(self.blocks))

    def is_equality(self):
        return self.block_count == len(self.blocks)

    def classes(self):
        out = {}
        for i, b in enumerate(self.blocks):
            out.setdefault(b, []).append(i)
        return [tuple(v) for _, v in sorted(out.items())]


def mu(S):
    """Largest idempotent-separating congruence: equal conjugation action
    on every idempotent (s e s* = t e t* for all idempotents e)."""
    sig = {}
    for s in S.elements:
        key = tuple(S.prod(S.prod(s, e), S.inv(s)) for e in S.idempotents)
        sig.setdefault(key, len(sig))
    assign = [
        sig[tuple(S.prod(S.prod(s, e), S.inv(s)) for e in S.idempotents)] for s in S.elements
    ]
    return Partition.from_assignment(assign)


def is_congruence(S, part):
    for s in S.elements:
        for t in S.elements:
            if not part.same(s, t):
                continue
            for u in S.elements:
                if not part.same(S.prod(u, s), S.prod(u, t)):
                    return False
                if not part.same(S.prod(s, u), S.prod(t, u)):
                    return False
    return True


def is_idempotent_separating(S, part):
    idem = S.idempotents
    return all(not part.same(e, f) for e in idem for f in idem if e != f)


def centralizer_of_idempotents(S):
    return tuple(
        s
        for s in S.elements
        if all(S.prod(s, e) == S.prod(e, s) for e in S.idempotents)
    )


def is_fundamental(S):
    return mu(S).is_equality()


def is_quasi_fundamental(S):
    """Every nonzero element commuting with all idempotents sits above a
    nonzero idempotent."""
    for s in centralizer_of_idempotents(S):
        if s == ZERO:
            continue
        if not any(S.is_idempotent(f) for f in S.below(s)):
            return False
    return True


def quasi_fundamental_via_mu(S):
    """Equivalent test: mu-related nonzero pairs have a common nonzero
    lower bound."""
    part = mu(S)
    for s in S.nonzero:
        for t in S.nonzero:
            if not part.same(s, t):
                continue
            if not any(S.leq(u, t) for u in S.below(s)):
                return False
    return True


def is_zero_simple(S):
    """The two-sided ideal of every nonzero element is everything."""
    for s in S.nonzero:
        ideal = {s}
        queue = [s]
        while queue:
            cur = queue.pop()
            for u in S.elements:
                for prod in (S.prod(u, cur), S.prod(cur, u)):
                    if prod not in ideal:
                        ideal.add(prod)
                        queue.append(prod)
        if len(ideal) != S.size:
            return False
    return True


def is_congruence_free(S):
    """Baird's criteria; returns (flag, reason) with a machine-readable
    reason naming the first failing criterion."""
    if not is_fundamental(S):
        return False, REASON_FUNDAMENTAL
    if not is_zero_simple(S):
        return False, REASON_ZERO_SIMPLE
    if not is_zero_disjunctive(S)[0]:
        return False, REASON_DISJUNCTIVE
    return True, ""


def _close_congruence(S, assign, extra_pairs):
    """Smallest congruence containing the partition ``assign`` plus pairs.

    Newly merged pairs are propagated through left and right translations
    until the union-find structure stabilizes.
    """
    parent = list(range(S.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    queue = []
    blocks = {}
    for i, b in enumerate(assign):
        blocks.setdefault(b, []).append(i)
    for members in blocks.values():
        for other in members[1:]:
            if union(members[0], other):
                queue.append((members[0], other))
    for s, t in extra_pairs:
        if union(s, t):
            queue.append((s, t))
    while queue:
        x, y = queue.pop()
        for u in S.elements:
            for a, b in ((S.prod(u, x), S.prod(u, y)), (S.prod(x, u), S.prod(y, u))):
                if union(a, b):
                    queue.append((a, b))
    return Partition.from_assignment([find(x) for x in S.elements])


def enumerate_congruences(S, cap=12):
    """All congruences, as joins of principal congruences (oracle)."""
    if S.size > cap:
        raise CapExceeded("congruence enumeration size", cap)
    equality = Partition.from_assignment(range(S.size))
    seen = {equality}
    frontier = [equality]
    while frontier:
        cong = frontier.pop()
        for s in S.elements:
            for t in range(s + 1, S.size):
                if cong.same(s, t):
                    continue
                bigger = _close_congruence(S, cong.blocks, [(s, t)])
                if bigger not in seen:
                    seen.add(bigger)
                    frontier.append(bigger)
    return sorted(seen, key=lambda p: (p.block_count, p.blocks), reverse=True)


def report_fragment(S):
    cf, reason = is_congruence_free(S)
    lab = S.label
    return {
        "mu_classes": [[lab(x) for x in cls] for cls in mu(S).classes()],
        "fundamental": is_fundamental(S),
        "quasi_fundamental": is_quasi_fundamental(S),
        "centralizer_of_idempotents": [lab(s) for s in centralizer_of_idempotents(S)],
        "zero_simple": is_zero_simple(S),
        "congruence_free": cf,
        "congruence_free_reason": reason,
    }
