"""Finite inverse semigroups with zero, given by multiplication tables.

Element ids are small ints; id 0 is always the zero element.  Tables are
validated, not trusted: a malformed input fails fast with the first
witness (associativity triple, inverse-uniqueness pair, non-commuting
idempotents, or a non-absorbing zero).
"""

import json
from functools import cached_property

from .errors import AxiomViolation, CapExceeded, ParseError

ZERO = 0


class InverseSemigroupTable:
    """An immutable, validated finite inverse semigroup with zero.

    ``mul`` is a size x size tuple of element ids, ``star`` the involution,
    ``labels`` optional display names (index 0 is the zero).
    """

    def __init__(self, mul, star, labels=None, _checked=False):
        self.size = len(mul)
        self.mul = tuple(tuple(row) for row in mul)
        self.star = tuple(star)
        if labels is None:
            labels = ["0"] + [f"s{i}" for i in range(1, self.size)]
        self.labels = tuple(labels)
        if not _checked:
            violations = find_violations(self.mul, self.star)
            if violations:
                raise AxiomViolation(*violations[0])

    def __repr__(self):
        return f"InverseSemigroupTable(size={self.size})"

    def prod(self, s, t):
        return self.mul[s][t]

    def inv(self, s):
        return self.star[s]

    def label(self, s):
        return self.labels[s]

    @property
    def elements(self):
        return range(self.size)

    @property
    def nonzero(self):
        return range(1, self.size)

    @cached_property
    def idempotents(self):
        return tuple(e for e in self.elements if self.mul[e][e] == e)

    @cached_property
    def nonzero_idempotents(self):
        return tuple(e for e in self.idempotents if e != ZERO)

    def is_idempotent(self, e):
        return self.mul[e][e] == e

    def leq(self, s, t):
        """Natural partial order: s <= t iff s = t s* s."""
        return s == self.mul[t][self.mul[self.star[s]][s]]

    @cached_property
    def _lower_sets(self):
        low = []
        for s in self.elements:
            low.append(tuple(u for u in self.nonzero if self.leq(u, s)))
        return tuple(low)

    def below(self, s):
        """Nonzero elements <= s."""
        return self._lower_sets[s]

    @cached_property
    def _upper_sets(self):
        ups = [[] for _ in self.elements]
        for s in self.elements:
            for u in self.below(s):
                ups[u].append(s)
        return tuple(tuple(sorted(u)) for u in ups)

    def above(self, u):
        """Elements >= u (u nonzero assumed)."""
        return self._upper_sets[u]

    def idempotents_below(self, e):
        return tuple(f for f in self.below(e) if self.is_idempotent(f))

    @cached_property
    def atoms(self):
        """Minimal nonzero idempotents."""
        out = []
        for e in self.nonzero_idempotents:
            if all(f == e for f in self.idempotents_below(e)):
                out.append(e)
        return tuple(out)

    def to_json(self):
        return {
            "size": self.size,
            "mul": [list(row) for row in self.mul],
            "star": list(self.star),
            "labels": list(self.labels),
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data):
        try:
            mul = data["mul"]
            star = data["star"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"missing field in semigroup file: {exc}") from exc
        size = data.get("size", len(mul))
        if size != len(mul):
            raise ParseError("declared size disagrees with table")
        return cls(mul, star, data.get("labels"))

    @classmethod
    def loads(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
        return cls.from_json(data)


def find_violations(mul, star, limit=1):
    """Scan a raw table for axiom failures; returns up to ``limit`` witnesses.

    Each violation is a (kind, witness) pair, in the order they are found:
    shape problems, a non-absorbing zero, an associativity triple, an
    inverse-uniqueness witness, then a non-commuting idempotent pair.
    """
    out = []

    def push(kind, witness):
        out.append((kind, witness))
        return len(out) >= limit

    n = len(mul)
    if n == 0:
        out.append(("malformed", "empty table"))
        return out
    for i, row in enumerate(mul):
        if len(row) != n:
            out.append(("malformed", f"row {i} has length {len(row)}"))
            return out
        for j, v in enumerate(row):
            if not (0 <= v < n):
                out.append(("malformed", (i, j, v)))
                return out
    if len(star) != n or any(not (0 <= v < n) for v in star):
        out.append(("malformed", "involution out of range"))
        return out

    for s in range(n):
        if mul[ZERO][s] != ZERO or mul[s][ZERO] != ZERO:
            if push("zero", s):
                return out
    for a in range(n):
        for b in range(n):
            ab = mul[a][b]
            for c in range(n):
                if mul[ab][c] != mul[a][mul[b][c]]:
                    if push("associativity", (a, b, c)):
                        return out
    for s in range(n):
        t = star[s]
        if mul[mul[s][t]][s] != s or mul[mul[t][s]][t] != t:
            if push("inverse", (s, t)):
                return out
    # uniqueness of the generalized inverse
    for s in range(n):
        for t in range(n):
            if t == star[s]:
                continue
            if mul[mul[s][t]][s] == s and mul[mul[t][s]][t] == t:
                if push("inverse", (s, t, star[s])):
                    return out
    idem = [e for e in range(n) if mul[e][e] == e]
    for e in idem:
        for f in idem:
            if mul[e][f] != mul[f][e]:
                if push("idempotents", (e, f)):
                    return out
    return out


def validate_table(mul, star, labels=None):
    """Check the axioms and return the semigroup, or raise AxiomViolation."""
    violations = find_violations(mul, star)
    if violations:
        raise AxiomViolation(*violations[0])
    return InverseSemigroupTable(mul, star, labels, _checked=True)


def natural_leq(S, s, t):
    return S.leq(s, t)


def leq_all_forms(S, s, t):
    """The four equivalent formulations of the natural order, separately."""
    in_tE = any(S.prod(t, e) == s for e in S.idempotents)
    in_Et = any(S.prod(e, t) == s for e in S.idempotents)
    via_right = s == S.prod(t, S.prod(S.inv(s), s))
    via_left = s == S.prod(S.prod(s, S.inv(s)), t)
    return (in_tE, in_Et, via_right, via_left)


class PartialBijection:
    """An injective partial map on a finite ground set {0, ..., n-1}."""

    def __init__(self, mapping):
        mapping = dict(mapping)
        if len(set(mapping.values())) != len(mapping):
            raise ValueError(f"not injective: {mapping}")
        self.graph = frozenset(mapping.items())
        self.mapping = mapping

    def __eq__(self, other):
        return self.graph == other.graph

    def __hash__(self):
        return hash(self.graph)

    def __repr__(self):
        pairs = ",".join(f"{x}>{y}" for x, y in sorted(self.mapping.items()))
        return f"PartialBijection({pairs or 'empty'})"

    @property
    def domain(self):
        return set(self.mapping)

    @property
    def codomain(self):
        return set(self.mapping.values())

    def inverse(self):
        return PartialBijection({y: x for x, y in self.mapping.items()})

    def compose(self, other):
        """self after other: x -> self(other(x)) where defined."""
        return PartialBijection(
            {x: self.mapping[y] for x, y in other.mapping.items() if y in self.mapping}
        )

    @classmethod
    def identity(cls, points):
        return cls({x: x for x in points})

    @classmethod
    def empty(cls):
        return cls({})


def generate_from_partial_bijections(gens, gen_names=None, cap=20000):
    """Close a set of partial bijections under composition and inversion.

    The empty map is adjoined as the zero (element id 0).  Labels record a
    shortest word expression found for each element; a generator's inverse
    is written with a trailing apostrophe.
    """
    if gen_names is None:
        gen_names = [chr(ord("a") + i) for i in range(len(gens))]
    zero = PartialBijection.empty()
    step = []
    for g, name in zip(gens, gen_names):
        step.append((g, name))
        step.append((g.inverse(), name + "'"))
    index = {zero: 0}
    order = [zero]
    words = {zero: "0"}
    queue = []
    for g, w in step:
        if g not in index:
            index[g] = len(order)
            order.append(g)
            words[g] = w
            queue.append(g)
    while queue:
        cur = queue.pop(0)
        for g, w in step:
            for left, word in ((g.compose(cur), w + words[cur]), (cur.compose(g), words[cur] + w)):
                if left not in index:
                    if len(order) >= cap:
                        raise CapExceeded("closure size", cap)
                    index[left] = len(order)
                    order.append(left)
                    words[left] = word
                    queue.append(left)
    n = len(order)
    mul = [[0] * n for _ in range(n)]
    star = [0] * n
    for i, a in enumerate(order):
        star[i] = index[a.inverse()]
        for j, b in enumerate(order):
            mul[i][j] = index[a.compose(b)]
    labels = [words[a] for a in order]
    return validate_table(mul, star, labels)
