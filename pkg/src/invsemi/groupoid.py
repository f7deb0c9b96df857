"""Germ groupoids of finite inverse semigroups and their bisection monoids.

A germ [s, F] at a principal filter F = up(f) with f <= s*s canonicalizes
to the representative s*f, the least element of s defined on the filter;
equality of germs is then equality of canonical pairs.  For a finite
semigroup the canonical arrows are exactly the nonzero elements, with
domain up(v*v), range up(vv*) and composition the restricted product.

Finite groupoids carry the discrete topology, so every arrow subset is
open, interiors are the sets themselves, and the classification flags
(effective, minimal, topologically free) are honest set-theoretic
specializations of the topological definitions.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .congruence import is_fundamental, is_quasi_fundamental, mu
from .errors import CapExceeded, NotAdditiveIdeal, NotBoolean
from .lattice import FilterRep, tight_filters
from .linalg import SubspaceBasis, nullspace, vec_is_zero
from .semigroup import ZERO, InverseSemigroupTable, validate_table


@dataclass(frozen=True)
class Germ:
    """Canonical germ: rep acting at the filter generated by base."""

    rep: int
    base: int


class GermGroupoid:
    """A finite (discrete) groupoid, germ-built or synthetic.

    objects: tuple of FilterRep (or opaque labels for synthetic builds)
    arrows: tuple of Germ (or opaque labels)
    dom/ran: object index per arrow; comp: (i, j) -> k for d(i) = r(j);
    inv: arrow index per arrow; units: arrow index per object.
    """

    def __init__(self, objects, arrows, dom, ran, comp, inv, units, labels=None):
        self.objects = tuple(objects)
        self.arrows = tuple(arrows)
        self.dom = tuple(dom)
        self.ran = tuple(ran)
        self.comp = dict(comp)
        self.inv = tuple(inv)
        self.units = tuple(units)
        self.labels = tuple(labels) if labels else tuple(str(a) for a in arrows)

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_arrows(self):
        return len(self.arrows)

    def composable(self, i, j):
        return self.dom[i] == self.ran[j]

    def compose(self, i, j):
        return self.comp[(i, j)]

    def is_unit(self, i):
        return i in self.units

    @cached_property
    def orbits(self):
        parent = list(range(self.n_objects))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(self.n_arrows):
            a, b = find(self.dom[i]), find(self.ran[i])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups = {}
        for x in range(self.n_objects):
            groups.setdefault(find(x), []).append(x)
        return [tuple(v) for v in groups.values()]

    def to_json(self):
        objs = [
            o.generator if isinstance(o, FilterRep) else o for o in self.objects
        ]
        arrows = []
        for i, a in enumerate(self.arrows):
            entry = {"label": self.labels[i], "dom": self.dom[i], "ran": self.ran[i]}
            if isinstance(a, Germ):
                entry["rep"] = a.rep
                entry["base"] = a.base
            arrows.append(entry)
        comp = [[self.comp.get((i, j)) for j in range(self.n_arrows)] for i in range(self.n_arrows)]
        return {
            "objects": objs,
            "arrows": arrows,
            "composition": comp,
            "inverse": list(self.inv),
            "units": list(self.units),
        }


def canonical_germ(S, s, base):
    """Least u <= s defined on the filter up(base): the product s*base."""
    rep = S.mul[s][base]
    return Germ(rep, S.mul[S.inv(rep)][rep])


def _germ_groupoid_from_filters(S, filter_gens):
    gens = sorted(filter_gens)
    obj_index = {g: i for i, g in enumerate(gens)}
    objects = tuple(FilterRep(g) for g in gens)
    arrows = []
    arrow_index = {}
    for v in S.nonzero:
        base = S.mul[S.inv(v)][v]
        if base in obj_index:
            g = Germ(v, base)
            arrow_index[g] = len(arrows)
            arrows.append(g)
    dom, ran = [], []
    for g in arrows:
        dom.append(obj_index[g.base])
        ran.append(obj_index[S.mul[g.rep][S.inv(g.rep)]])
    comp = {}
    for i, gi in enumerate(arrows):
        for j, gj in enumerate(arrows):
            if dom[i] == ran[j]:
                comp[(i, j)] = arrow_index[Germ(S.mul[gi.rep][gj.rep], gj.base)]
    inv = [arrow_index[Germ(S.inv(g.rep), S.mul[g.rep][S.inv(g.rep)])] for g in arrows]
    units = [arrow_index[Germ(g, g)] for g in gens]
    labels = [f"[{S.label(g.rep)}@{S.label(g.base)}]" for g in arrows]
    return GermGroupoid(objects, arrows, dom, ran, comp, inv, units, labels)


def universal_groupoid(S):
    """Groupoid of germs over all filters of the idempotent semilattice."""
    return _germ_groupoid_from_filters(S, S.nonzero_idempotents)


def tight_groupoid(S):
    """Restriction of the universal groupoid to the tight filters."""
    gens = [f.generator for f in tight_filters(S)]
    return _germ_groupoid_from_filters(S, gens)


def classify(G):
    """Effectiveness, minimality and topological freeness flags.

    Discrete topology: the isotropy interior is the isotropy itself, so
    effective and topologically free coincide; minimal means one orbit.
    """
    witness = None
    effective = True
    for i in range(G.n_arrows):
        if G.dom[i] == G.ran[i] and not G.is_unit(i):
            effective = False
            witness = G.labels[i]
            break
    return {
        "effective": effective,
        "topologically_free": effective,
        "minimal": len(G.orbits) <= 1,
        "isotropy_witness": witness,
    }


# ---------------------------------------------------------------------------
# synthetic groupoids


def pair_groupoid(n):
    """All arrows i <- j between n objects (a single principal orbit)."""
    objects = list(range(n))
    arrows = [(i, j) for i in range(n) for j in range(n)]
    idx = {a: k for k, a in enumerate(arrows)}
    dom = [j for (_, j) in arrows]
    ran = [i for (i, _) in arrows]
    comp = {}
    for a, (i, j) in enumerate(arrows):
        for b, (k, l) in enumerate(arrows):
            if j == k:
                comp[(a, b)] = idx[(i, l)]
    inv = [idx[(j, i)] for (i, j) in arrows]
    units = [idx[(i, i)] for i in range(n)]
    labels = [f"({i}<-{j})" for (i, j) in arrows]
    return GermGroupoid(objects, arrows, dom, ran, comp, inv, units, labels)


def disjoint_units(n):
    """n objects with only identity arrows."""
    objects = list(range(n))
    arrows = list(range(n))
    comp = {(i, i): i for i in range(n)}
    return GermGroupoid(
        objects, arrows, arrows, arrows, comp, arrows, arrows, [f"u{i}" for i in range(n)]
    )


def group_bundle_groupoid(group_mul, group_inv, labels=None):
    """One object with a finite isotropy group given by its table."""
    n = len(group_mul)
    objects = [0]
    arrows = list(range(n))
    comp = {(i, j): group_mul[i][j] for i in range(n) for j in range(n)}
    unit = next(i for i in range(n) if all(group_mul[i][j] == j for j in range(n)))
    return GermGroupoid(
        objects,
        arrows,
        [0] * n,
        [0] * n,
        comp,
        list(group_inv),
        [unit],
        labels or [f"g{i}" for i in range(n)],
    )


# ---------------------------------------------------------------------------
# compact local bisections


class BisectionMonoid:
    """All local bisections of a finite groupoid, as a Boolean inverse
    monoid: product is pointwise composition, join is union, zero is the
    empty set."""

    def __init__(self, groupoid, table, sets):
        self.groupoid = groupoid
        self.table = table
        self.sets = tuple(sets)
        self.index = {s: i for i, s in enumerate(sets)}

    def element_of(self, arrow_set):
        return self.index[frozenset(arrow_set)]

    def union(self, i, j):
        return self.index.get(self.sets[i] | self.sets[j])

    def difference(self, i, j):
        return self.index[self.sets[i] - self.sets[j]]


def _is_bisection(G, arrow_set):
    doms = [G.dom[a] for a in arrow_set]
    rans = [G.ran[a] for a in arrow_set]
    return len(set(doms)) == len(doms) and len(set(rans)) == len(rans)


def bisection_monoid(G, cap=12):
    if G.n_arrows > cap:
        raise CapExceeded("bisection monoid arrow count", cap)
    all_sets = []
    for size in range(G.n_arrows + 1):
        for combo in combinations(range(G.n_arrows), size):
            if _is_bisection(G, combo):
                all_sets.append(frozenset(combo))
    all_sets.sort(key=lambda s: (len(s), sorted(s)))
    index = {s: i for i, s in enumerate(all_sets)}
    n = len(all_sets)
    mul = [[0] * n for _ in range(n)]
    star = [0] * n
    for i, U in enumerate(all_sets):
        star[i] = index[frozenset(G.inv[u] for u in U)]
        for j, V in enumerate(all_sets):
            prod = frozenset(
                G.compose(u, v) for u in U for v in V if G.composable(u, v)
            )
            mul[i][j] = index[prod]
    labels = ["{}" if not s else "{" + ",".join(G.labels[a] for a in sorted(s)) + "}" for s in all_sets]
    table = validate_table(mul, star, labels)
    return BisectionMonoid(G, table, all_sets)


# ---------------------------------------------------------------------------
# Boolean-inverse structure discovered from a table


def are_compatible(S, s, t):
    return S.is_idempotent(S.mul[s][S.inv(t)]) and S.is_idempotent(S.mul[S.inv(s)][t])


def join(S, s, t):
    """Least upper bound of a compatible pair, or None if absent."""
    ubs = [u for u in S.elements if S.leq(s, u) and S.leq(t, u)]
    for u in ubs:
        if all(S.leq(u, v) for v in ubs):
            return u
    return None


def idempotent_complement(S, e, f):
    """Largest g <= e orthogonal to f (relative complement e minus f)."""
    candidates = [
        g
        for g in S.idempotents_below(e)
        if S.prod(g, f) == ZERO
    ]
    candidates.append(ZERO)
    for g in candidates:
        if all(S.leq(h, g) for h in candidates):
            if join(S, g, S.prod(e, f)) == e:
                return g
    return None


def is_boolean_inverse(S):
    """Joins of compatible pairs exist, idempotents form a generalized
    Boolean algebra, and products distribute over joins."""
    for e in S.nonzero_idempotents:
        for f in S.nonzero_idempotents:
            if idempotent_complement(S, e, f) is None:
                return False
    for s in S.elements:
        for t in S.elements:
            if not are_compatible(S, s, t):
                continue
            j = join(S, s, t)
            if j is None:
                return False
            for u in S.elements:
                if S.prod(u, j) != join(S, S.prod(u, s), S.prod(u, t)):
                    return False
                if S.prod(j, u) != join(S, S.prod(s, u), S.prod(t, u)):
                    return False
    return True


def skew_difference(S, s, t):
    """(ss* minus tt*) s (s*s minus t*t): the largest element below s
    orthogonal to t."""
    ss = S.prod(s, S.inv(s))
    tt = S.prod(t, S.inv(t))
    s_s = S.prod(S.inv(s), s)
    t_t = S.prod(S.inv(t), t)
    left = idempotent_complement(S, ss, tt)
    right = idempotent_complement(S, s_s, t_t)
    if left is None or right is None:
        raise NotBoolean("missing relative complement of idempotents")
    return S.prod(S.prod(left, s), right)


def skew_add(S, s, t):
    d = skew_difference(S, s, t)
    j = join(S, d, t)
    if j is None:
        raise NotBoolean(f"missing join of {d} and {t}")
    return j


# ---------------------------------------------------------------------------
# additive ideals and their quotients


def is_additive_ideal(S, ideal):
    """Two-sided semigroup ideal containing 0, closed under joins of
    orthogonal idempotents."""
    ideal = set(ideal)
    if ZERO not in ideal:
        return False
    for s in ideal:
        for u in S.elements:
            if S.prod(u, s) not in ideal or S.prod(s, u) not in ideal:
                return False
    idem = [e for e in ideal if S.is_idempotent(e)]
    for e in idem:
        for f in idem:
            if S.prod(e, f) == ZERO:
                j = join(S, e, f)
                if j is not None and j not in ideal:
                    return False
    return True


def principal_additive_ideal(S, s):
    ideal = {ZERO, s}
    changed = True
    while changed:
        changed = False
        for x in list(ideal):
            for u in S.elements:
                for p in (S.prod(u, x), S.prod(x, u)):
                    if p not in ideal:
                        ideal.add(p)
                        changed = True
        idem = [e for e in ideal if S.is_idempotent(e)]
        for e in idem:
            for f in idem:
                if S.prod(e, f) == ZERO:
                    j = join(S, e, f)
                    if j is not None and j not in ideal:
                        ideal.add(j)
                        changed = True
    return frozenset(ideal)


def is_additively_zero_simple(S):
    full = frozenset(S.elements)
    return all(principal_additive_ideal(S, s) == full for s in S.nonzero)


def is_additively_congruence_free(S):
    """Fundamental plus no proper nonzero additive ideal."""
    return is_fundamental(S) and is_additively_zero_simple(S)


def additive_ideal_quotient(S, ideal):
    """Quotient by an additive ideal: elements collapse when they agree
    off the ideal (a common lower bound whose skew differences both land
    in the ideal).  Returns (quotient table, projection list)."""
    ideal = frozenset(ideal)
    if not is_additive_ideal(S, ideal):
        raise NotAdditiveIdeal(str(sorted(ideal)))

    def equivalent(s, t):
        for u in S.elements:
            if not (S.leq(u, s) and S.leq(u, t)):
                continue
            if skew_difference(S, s, u) in ideal and skew_difference(S, t, u) in ideal:
                return True
        return False

    reps = []
    proj = [None] * S.size
    for s in S.elements:
        for i, r in enumerate(reps):
            if equivalent(s, r):
                proj[s] = i
                break
        else:
            proj[s] = len(reps)
            reps.append(s)
    # put the class of zero first
    z = proj[ZERO]
    if z != 0:
        order = [z] + [i for i in range(len(reps)) if i != z]
        relabel = {old: new for new, old in enumerate(order)}
        reps = [reps[i] for i in order]
        proj = [relabel[p] for p in proj]
    n = len(reps)
    mul = [[proj[S.prod(reps[i], reps[j])] for j in range(n)] for i in range(n)]
    star = [proj[S.inv(reps[i])] for i in range(n)]
    labels = [S.label(r) + "~" for r in reps]
    return validate_table(mul, star, labels), proj


# ---------------------------------------------------------------------------
# convolution algebra of a finite groupoid


def convolve(G, field, f, g):
    """(f * g)(arrow) summed over factorizations in the groupoid."""
    out = {}
    for a, ca in f.items():
        for b, cb in g.items():
            if not G.composable(a, b):
                continue
            c = G.compose(a, b)
            v = field.add(out.get(c, field.zero), field.mul(ca, cb))
            if v == field.zero:
                out.pop(c, None)
            else:
                out[c] = v
    return out


def element_to_function(S, G, field, a):
    """Image of an algebra element as a germ-groupoid function: the value
    at a canonical arrow is the coefficient sum over elements above it."""
    arrow_of = {g.rep: i for i, g in enumerate(G.arrows)}
    out = {}
    for i, germ in enumerate(G.arrows):
        s = field.zero
        for t in S.above(germ.rep):
            if t in a.terms:
                s = field.add(s, a.terms[t])
        if s != field.zero:
            out[i] = s
    return out, arrow_of


def iso_check(S, field):
    """Verify the canonical map onto the universal-groupoid convolution
    algebra is bijective and multiplicative on all basis pairs."""
    from .algebra import AlgebraElement, multiply

    G = universal_groupoid(S)
    if G.n_arrows != S.size - 1:
        return False
    # bijectivity: the transform matrix has full rank
    rows = []
    for i, germ in enumerate(G.arrows):
        rows.append({t: field.one for t in S.above(germ.rep)})
    if nullspace(field, rows, list(S.nonzero)).dim != 0:
        return False
    # multiplicativity on basis pairs
    for s in S.nonzero:
        fs, _ = element_to_function(S, G, field, AlgebraElement.from_element(field, s))
        for t in S.nonzero:
            ft, _ = element_to_function(S, G, field, AlgebraElement.from_element(field, t))
            st = S.mul[s][t]
            prod_elem = AlgebraElement(field, {} if st == ZERO else {st: field.one})
            fst, _ = element_to_function(S, G, field, prod_elem)
            if convolve(G, field, fs, ft) != fst:
                return False
    return True


def singular_functions(G, field):
    """Functions supported on a set with empty interior; a finite
    groupoid is discrete, so only the zero function qualifies."""
    return SubspaceBasis(field)


def restriction_to_tight_kernel(S, field):
    """Kernel of composing the groupoid-function transform with
    restriction to the tight groupoid."""
    tight_gens = {f.generator for f in tight_filters(S)}
    rows = []
    for v in S.nonzero:
        if S.mul[S.inv(v)][v] in tight_gens:
            rows.append({t: field.one for t in S.above(v)})
    return nullspace(field, rows, list(S.nonzero))


def groupoid_algebra_presentation_kernel(bis, field):
    """Kernel of the map from the bisection-monoid algebra onto the
    groupoid convolution algebra (bisection goes to its indicator)."""
    G = bis.groupoid
    rows = []
    by_arrow = [{} for _ in range(G.n_arrows)]
    for i, U in enumerate(bis.sets):
        if i == 0:
            continue
        for a in U:
            by_arrow[a][i] = field.one
    rows = [r for r in by_arrow if r]
    return nullspace(field, rows, list(range(1, len(bis.sets))))


def orthogonal_join_ideal(bis, field):
    """Ideal generated by U + V - (U or V) over disjoint idempotent
    bisections, inside the bisection-monoid algebra."""
    from .algebra import AlgebraElement, ideal_generated_by

    S = bis.table
    unit_arrows = set(bis.groupoid.units)
    seeds = []
    n = len(bis.sets)
    for i in range(1, n):
        U = bis.sets[i]
        if not U <= unit_arrows:
            continue
        for j in range(1, n):
            V = bis.sets[j]
            if not V <= unit_arrows or (U & V):
                continue
            k = bis.index[U | V]
            seeds.append(
                AlgebraElement(field, {i: 1})
                + AlgebraElement(field, {j: 1})
                - AlgebraElement(field, {k: 1})
            )
    return ideal_generated_by(S, field, seeds)
