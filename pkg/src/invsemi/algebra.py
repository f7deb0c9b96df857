"""The contracted algebra of a finite inverse semigroup over an exact field.

Elements are sparse combinations of the nonzero semigroup elements; the
semigroup zero is identified with the algebra zero.  The module decides
singularity, computes the singular and tight ideals as echelon subspaces,
builds the quotient by the singular ideal, and issues simplicity verdicts
with machine-checkable certificates.

The singular ideal of a finite semigroup is computed by annihilation
against the minimal nonzero idempotents: condition (R) at a minimal
idempotent m leaves m as the only candidate annihilator, and every
idempotent has a minimal one below it, so the two conditions agree on
finite inputs.  This reduction is validated against a definition-driven
brute-force oracle in the test suite before anything trusts it.
"""

from dataclasses import dataclass, field as dc_field

from .congruence import is_congruence_free, is_fundamental
from .errors import CapExceeded, FieldMismatch
from .fields import Field
from .lattice import minimal_covers, tight_filters
from .linalg import SubspaceBasis, nullspace, vec_add, vec_addmul, vec_is_zero, vec_scale
from .semigroup import ZERO


class AlgebraElement:
    """A sparse K-linear combination of nonzero semigroup elements."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=()):
        self.field = field
        clean = {}
        for s, c in dict(terms).items():
            if s == ZERO:
                continue
            c = field.of(c)
            if c != field.zero:
                clean[s] = c
        self.terms = clean

    @classmethod
    def from_element(cls, field, s, coeff=1):
        return cls(field, {s: field.of(coeff)})

    @classmethod
    def zero_element(cls, field):
        return cls(field, {})

    def is_zero(self):
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def coeff(self, s):
        return self.terms.get(s, self.field.zero)

    def __eq__(self, other):
        return self.field == other.field and self.terms == other.terms

    def __add__(self, other):
        _same(self, other)
        return AlgebraElement(self.field, vec_add(self.field, self.terms, other.terms))

    def __sub__(self, other):
        _same(self, other)
        return AlgebraElement(
            self.field,
            vec_addmul(self.field, self.terms, other.terms, self.field.neg(self.field.one)),
        )

    def scaled(self, c):
        return AlgebraElement(self.field, vec_scale(self.field, self.terms, self.field.of(c)))

    def label_map(self, S):
        return {S.label(s): self.field.tostr(c) for s, c in sorted(self.terms.items())}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*[{s}]" for s, c in sorted(self.terms.items()))


def _same(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")


def multiply(S, field, a, b):
    """Bilinear extension of the table product; zero products vanish."""
    _same(a, b)
    out = {}
    for s, cs in a.terms.items():
        row = S.mul[s]
        for t, ct in b.terms.items():
            u = row[t]
            if u == ZERO:
                continue
            v = field.add(out.get(u, field.zero), field.mul(cs, ct))
            if v == field.zero:
                out.pop(u, None)
            else:
                out[u] = v
    return AlgebraElement(field, out)


def mul_elem_vec(S, field, s, vec):
    """Semigroup element times sparse vector (left multiplication)."""
    out = {}
    row = S.mul[s]
    for t, c in vec.items():
        u = row[t]
        if u == ZERO:
            continue
        v = field.add(out.get(u, field.zero), c)
        if v == field.zero:
            out.pop(u, None)
        else:
            out[u] = v
    return out


def mul_vec_elem(S, field, vec, s):
    out = {}
    for t, c in vec.items():
        u = S.mul[t][s]
        if u == ZERO:
            continue
        v = field.add(out.get(u, field.zero), c)
        if v == field.zero:
            out.pop(u, None)
        else:
            out[u] = v
    return out


def upper_sums(S, a):
    """The transform u -> sum of coefficients over elements above u.

    This is the coordinate form of the element as a function on the
    groupoid of canonical germs; it is invertible, so it is also how the
    symmetric singularity condition and magic elements are decided.
    """
    field = a.field
    out = {}
    for u in S.nonzero:
        s = field.zero
        for t in S.above(u):
            if t in a.terms:
                s = field.add(s, a.terms[t])
        if s != field.zero:
            out[u] = s
    return out


def is_singular(S, field, a):
    """Right-sided singularity test, by definition: every nonzero
    idempotent e admits a nonzero idempotent f <= e with a*f = 0.

    Returns (flag, certificate) where the certificate maps each e to its
    chosen annihilator f (or None on failure, with the stuck e).
    """
    cert = {}
    for e in S.nonzero_idempotents:
        found = None
        for f in S.idempotents_below(e):
            if vec_is_zero(mul_vec_elem(S, field, a.terms, f)):
                found = f
                break
        if found is None:
            return False, {"failed_at": e}
        cert[e] = found
    return True, cert


def is_singular_left(S, field, a):
    """Left-sided variant: f * a = 0."""
    for e in S.nonzero_idempotents:
        if not any(
            vec_is_zero(mul_elem_vec(S, field, f, a.terms)) for f in S.idempotents_below(e)
        ):
            return False
    return True


def is_singular_symmetric(S, field, a):
    """Symmetric variant: every nonzero t has 0 != u <= t whose upper
    coefficient sum vanishes."""
    sums = upper_sums(S, a)
    for t in S.nonzero:
        if not any(u not in sums for u in S.below(t)):
            return False
    return True


def find_magic(S, field, a):
    """Least t whose lower elements all have nonzero upper coefficient
    sums; None exactly when a is singular."""
    sums = upper_sums(S, a)
    for t in S.nonzero:
        if all(u in sums for u in S.below(t)):
            return t
    return None


def singular_ideal(S, field):
    """Echelon basis of the singular ideal, via annihilation of the
    minimal nonzero idempotents (see module docstring)."""
    rows = []
    for m in S.atoms:
        by_target = {}
        for s in S.nonzero:
            u = S.mul[s][m]
            if u != ZERO:
                by_target.setdefault(u, {})[s] = field.one
        rows.extend(by_target.values())
    return nullspace(field, rows, list(S.nonzero))


def singular_set_bruteforce(S, field):
    """Definition-driven oracle: the set of right-singular elements as a
    union of annihilator subspaces, one per choice of f <= e for each e.

    Returns the list of subspaces; their union is exactly the singular
    set, with no reliance on the minimal-idempotent reduction.
    """
    es = list(S.nonzero_idempotents)
    choice_sets = [S.idempotents_below(e) for e in es]
    total = 1
    for cs in choice_sets:
        total *= len(cs)
    if total > 200000:
        raise CapExceeded("singularity oracle choice functions", 200000)

    def rows_for(f):
        by_target = {}
        for s in S.nonzero:
            u = S.mul[s][f]
            if u != ZERO:
                by_target.setdefault(u, {})[s] = field.one
        return list(by_target.values())

    subspaces = []

    def rec(i, rows):
        if i == len(es):
            subspaces.append(nullspace(field, rows, list(S.nonzero)))
            return
        for f in choice_sets[i]:
            rec(i + 1, rows + rows_for(f))

    rec(0, [])
    return subspaces


def ideal_generated_by(S, field, seeds, cap=None):
    """Smallest two-sided ideal subspace containing the seeds.

    Closure under left and right multiplication by all nonzero semigroup
    elements, iterated to a fixpoint; the dimension is the termination
    measure.
    """
    basis = SubspaceBasis(field)
    for a in seeds:
        vec = a.terms if isinstance(a, AlgebraElement) else dict(a)
        basis.insert(vec)
    queue = list(basis.vectors)
    while queue:
        v = queue.pop()
        for s in S.nonzero:
            for prod in (mul_elem_vec(S, field, s, v), mul_vec_elem(S, field, v, s)):
                if not vec_is_zero(prod) and basis.insert(prod):
                    if cap is not None and basis.dim > cap:
                        raise CapExceeded("ideal dimension", cap)
                    queue.append(prod)
    return basis


def cover_generator(S, field, e, cover):
    """The product of (e - f) over the cover, as an algebra element.

    Expanding the product over commuting idempotents below e gives
    e minus the join of the cover, so the two standard generator forms
    coincide term by term.
    """
    acc = AlgebraElement.from_element(field, e)
    for f in sorted(cover):
        ef = AlgebraElement.from_element(field, e) - AlgebraElement.from_element(field, f)
        acc = multiply(S, field, acc, ef)
    return acc


def tight_ideal(S, field, cover_cap=16):
    """Ideal generated by the cover products over all minimal covers."""
    seeds = []
    for e in S.nonzero_idempotents:
        for witness in minimal_covers(S, e, cap=cover_cap):
            seeds.append(cover_generator(S, field, e, witness.cover))
    return ideal_generated_by(S, field, seeds)


def tight_restriction_kernel(S, field):
    """Oracle for the tight ideal: kernel of the map onto the convolution
    algebra of the tight germ groupoid, row per tight-based arrow."""
    tight_gens = {f.generator for f in tight_filters(S)}
    rows = []
    for v in S.nonzero:
        vstar_v = S.mul[S.inv(v)][v]
        if vstar_v in tight_gens:
            rows.append({u: field.one for u in S.above(v)})
    return nullspace(field, rows, list(S.nonzero))


@dataclass
class EssentialAlgebra:
    """The quotient of the contracted algebra by its singular ideal."""

    field: Field
    dim: int
    coset_basis: tuple  # element ids whose cosets form the basis
    structure: dict  # (i, j) -> sparse vector over coset_basis

    def multiply_cosets(self, i, j):
        return self.structure[(i, j)]


def essential_algebra(S, field):
    ideal = singular_ideal(S, field)
    leads = {min(v) for v in ideal.vectors}
    coset_basis = tuple(s for s in S.nonzero if s not in leads)
    structure = {}
    for i in coset_basis:
        for j in coset_basis:
            p = S.mul[i][j]
            vec = {} if p == ZERO else {p: field.one}
            structure[(i, j)] = ideal.reduce(vec)
    return EssentialAlgebra(field, len(coset_basis), coset_basis, structure)


@dataclass
class SimplicityReport:
    field_char: int
    congruence_free: bool
    congruence_free_reason: str
    singular_ideal_dim: int
    tight_ideal_dim: int
    ideals_coincide: bool
    verdict: str
    verdict_reason: str
    singular_basis: list = dc_field(default_factory=list)
    certificates: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "field": {"characteristic": self.field_char},
            "congruence_free": self.congruence_free,
            "congruence_free_reason": self.congruence_free_reason,
            "singular_ideal_dim": self.singular_ideal_dim,
            "tight_ideal_dim": self.tight_ideal_dim,
            "ideals_coincide": self.ideals_coincide,
            "verdict": self.verdict,
            "verdict_reason": self.verdict_reason,
            "singular_basis": self.singular_basis,
            "certificates": self.certificates,
        }


def simplicity_verdict(S, field):
    """Simplicity of the contracted algebra: congruence-free semigroup
    plus trivial singular ideal.

    The report also records the tight ideal and the cross-check that the
    two ideals coincide (automatic for finite semigroups, which always
    have finitely generated order-ideal intersections).
    """
    cf, reason = is_congruence_free(S)
    sing = singular_ideal(S, field)
    tight = tight_ideal(S, field)
    coincide = sing.equals(tight)
    if cf and sing.dim == 0:
        verdict, why = "simple", ""
    elif not cf:
        verdict, why = "not-simple", reason
    else:
        verdict, why = "not-simple", "nonzero singular ideal"
    certificates = {}
    basis_json = []
    for vec in sing.vectors:
        a = AlgebraElement(field, vec)
        ok, cert = is_singular(S, field, a)
        basis_json.append(a.label_map(S))
        if ok:
            certificates[repr(a)] = {S.label(e): S.label(f) for e, f in cert.items()}
    return SimplicityReport(
        field_char=field.char,
        congruence_free=cf,
        congruence_free_reason=reason,
        singular_ideal_dim=sing.dim,
        tight_ideal_dim=tight.dim,
        ideals_coincide=coincide,
        verdict=verdict,
        verdict_reason=why,
        singular_basis=basis_json,
        certificates=certificates,
    )


def characteristic_sweep(S, primes):
    """Verdicts over the rationals and over GF(p) for each given prime."""
    out = [simplicity_verdict(S, Field(0))]
    for p in primes:
        out.append(simplicity_verdict(S, Field(p)))
    return out
