"""Exact linear algebra over a Field on sparse vectors.

Vectors are dicts mapping a column key (canonically an element index) to a
nonzero scalar.  A SubspaceBasis keeps its vectors in reduced echelon form
with respect to the column order, which makes bases unique and therefore
diffable across runs.
"""


def vec_is_zero(v):
    return not v


def vec_scale(field, v, c):
    if c == field.zero:
        return {}
    return {k: field.mul(x, c) for k, x in v.items()}


def vec_add(field, u, v):
    out = dict(u)
    for k, x in v.items():
        s = field.add(out.get(k, field.zero), x)
        if s == field.zero:
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vec_sub(field, u, v):
    return vec_add(field, u, vec_scale(field, v, field.neg(field.one)))


def vec_addmul(field, u, v, c):
    """u + c*v, dropping cancellations."""
    if c == field.zero:
        return dict(u)
    out = dict(u)
    for k, x in v.items():
        s = field.add(out.get(k, field.zero), field.mul(c, x))
        if s == field.zero:
            out.pop(k, None)
        else:
            out[k] = s
    return out


class SubspaceBasis:
    """A subspace in reduced echelon form over the canonical column order.

    Each basis vector has a distinct leading column (its least key), the
    leading coefficient is 1, and no other basis vector has support there.
    """

    def __init__(self, field, vectors=()):
        self.field = field
        self._by_lead = {}
        for v in vectors:
            self.insert(v)

    @property
    def dim(self):
        return len(self._by_lead)

    @property
    def vectors(self):
        return [self._by_lead[lead] for lead in sorted(self._by_lead)]

    def reduce(self, v):
        """Remainder of v modulo the subspace; zero dict iff v is a member."""
        field = self.field
        v = dict(v)
        while v:
            lead = min(v)
            row = self._by_lead.get(lead)
            if row is None:
                # try lower columns already cleared; any remaining pivot?
                hit = [k for k in v if k in self._by_lead]
                if not hit:
                    return v
                lead = min(hit)
                row = self._by_lead[lead]
            v = vec_addmul(field, v, row, field.neg(v[lead]))
        return v

    def contains(self, v):
        return vec_is_zero(self.reduce(v))

    def insert(self, v):
        """Add v to the subspace; returns True if the dimension grew."""
        field = self.field
        r = self.reduce(v)
        if vec_is_zero(r):
            return False
        lead = min(r)
        r = vec_scale(field, r, field.inv(r[lead]))
        # back-substitute into existing rows to stay fully reduced
        for other_lead, row in list(self._by_lead.items()):
            if lead in row:
                self._by_lead[other_lead] = vec_addmul(field, row, r, field.neg(row[lead]))
        self._by_lead[lead] = r
        return True

    def equals(self, other):
        if self.dim != other.dim:
            return False
        return all(other.contains(v) for v in self.vectors) and all(
            self.contains(v) for v in other.vectors
        )

    def issubspace_of(self, other):
        return all(other.contains(v) for v in self.vectors)

    def to_json(self, keylabel, field=None):
        field = field or self.field
        return [
            {keylabel(k): field.tostr(c) for k, c in sorted(v.items())}
            for v in self.vectors
        ]


def nullspace(field, rows, columns):
    """Basis of {x : row · x = 0 for every row}, as a SubspaceBasis.

    ``rows`` is an iterable of sparse constraint vectors over ``columns``.
    """
    columns = list(columns)
    pos = {c: i for i, c in enumerate(columns)}
    # forward elimination on a working copy
    work = []
    pivot_of_col = {}
    for row in rows:
        r = dict(row)
        while r:
            lead = min(r, key=lambda c: pos[c])
            piv = pivot_of_col.get(lead)
            if piv is None:
                r = vec_scale(field, r, field.inv(r[lead]))
                pivot_of_col[lead] = r
                work.append(r)
                break
            r = vec_addmul(field, r, piv, field.neg(r[lead]))
    free_cols = [c for c in columns if c not in pivot_of_col]
    basis = SubspaceBasis(field)
    for fc in free_cols:
        # back-substitute the unit vector at the free column
        sol = {fc: field.one}
        for c in reversed(columns):
            piv = pivot_of_col.get(c)
            if piv is None:
                continue
            s = field.zero
            for k, x in piv.items():
                if k != c and k in sol:
                    s = field.add(s, field.mul(x, sol[k]))
            if s != field.zero:
                sol[c] = field.neg(s)
        basis.insert(sol)
    return basis
