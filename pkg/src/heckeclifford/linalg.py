"""Exact sparse linear algebra over Q(zeta_4l).

Vectors are dicts {index: raw}, matrices are column-major lists of such dicts,
where raw is the kernel-level field element format.  Everything is exact;
pivot normalization uses the field inverse.  Echelon bases keep the smallest
nonzero index as pivot, which makes all reductions deterministic.
"""

from __future__ import annotations

from . import kernels


def vec_is_zero(v):
    return not v


def vec_scale(v, c, red):
    if kernels.felem_is_zero(c):
        return {}
    out = {}
    for k, x in v.items():
        y = kernels.felem_mul(c, x, red)
        if not kernels.felem_is_zero(y):
            out[k] = y
    return out


def vec_add_into(v, w):
    """v += w in place."""
    for k, x in w.items():
        cur = v.get(k)
        if cur is None:
            v[k] = x
        else:
            y = kernels.felem_add(cur, x)
            if kernels.felem_is_zero(y):
                del v[k]
            else:
                v[k] = y


def vec_submul_into(v, w, c, red):
    """v -= c*w in place; c is a nonzero raw element."""
    for k, x in w.items():
        cur = v.get(k)
        if cur is None:
            y = kernels.felem_neg(kernels.felem_mul(c, x, red))
        else:
            y = kernels.felem_submul(cur, c, x, red)
        if kernels.felem_is_zero(y):
            v.pop(k, None)
        else:
            v[k] = y


def vec_primitive(v):
    """Scale a vector to integer-primitive form (content 1, denominators 1).

    Rescaling does not change the spanned line; using primitive vectors at
    materialization points keeps coefficient growth under control in iterated
    eliminations.
    """
    from math import gcd

    if not v:
        return v
    den_lcm = 1
    for nums, den in v.values():
        den_lcm = den_lcm // gcd(den_lcm, den) * den
    g = 0
    scaled = {}
    for k, (nums, den) in v.items():
        f = den_lcm // den
        nn = tuple(x * f for x in nums)
        scaled[k] = nn
        for x in nn:
            if x:
                g = gcd(g, x)
    if g == 0:
        return {}
    return {k: (tuple(x // g for x in nn), 1) for k, nn in scaled.items()}


def mat_vec(cols, v, red):
    """A @ v for column-major A."""
    out = {}
    for j, c in v.items():
        col = cols[j]
        if not col:
            continue
        for i, a in col.items():
            prod = kernels.felem_mul(a, c, red)
            cur = out.get(i)
            if cur is None:
                y = prod
            else:
                y = kernels.felem_add(cur, prod)
            if kernels.felem_is_zero(y):
                out.pop(i, None)
            else:
                out[i] = y
    return out


def mat_mul(a_cols, b_cols, red):
    return [mat_vec(a_cols, col, red) for col in b_cols]


def mat_sub(a_cols, b_cols, red=None):
    out = []
    for ca, cb in zip(a_cols, b_cols):
        col = dict(ca)
        for i, x in cb.items():
            cur = col.get(i)
            if cur is None:
                y = kernels.felem_neg(x)
            else:
                y = kernels.felem_sub(cur, x)
            if kernels.felem_is_zero(y):
                col.pop(i, None)
            else:
                col[i] = y
        out.append(col)
    return out


def mat_is_zero(cols):
    return all(not c for c in cols)


def mat_identity(n, one_raw):
    return [{i: one_raw} for i in range(n)]


def mat_scale(cols, c, red):
    return [vec_scale(col, c, red) for col in cols]


class Echelon:
    """Echelon basis of sparse vectors; supports membership and rank."""

    def __init__(self, field):
        self.field = field
        self.pivots = {}

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, v):
        """Residual of v: empty iff v lies in the span (fresh dict).

        Elimination stops at the first index without a pivot, so this is a
        membership test, not a linear projection; anything needing linear
        residuals must go through Tracker-based dependency computations.
        """
        v = dict(v)
        red = self.field.red
        while v:
            p = min(v)
            row = self.pivots.get(p)
            if row is None:
                return v
            c = v.pop(p)
            for k, x in row.items():
                if k == p:
                    continue
                cur = v.get(k)
                if cur is None:
                    y = kernels.felem_neg(kernels.felem_mul(c, x, red))
                else:
                    y = kernels.felem_submul(cur, c, x, red)
                if kernels.felem_is_zero(y):
                    v.pop(k, None)
                else:
                    v[k] = y
        return v

    def insert(self, v):
        """Add v to the span; True if the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = self.field.raw_inverse(r[p])
        row = vec_scale(r, inv, self.field.red)
        row[p] = self.field.one.raw
        self.pivots[p] = row
        return True

    def contains(self, v):
        return not self.reduce(v)

    def basis(self):
        return [dict(row) for _, row in sorted(self.pivots.items())]


class Tracker:
    """Echelon basis with combination tracking.

    Every stored row knows its expression as a combination of the inserted
    vectors (by tag).  Inserting a dependent vector returns the dependency
    {tag: coeff} with the new vector's own tag carrying coefficient 1; an
    independent insert returns None.
    """

    def __init__(self, field):
        self.field = field
        self.pivots = {}
        self.tags = []

    def insert(self, v, tag):
        red = self.field.red
        v = dict(v)
        combo = {tag: self.field.one.raw}
        while v:
            p = min(v)
            entry = self.pivots.get(p)
            if entry is None:
                inv = self.field.raw_inverse(v[p])
                row = vec_scale(v, inv, red)
                row[p] = self.field.one.raw
                cmb = vec_scale(combo, inv, red)
                self.pivots[p] = (row, cmb)
                self.tags.append(tag)
                return None
            row, cmb = entry
            c = v.pop(p)
            for k, x in row.items():
                if k == p:
                    continue
                cur = v.get(k)
                if cur is None:
                    y = kernels.felem_neg(kernels.felem_mul(c, x, red))
                else:
                    y = kernels.felem_submul(cur, c, x, red)
                if kernels.felem_is_zero(y):
                    v.pop(k, None)
                else:
                    v[k] = y
            for k, x in cmb.items():
                cur = combo.get(k)
                if cur is None:
                    y = kernels.felem_neg(kernels.felem_mul(c, x, red))
                else:
                    y = kernels.felem_submul(cur, c, x, red)
                if kernels.felem_is_zero(y):
                    combo.pop(k, None)
                else:
                    combo[k] = y
        return combo

    def express(self, v, tag="__query__"):
        """Coordinates of v over the inserted vectors, or None if outside.

        Does not modify the basis.  Returns {tag: coeff} with v = sum of
        coeff * vector(tag).
        """
        dep = self._probe(v, tag)
        if dep is None:
            return None
        dep.pop(tag)
        return {k: kernels.felem_neg(c) for k, c in dep.items()}

    def _probe(self, v, tag):
        red = self.field.red
        v = dict(v)
        combo = {tag: self.field.one.raw}
        while v:
            p = min(v)
            entry = self.pivots.get(p)
            if entry is None:
                return None
            row, cmb = entry
            c = v.pop(p)
            for k, x in row.items():
                if k == p:
                    continue
                cur = v.get(k)
                if cur is None:
                    y = kernels.felem_neg(kernels.felem_mul(c, x, red))
                else:
                    y = kernels.felem_submul(cur, c, x, red)
                if kernels.felem_is_zero(y):
                    v.pop(k, None)
                else:
                    v[k] = y
            for k, x in cmb.items():
                cur = combo.get(k)
                if cur is None:
                    y = kernels.felem_neg(kernels.felem_mul(c, x, red))
                else:
                    y = kernels.felem_submul(cur, c, x, red)
                if kernels.felem_is_zero(y):
                    combo.pop(k, None)
                else:
                    combo[k] = y
        return combo


def rank_of(field, vectors):
    e = Echelon(field)
    n = 0
    for v in vectors:
        if e.insert(v):
            n += 1
    return n


def nullspace_combinations(field, tagged_vectors):
    """Basis of the dependency space of the given (tag, vector) pairs.

    Returns a list of {tag: coeff} combinations that sum to zero; each has
    some tag with a unit coefficient.
    """
    t = Tracker(field)
    out = []
    for tag, v in tagged_vectors:
        dep = t.insert(v, tag)
        if dep is not None:
            out.append(dep)
    return out
