"""Exact arithmetic in Q(zeta_4l) and in quadratic towers over it.

The field element type is a polynomial in a primitive 4l-th root of unity
zeta, reduced modulo the 4l-th cyclotomic polynomial, with rational
coefficients held as an integer vector over a common denominator.  The tower
type adjoins at most two square roots r_k with r_k^2 = d_k for nonzero
discriminants d_k in the field; it is a quotient ring, not necessarily a
field, and inversion discovers zero divisors lazily (see ZeroDivisorError).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from . import kernels


class NotInvertibleError(ZeroDivisionError):
    """Attempted to invert zero."""


class ZeroDivisorError(ArithmeticError):
    """Inversion hit a nonzero zero divisor a + b*r of vanishing norm.

    Carries the discovered square root ``root`` of the discriminant at
    ``disc_index`` (root**2 == disc), so the caller can split the ring by
    substituting r -> root and retry the computation.
    """

    def __init__(self, element, disc_index, root):
        super().__init__(
            f"zero divisor over discriminant #{disc_index}; ring splits at r -> {root}"
        )
        self.element = element
        self.disc_index = disc_index
        self.root = root


class ThirdDiscriminantError(ValueError):
    """Towers are capped at two distinct discriminants."""


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod_int(a, b):
    """Divide integer polynomials, assuming the division is exact over Z."""
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        if c % b[-1] != 0:
            raise ArithmeticError("inexact integer polynomial division")
        c //= b[-1]
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    if any(a):
        raise ArithmeticError("nonzero remainder in polynomial division")
    return q


@lru_cache(maxsize=None)
def _cyclotomic_tuple(n):
    if n == 1:
        return (-1, 1)
    num = [0] * n + [1]
    num[0] = -1  # x^n - 1
    den = [1]
    for d in range(1, n):
        if n % d == 0:
            phi_d = _cyclotomic_tuple(d)
            new = [0] * (len(den) + len(phi_d) - 1)
            for i, a in enumerate(den):
                for j, b in enumerate(phi_d):
                    new[i + j] += a * b
            den = new
    return tuple(_poly_divmod_int(num, den))


def cyclotomic_polynomial(n):
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return list(_cyclotomic_tuple(n))


class FieldElem:
    """An element of Q(zeta_4l), canonical modulo the cyclotomic polynomial."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            return self.field.rational(other.numerator, other.denominator)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, kernels.felem_add(self.raw, o.raw))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, kernels.felem_sub(self.raw, o.raw))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, kernels.felem_sub(o.raw, self.raw))

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return FieldElem(
                self.field, kernels.felem_mul(self.raw, other.raw, self.field.red)
            )
        if isinstance(other, int):
            return FieldElem(self.field, kernels.felem_scale(self.raw, other, 1))
        if isinstance(other, Fraction):
            return FieldElem(
                self.field,
                kernels.felem_scale(self.raw, other.numerator, other.denominator),
            )
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, kernels.felem_neg(self.raw))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.field.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.raw == o.raw

    def __hash__(self):
        return hash((id(self.field), self.raw))

    def is_zero(self):
        return kernels.felem_is_zero(self.raw)

    def inverse(self):
        if self.is_zero():
            raise NotInvertibleError("division by zero")
        return FieldElem(self.field, self.field.raw_inverse(self.raw))

    def coefficients(self):
        """Rational coefficients with respect to 1, zeta, zeta^2, ..."""
        nums, den = self.raw
        return [Fraction(x, den) for x in nums]

    def numeric(self, dps=40):
        """Complex value at zeta = exp(2*pi*i/4l); diagnostic use only."""
        with mpmath.workdps(dps):
            z = mpmath.exp(2j * mpmath.pi / self.field.root_order)
            nums, den = self.raw
            acc = mpmath.mpc(0)
            for k in range(len(nums) - 1, -1, -1):
                acc = acc * z + nums[k]
            return acc / den

    def __repr__(self):
        nums, den = self.raw
        terms = []
        for k, c in enumerate(nums):
            if not c:
                continue
            frac = Fraction(c, den)
            if k == 0:
                terms.append(str(frac))
            else:
                mon = "z" if k == 1 else f"z^{k}"
                if frac == 1:
                    terms.append(mon)
                elif frac == -1:
                    terms.append(f"-{mon}")
                else:
                    terms.append(f"{frac}*{mon}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" + {t}" if not t.startswith("-") else f" - {t[1:]}"
        return out


class CycField:
    """Q(zeta_4l) presented as Q[z] modulo the cyclotomic polynomial of 4l."""

    def __init__(self, l):
        if l < 2:
            raise ValueError("need l >= 2")
        self.l = l
        self.root_order = 4 * l
        phi = _cyclotomic_tuple(4 * l)
        self.modulus = phi
        m = len(phi) - 1
        self.degree = m
        rows = []
        cur = [-c for c in phi[:m]]  # x^m
        rows.append(tuple(cur))
        for _ in range(m + 1, 2 * m - 1):
            top = cur[m - 1]
            cur = [0] + cur[: m - 1]
            if top:
                cur = [cur[k] + top * rows[0][k] for k in range(m)]
            rows.append(tuple(cur))
        self.red = tuple(rows)
        self._zero_nums = (0,) * m
        self.zero = FieldElem(self, (self._zero_nums, 1))
        self.one = self.from_int(1)
        # powers of zeta within one period
        pows = []
        cur = [1] + [0] * (m - 1)
        for _ in range(4 * l):
            pows.append(FieldElem(self, (tuple(cur), 1)))
            top = cur[m - 1]
            cur = [0] + cur[: m - 1]
            if top:
                cur = [cur[k] + top * self.red[0][k] for k in range(m)]
        self._zeta_pows = pows
        self.q = self.zeta_pow(1)
        self.q_inv = self.zeta_pow(-1)
        self.xi = self.q - self.q_inv
        self.sqrt_minus1 = self.zeta_pow(l)

    @staticmethod
    @lru_cache(maxsize=None)
    def for_l(l):
        return CycField(l)

    def from_int(self, v):
        nums = (v,) + (0,) * (self.degree - 1)
        return FieldElem(self, (nums, 1))

    def rational(self, p, q=1):
        g = gcd(p, q)
        if q < 0:
            g = -g
        p, q = p // g, q // g
        return FieldElem(self, ((p,) + (0,) * (self.degree - 1), q))

    def zeta_pow(self, k):
        return self._zeta_pows[k % self.root_order]

    def elem(self, nums, den=1):
        return FieldElem(self, kernels.felem_normalize(list(nums), den))

    def raw_inverse(self, raw):
        """Inverse of a nonzero raw element by the extended Euclid algorithm."""
        nums, den = raw
        r0 = [Fraction(c) for c in self.modulus]
        r1 = [Fraction(c) for c in nums]
        _poly_trim(r1)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            # divide r0 by r1
            q = [Fraction(0)] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            for k in range(len(rem) - len(r1), -1, -1):
                c = rem[k + len(r1) - 1] / r1[-1]
                q[k] = c
                if c:
                    for j, bj in enumerate(r1):
                        rem[k + j] -= c * bj
            _poly_trim(rem)
            r0, r1 = r1, rem
            # s update: s_new = s0 - q*s1
            qs = [Fraction(0)] * (len(q) + len(s1) - 1) if s1 else []
            for i, a in enumerate(q):
                if a:
                    for j, b in enumerate(s1):
                        qs[i + j] += a * b
            new = [Fraction(0)] * max(len(s0), len(qs))
            for i, a in enumerate(s0):
                new[i] += a
            for i, a in enumerate(qs):
                new[i] -= a
            _poly_trim(new)
            s0, s1 = s1, new
        if not r1:
            raise NotInvertibleError("inverse of zero")
        c = r1[0]
        inv = [a / c * den for a in s1]
        inv += [Fraction(0)] * (self.degree - len(inv))
        common = 1
        for a in inv:
            common = common * a.denominator // gcd(common, a.denominator)
        return kernels.felem_normalize(
            [int(a * common) for a in inv[: self.degree]], common
        )

    def __repr__(self):
        return f"CycField(l={self.l})"


def q_of(l, i):
    """The eigenvalue parameter 2*(q^(2i+1) + q^-(2i+1))/(q + q^-1)."""
    if l < 2:
        raise ValueError("need l >= 2")
    if not 0 <= i <= l - 1:
        raise ValueError(f"index {i} outside 0..{l - 1}")
    f = CycField.for_l(l)
    num = f.zeta_pow(2 * i + 1) + f.zeta_pow(-(2 * i + 1))
    return 2 * num * (f.q + f.q_inv).inverse()


def discriminant(l, i):
    """d_i = q(i)^2/4 - 1, the discriminant of x^2 - q(i)x + 1."""
    qi = q_of(l, i)
    return qi * qi * Fraction(1, 4) - CycField.for_l(l).one


class TowerElem:
    """Element of a Tower, as coordinates over the basis of r-monomials."""

    __slots__ = ("tower", "coords")

    def __init__(self, tower, coords):
        self.tower = tower
        self.coords = tuple(coords)

    def _coerce(self, other):
        if isinstance(other, TowerElem):
            if other.tower is not self.tower:
                raise ValueError("elements of different towers")
            return other
        if isinstance(other, (int, Fraction, FieldElem)):
            return self.tower.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElem(self.tower, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return TowerElem(self.tower, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return TowerElem(self.tower, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return TowerElem(self.tower, [a * other for a in self.coords])
        if isinstance(other, TowerElem):
            if other.tower is not self.tower:
                raise ValueError("elements of different towers")
            t = self.tower
            out = [t.field.zero] * t.rank
            for b, x in enumerate(self.coords):
                if x.is_zero():
                    continue
                for c, y in enumerate(other.coords):
                    if y.is_zero():
                        continue
                    common = b & c
                    term = x * y
                    if common:
                        term = term * t.disc_of_mask(common)
                    out[b ^ c] = out[b ^ c] + term
            return TowerElem(t, out)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return TowerElem(self.tower, [other * a for a in self.coords])
        return NotImplemented

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __pow__(self, e):
        if e < 0:
            return self.invert() ** (-e)
        acc = self.tower.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((id(self.tower), self.coords))

    def is_zero(self):
        return all(a.is_zero() for a in self.coords)

    def field_part(self):
        """The FieldElem value if no r-coordinate appears, else None."""
        for b, a in enumerate(self.coords):
            if b and not a.is_zero():
                return None
        return self.coords[0]

    def invert(self):
        """Multiplicative inverse; raises ZeroDivisorError on a zero divisor."""
        return self.tower.invert(self)

    def numeric(self, dps=40):
        with mpmath.workdps(dps):
            roots = [mpmath.sqrt(d.numeric(dps)) for d in self.tower.discs]
            acc = mpmath.mpc(0)
            for b, a in enumerate(self.coords):
                term = a.numeric(dps)
                for k in range(len(roots)):
                    if b >> k & 1:
                        term *= roots[k]
                acc += term
            return acc

    def __repr__(self):
        names = {0: "", 1: "r1", 2: "r2", 3: "r1*r2"}
        parts = []
        for b, a in enumerate(self.coords):
            if a.is_zero():
                continue
            parts.append(f"({a!r}){'*' + names[b] if b else ''}")
        return " + ".join(parts) if parts else "0"


class Tower:
    """Quotient ring F[r_1, r_2]/(r_k^2 - d_k) over F = Q(zeta_4l).

    At most two distinct nonzero discriminants are allowed.  The ring can
    contain zero divisors when a discriminant is a square in F; inversions
    detect this lazily and report the square root via ZeroDivisorError, after
    which `split` produces the smaller ring.  Instances are interned per
    (field, discriminants), so equal towers are identical.
    """

    _registry = {}

    def __new__(cls, field, discs=()):
        discs = tuple(discs)
        for d in discs:
            if d.is_zero():
                raise ValueError("zero discriminant; adjoin nothing instead")
        if len(set(d.raw for d in discs)) != len(discs):
            raise ValueError("duplicate discriminants")
        if len(discs) > 2:
            raise ThirdDiscriminantError("at most two discriminants may coexist")
        key = (id(field), tuple(d.raw for d in discs))
        inst = cls._registry.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst._build(field, discs)
            cls._registry[key] = inst
        return inst

    def _build(self, field, discs):
        self.field = field
        self.discs = discs
        self.rank = 1 << len(discs)
        self._dmask = [field.one]
        for mask in range(1, self.rank):
            p = field.one
            for k, d in enumerate(discs):
                if mask >> k & 1:
                    p = p * d
            self._dmask.append(p)
        self.zero = TowerElem(self, [field.zero] * self.rank)
        self.one = TowerElem(
            self, [field.one] + [field.zero] * (self.rank - 1)
        )

    @staticmethod
    def with_discs(field, ds):
        """Tower generated by the distinct nonzero discriminants among ds."""
        seen = []
        for d in ds:
            if d.is_zero():
                continue
            if all(d.raw != e.raw for e in seen):
                seen.append(d)
        return Tower(field, seen)

    def disc_of_mask(self, mask):
        return self._dmask[mask]

    def scalar(self, x):
        if isinstance(x, int):
            x = self.field.from_int(x)
        elif isinstance(x, Fraction):
            x = self.field.rational(x.numerator, x.denominator)
        if not isinstance(x, FieldElem) or x.field is not self.field:
            raise ValueError("not a scalar of the base field")
        return TowerElem(self, [x] + [self.field.zero] * (self.rank - 1))

    def gen(self, k):
        """The adjoined square root r_k."""
        coords = [self.field.zero] * self.rank
        coords[1 << k] = self.field.one
        return TowerElem(self, coords)

    def disc_index(self, d):
        for k, e in enumerate(self.discs):
            if e.raw == d.raw:
                return k
        return None

    def elem(self, coords):
        if len(coords) != self.rank:
            raise ValueError("coordinate count mismatch")
        return TowerElem(self, coords)

    def sqrt_of(self, d, sign=1):
        """sign * r_k for the discriminant d, which must be adjoined here."""
        k = self.disc_index(d)
        if k is None:
            raise ValueError("discriminant not adjoined to this tower")
        r = self.gen(k)
        return r if sign >= 0 else -r

    def _halves(self, x, k):
        """Split coords into (without r_k, with r_k) over the subtower sans k."""
        sub = Tower(self.field, tuple(d for j, d in enumerate(self.discs) if j != k))
        lo = [self.field.zero] * sub.rank
        hi = [self.field.zero] * sub.rank
        bit = 1 << k
        for mask, a in enumerate(x.coords):
            submask = (mask & (bit - 1)) | ((mask >> 1) & ~(bit - 1))
            if mask & bit:
                hi[submask] = a
            else:
                lo[submask] = a
        return sub, TowerElem(sub, lo), TowerElem(sub, hi)

    def _unsplit(self, k, lo, hi):
        bit = 1 << k
        coords = [self.field.zero] * self.rank
        for submask in range(len(lo.coords)):
            mask = (submask & (bit - 1)) | ((submask & ~(bit - 1)) << 1)
            coords[mask] = lo.coords[submask]
            coords[mask | bit] = hi.coords[submask]
        return TowerElem(self, coords)

    def invert(self, x):
        if not self.discs:
            f = x.coords[0]
            fi = f.inverse()  # raises NotInvertibleError on zero
            return self.scalar(fi)
        k = len(self.discs) - 1
        sub, a, b = self._halves(x, k)
        d = self.discs[k]
        norm = a * a - (b * b) * d
        if norm.is_zero():
            if b.is_zero():
                # reduced ring: a*a == 0 forces a == 0
                raise NotInvertibleError("inverse of zero")
            binv = sub.invert(b)  # may raise ZeroDivisorError for inner disc
            s = a * binv
            s = _positive_root(s)
            raise ZeroDivisorError(x, k, s)
        ninv = sub.invert(norm)
        lo = a * ninv
        hi = -(b * ninv)
        return self._unsplit(k, lo, hi)

    def split(self, k, root):
        """The tower with disc #k removed by substituting r_k -> root.

        root lives in the base field or in the tower over the remaining
        discriminants; returns (new_tower, mapper) where mapper sends elements
        of this tower into the new one.
        """
        sub = Tower(self.field, tuple(d for j, d in enumerate(self.discs) if j != k))
        if isinstance(root, FieldElem):
            root = sub.scalar(root)
        elif isinstance(root, TowerElem) and root.tower is not sub:
            root = sub.elem(root.coords)
        check = root * root - sub.scalar(self.discs[k])
        if not check.is_zero():
            raise ValueError("root**2 != discriminant; refusing to split")

        def mapper(x):
            _, lo, hi = self._halves(x, k)
            lo2 = sub.elem(lo.coords)
            hi2 = sub.elem(hi.coords)
            return lo2 + hi2 * root

        return sub, mapper

    def regular_rows(self, x):
        """Matrix of multiplication by x on the r-monomial basis (row-major)."""
        f = self.field
        rows = [[f.zero] * self.rank for _ in range(self.rank)]
        for c in range(self.rank):
            for b, a in enumerate(x.coords):
                if a.is_zero():
                    continue
                common = b & c
                term = a if not common else a * self._dmask[common]
                i = b ^ c
                rows[i][c] = rows[i][c] + term
        return rows

    def __repr__(self):
        return f"Tower({self.field!r}, discs={list(self.discs)!r})"


def _positive_root(s):
    """Normalize the sign of a candidate square root deterministically.

    The chosen representative is the one whose leading nonzero rational
    coordinate is positive: scan r-monomial coordinates from the highest basis
    index down, within a coordinate from the highest zeta-degree down.
    """
    if isinstance(s, TowerElem):
        for a in reversed(s.coords):
            nums, _ = a.raw
            for c in reversed(nums):
                if c > 0:
                    return s
                if c < 0:
                    return -s
        return s
    nums, _ = s.raw
    for c in reversed(nums):
        if c > 0:
            return s
        if c < 0:
            return -s
    return s


def b_pm(l, i, sign):
    """The root q(i)/2 + sign*sqrt(q(i)^2/4 - 1) of x^2 - q(i)x + 1.

    Returns a plain FieldElem when the discriminant vanishes (q(i) = +-2),
    else a TowerElem over the single-discriminant tower.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    qi = q_of(l, i)
    d = discriminant(l, i)
    if d.is_zero():
        return qi * Fraction(1, 2)
    tower = Tower(CycField.for_l(l), (d,))
    half = tower.scalar(qi * Fraction(1, 2))
    return half + tower.gen(0) * sign


def b_in_tower(tower, l, i, sign):
    """b_pm(l, i, sign) expressed in a pre-built joint tower."""
    qi = q_of(l, i)
    d = discriminant(l, i)
    half = tower.scalar(qi * Fraction(1, 2))
    if d.is_zero():
        return half
    return half + tower.sqrt_of(d, sign)


def tower_invert(x):
    """Inverse in the tower (or field); see ZeroDivisorError for splitting."""
    if isinstance(x, FieldElem):
        return x.inverse()
    return x.tower.invert(x)


class ScalarModel:
    """A tower together with realized square roots of split discriminants.

    Module builders work against a model so a computation can be restarted in
    the smaller ring after a ZeroDivisorError: the discriminant leaves the
    tower but its square root stays available.
    """

    def __init__(self, l, tower, roots=None):
        self.l = l
        self.field = tower.field
        self.tower = tower
        self.roots = dict(roots or {})

    @staticmethod
    def for_indices(l, indices):
        field = CycField.for_l(l)
        tower = Tower.with_discs(field, [discriminant(l, i) for i in indices])
        return ScalarModel(l, tower)

    def sqrt_disc(self, i, sign=1):
        """sign * sqrt(d_i) inside the current ring."""
        d = discriminant(self.l, i)
        if d.is_zero():
            return self.tower.zero
        k = self.tower.disc_index(d)
        if k is not None:
            return self.tower.sqrt_of(d, sign)
        root = self.roots.get(d.raw)
        if root is None:
            raise ValueError(f"discriminant of index {i} unavailable in this model")
        return root if sign >= 0 else -root

    def b(self, i, sign):
        """b_pm(l, i, sign) as an element of the model's ring."""
        half = self.tower.scalar(q_of(self.l, i) * Fraction(1, 2))
        return half + self.sqrt_disc(i, sign)

    def split(self, disc_index, root):
        """New model after substituting r_k -> root."""
        old = self.tower.discs[disc_index]
        tower2, mapper = self.tower.split(disc_index, root)
        if isinstance(root, FieldElem):
            root2 = tower2.scalar(root)
        elif root.tower is tower2:
            root2 = root
        else:
            root2 = tower2.elem(root.coords)
        roots2 = {raw: mapper(v) for raw, v in self.roots.items()}
        roots2[old.raw] = root2
        return ScalarModel(self.l, tower2, roots2), mapper


def numeric_is_zero(x, tol=1e-20, dps=40):
    """Secondary numeric diagnostic at zeta = exp(2*pi*i/4l); never a proof."""
    with mpmath.workdps(dps):
        return abs(x.numeric(dps)) < tol


def adjacent_pair_vanishing(a, b, xi, qi, qj):
    """The degree-8 vanishing combination of two eigenvalue roots.

    a and b satisfy a + 1/a = q(i), b + 1/b = q(j); their inverses are taken
    as q(i) - a and q(j) - b so the value stays inside the quotient ring.
    """
    one = a.tower.one if isinstance(a, TowerElem) else a.field.one
    ai = qi - a
    bi = qj - b
    ab1 = a * b - one
    ab1_sq = ab1 * ab1
    abi1 = a * bi - one
    abi1_sq = abi1 * abi1
    lead = ai * ai * ab1_sq * abi1_sq
    inner = lead - xi * xi * (ai * bi * ab1_sq + ai * b * abi1_sq)
    return lead * inner
