"""The affine Hecke-Clifford superalgebra as a rewriting system.

Elements are linear combinations of PBW monomials X^alpha C^beta T_w with
alpha a Laurent exponent vector, beta a Clifford mask and w a permutation
(stored in one-line notation; the canonical reduced word is the
lexicographically smallest one).  Products are computed by folding the right
factor one generator at a time into the left factor's normal form, so only
the defining relations and the three derived exchange identities are ever
applied.

Generators are written ("X", j, s) with s in {+1, -1}, ("C", j), ("T", i),
all 1-based as in the algebra's presentation.
"""

from __future__ import annotations

from functools import lru_cache

def perm_identity(n):
    return tuple(range(1, n + 1))


def perm_length(w):
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def perm_inverse(w):
    inv = [0] * len(w)
    for p, v in enumerate(w):
        inv[v - 1] = p + 1
    return tuple(inv)


def perm_compose(u, v):
    """(u o v)(k) = u(v(k))."""
    return tuple(u[v[k] - 1] for k in range(len(u)))


def perm_right_mult_s(w, i):
    """w * s_i: swap the entries at positions i, i+1 (1-based)."""
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


@lru_cache(maxsize=None)
def reduced_word(w):
    """Lexicographically smallest reduced word, via greedy left descents."""
    word = []
    cur = w
    ident = perm_identity(len(w))
    inv = perm_inverse(cur)
    while cur != ident:
        for i in range(1, len(w)):
            if inv[i - 1] > inv[i]:  # i is a left descent
                word.append(i)
                # cur = s_i o cur ; in one-line: swap the values i, i+1
                cur = tuple(i + 1 if v == i else i if v == i + 1 else v for v in cur)
                inv = perm_inverse(cur)
                break
    return tuple(word)


class NormalMonomial:
    """Immutable PBW monomial X^alpha C^beta T_w."""

    __slots__ = ("alpha", "beta", "w")

    def __init__(self, alpha, beta, w):
        self.alpha = tuple(alpha)
        self.beta = tuple(beta)
        self.w = tuple(w)

    @property
    def key(self):
        return (self.alpha, self.beta, self.w)

    def __eq__(self, other):
        return (
            isinstance(other, NormalMonomial)
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.w == other.w
        )

    def __hash__(self):
        return hash((self.alpha, self.beta, self.w))

    def parity(self):
        return sum(self.beta) & 1

    def reduced_word(self):
        return reduced_word(self.w)

    def generator_sequence(self):
        seq = []
        for j, a in enumerate(self.alpha, start=1):
            s = 1 if a > 0 else -1
            seq.extend([("X", j, s)] * abs(a))
        for j, b in enumerate(self.beta, start=1):
            if b:
                seq.append(("C", j))
        seq.extend(("T", i) for i in self.reduced_word())
        return seq

    def __repr__(self):
        parts = []
        for j, a in enumerate(self.alpha, start=1):
            if a:
                parts.append(f"X{j}" if a == 1 else f"X{j}^{a}")
        for j, b in enumerate(self.beta, start=1):
            if b:
                parts.append(f"C{j}")
        for i in self.reduced_word():
            parts.append(f"T{i}")
        return "*".join(parts) if parts else "1"


class HElement:
    """Finite linear combination of normal monomials of a fixed rank."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            cur = out.get(m)
            s = c if cur is None else cur + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return HElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HElement):
            self._check(other)
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if isinstance(c, int):
            c = self.algebra.field.from_int(c)
        out = {}
        for m, x in self.terms.items():
            y = x * c
            if not y.is_zero():
                out[m] = y
        return HElement(self.algebra, out)

    def __eq__(self, other):
        if not isinstance(other, HElement):
            return NotImplemented
        if self.algebra is not other.algebra:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    def is_zero(self):
        return not self.terms

    def parity(self):
        """0 or 1 when homogeneous, None when mixed or zero."""
        ps = {m.parity() for m in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise ValueError("rank or field mismatch")

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [f"({c!r})*{m!r}" for m, c in sorted(self.terms.items(), key=lambda t: t[0].key)]
        return " + ".join(bits)


class HeckeClifford:
    """Rewriting context for the rank-n algebra over Q(zeta_4l)."""

    _registry = {}

    def __new__(cls, field, n):
        key = (id(field), n)
        inst = cls._registry.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst.field = field
            inst.n = n
            inst._gen_cache = {}
            inst._coset_cache = {}
            cls._registry[key] = inst
        return inst

    # -- element constructors ------------------------------------------------

    def element(self, terms):
        return HElement(self, {m: c for m, c in terms.items() if not c.is_zero()})

    def zero(self):
        return HElement(self, {})

    def one(self):
        return self.monomial_elem(self.identity_monomial())

    def identity_monomial(self):
        z = (0,) * self.n
        return NormalMonomial(z, z, perm_identity(self.n))

    def monomial_elem(self, m, coeff=None):
        if coeff is None:
            coeff = self.field.one
        return HElement(self, {m: coeff})

    def x(self, j, s=1):
        alpha = [0] * self.n
        alpha[j - 1] = s
        return self.monomial_elem(
            NormalMonomial(alpha, (0,) * self.n, perm_identity(self.n))
        )

    def c(self, j):
        beta = [0] * self.n
        beta[j - 1] = 1
        return self.monomial_elem(
            NormalMonomial((0,) * self.n, beta, perm_identity(self.n))
        )

    def t(self, i):
        if not 1 <= i <= self.n - 1:
            raise ValueError("T index out of range")
        return self.monomial_elem(
            NormalMonomial((0,) * self.n, (0,) * self.n, perm_right_mult_s(perm_identity(self.n), i))
        )

    def gen_elem(self, gen):
        if gen[0] == "X":
            return self.x(gen[1], gen[2])
        if gen[0] == "C":
            return self.c(gen[1])
        return self.t(gen[1])

    # -- multiplication ------------------------------------------------------

    def multiply(self, a, b):
        out = self.zero()
        for m, c in b.terms.items():
            cur = a
            for gen in m.generator_sequence():
                cur = self.mul_gen(cur, gen)
            out = out + cur.scale(c)
        return out

    def mul_gen(self, h, gen):
        out = {}
        for m, c in h.terms.items():
            for m2, c2 in self._mono_times_gen(m, gen).items():
                add = c * c2
                cur = out.get(m2)
                s = add if cur is None else cur + add
                if s.is_zero():
                    out.pop(m2, None)
                else:
                    out[m2] = s
        return HElement(self, out)

    def _mono_times_gen(self, m, gen):
        """Normal form of (monomial * generator) with FieldElem coefficients."""
        key = (m, gen)
        cached = self._gen_cache.get(key)
        if cached is not None:
            return cached
        kind = gen[0]
        if kind == "T":
            res = self._mono_times_T(m, gen[1])
        elif kind == "C":
            res = self._mono_times_C(m, gen[1])
        else:
            res = self._mono_times_X(m, gen[1], gen[2])
        self._gen_cache[key] = res
        return res

    def _mono_times_T(self, m, i):
        w2 = perm_right_mult_s(m.w, i)
        if m.w[i - 1] < m.w[i]:  # ascent: length grows
            return {NormalMonomial(m.alpha, m.beta, w2): self.field.one}
        # T_w T_i = xi T_w + T_{w s_i}
        return {
            NormalMonomial(m.alpha, m.beta, m.w): self.field.xi,
            NormalMonomial(m.alpha, m.beta, w2): self.field.one,
        }

    def _merge_C(self, m, j):
        """(X^a C^b T_id-part) * C_j for monomial with trivial w."""
        beta = list(m.beta)
        crossings = sum(beta[j:])  # anticommute past higher-index C's
        sign = -1 if crossings & 1 else 1
        beta[j - 1] ^= 1
        coeff = self.field.one if sign == 1 else -self.field.one
        return {NormalMonomial(m.alpha, beta, m.w): coeff}

    def _merge_X(self, m, j, s):
        """(X^a C^b T_id-part) * X_j^s; C_j flips the exponent direction."""
        if m.beta[j - 1]:
            s = -s
        alpha = list(m.alpha)
        alpha[j - 1] += s
        return {NormalMonomial(alpha, m.beta, m.w): self.field.one}

    def _peel(self, m):
        """Split T_w = T_{w'} T_i at the smallest right descent i."""
        for i in range(1, self.n):
            if m.w[i - 1] > m.w[i]:
                return NormalMonomial(m.alpha, m.beta, perm_right_mult_s(m.w, i)), i
        return None, None

    def _expand(self, base, gens, tail_T=None):
        """base * gens..., then optionally * T_i, as a term dict."""
        cur = HElement(self, {base: self.field.one})
        for g in gens:
            cur = self.mul_gen(cur, g)
        if tail_T is not None:
            cur = self.mul_gen(cur, ("T", tail_T))
        return cur

    def _combine(self, pieces):
        out = {}
        for coeff, elem in pieces:
            for m, c in elem.terms.items():
                add = coeff * c
                cur = out.get(m)
                s = add if cur is None else cur + add
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return out

    def _mono_times_C(self, m, j):
        if m.w == perm_identity(self.n):
            return self._merge_C(m, j)
        m2, i = self._peel(m)
        one, xi = self.field.one, self.field.xi
        if j == i:
            # T_i C_i = C_{i+1} T_i
            return self._combine([(one, self._expand(m2, [("C", i + 1)], tail_T=i))])
        if j == i + 1:
            # T_i C_{i+1} = C_i T_i - xi C_i + xi C_{i+1}
            return self._combine(
                [
                    (one, self._expand(m2, [("C", i)], tail_T=i)),
                    (-xi, self._expand(m2, [("C", i)])),
                    (xi, self._expand(m2, [("C", i + 1)])),
                ]
            )
        return self._combine([(one, self._expand(m2, [("C", j)], tail_T=i))])

    def _mono_times_X(self, m, j, s):
        if m.w == perm_identity(self.n):
            return self._merge_X(m, j, s)
        m2, i = self._peel(m)
        one, xi = self.field.one, self.field.xi
        if j == i:
            if s == 1:
                # T_i X_i = X_{i+1} T_i - xi X_{i+1} - xi C_i C_{i+1} X_i
                return self._combine(
                    [
                        (one, self._expand(m2, [("X", i + 1, 1)], tail_T=i)),
                        (-xi, self._expand(m2, [("X", i + 1, 1)])),
                        (-xi, self._expand(m2, [("C", i), ("C", i + 1), ("X", i, 1)])),
                    ]
                )
            # T_i X_i^-1 = X_{i+1}^-1 T_i + xi X_i^-1 + xi X_{i+1}^-1 C_i C_{i+1}
            return self._combine(
                [
                    (one, self._expand(m2, [("X", i + 1, -1)], tail_T=i)),
                    (xi, self._expand(m2, [("X", i, -1)])),
                    (xi, self._expand(m2, [("X", i + 1, -1), ("C", i), ("C", i + 1)])),
                ]
            )
        if j == i + 1:
            if s == 1:
                # T_i X_{i+1} = X_i T_i + xi X_{i+1} - xi C_i C_{i+1} X_{i+1}
                return self._combine(
                    [
                        (one, self._expand(m2, [("X", i, 1)], tail_T=i)),
                        (xi, self._expand(m2, [("X", i + 1, 1)])),
                        (-xi, self._expand(m2, [("C", i), ("C", i + 1), ("X", i + 1, 1)])),
                    ]
                )
            # T_i X_{i+1}^-1 = X_i^-1 T_i - xi X_i^-1 + xi X_i^-1 C_i C_{i+1}
            return self._combine(
                [
                    (one, self._expand(m2, [("X", i, -1)], tail_T=i)),
                    (-xi, self._expand(m2, [("X", i, -1)])),
                    (xi, self._expand(m2, [("X", i, -1), ("C", i), ("C", i + 1)])),
                ]
            )
        return self._combine([(one, self._expand(m2, [("X", j, s)], tail_T=i))])

    # -- automorphisms ---------------------------------------------------------

    def sigma(self, h):
        """X_j -> X_{n+1-j}, C_j -> C_{n+1-j}, T_i -> -T_{n-i} + xi."""
        n = self.n
        out = self.zero()
        for m, c in h.terms.items():
            cur = self.one()
            for gen in m.generator_sequence():
                if gen[0] == "X":
                    img = self.x(n + 1 - gen[1], gen[2])
                elif gen[0] == "C":
                    img = self.c(n + 1 - gen[1])
                else:
                    img = self.t(n - gen[1]).scale(-1) + self.one().scale(self.field.xi)
                cur = self.multiply(cur, img)
            out = out + cur.scale(c)
        return out

    def tau(self, h):
        """Antiautomorphism: X, C fixed, T_i -> T_i + xi C_i C_{i+1}."""
        out = self.zero()
        for m, c in h.terms.items():
            cur = self.one()
            for gen in reversed(m.generator_sequence()):
                if gen[0] == "X":
                    img = self.x(gen[1], gen[2])
                elif gen[0] == "C":
                    img = self.c(gen[1])
                else:
                    i = gen[1]
                    img = self.t(i) + self.multiply(
                        self.c(i), self.c(i + 1)
                    ).scale(self.field.xi)
                cur = self.multiply(cur, img)
            out = out + cur.scale(c)
        return out

    # -- parabolic / coset structure -------------------------------------------

    def block_starts(self, mu):
        if sum(mu) != self.n:
            raise ValueError("composition must sum to the rank")
        starts, s = [], 1
        for part in mu:
            starts.append(s)
            s += part
        return starts

    def block_of(self, mu, p):
        s = 1
        for b, part in enumerate(mu):
            if s <= p < s + part:
                return b
            s += part
        raise ValueError("position out of range")

    def in_parabolic(self, mu, w):
        return all(
            self.block_of(mu, p + 1) == self.block_of(mu, v)
            for p, v in enumerate(w)
        )

    def t_indices(self, mu):
        """T indices available inside the parabolic of shape mu."""
        out = []
        s = 1
        for part in mu:
            out.extend(range(s, s + part - 1))
            s += part
        return out

    def min_coset_rep(self, mu, w):
        """Minimal length representative of w S_mu and the remainder in S_mu."""
        n = self.n
        w0 = [0] * n
        s = 1
        for part in mu:
            vals = sorted(w[p - 1] for p in range(s, s + part))
            for k, v in enumerate(vals):
                w0[s - 1 + k] = v
            s += part
        w0 = tuple(w0)
        u = perm_compose(perm_inverse(w0), w)
        return w0, u

    def coset_representatives(self, mu):
        """All minimal-length left coset representatives, sorted by length."""
        import itertools

        reps = []
        for w in itertools.permutations(range(1, self.n + 1)):
            w0, u = self.min_coset_rep(mu, w)
            if w == w0:
                reps.append(w)
        reps.sort(key=lambda w: (perm_length(w), w))
        return reps

    def coset_decompose(self, h, mu):
        """Write h = sum_w T_w h_w with h_w in the parabolic of shape mu.

        Returns {w: HElement} keyed by the minimal-length representatives.
        Uniqueness comes from the PBW basis; correctness is checked by the
        round-trip test sum T_w h_w == h.
        """
        result = {}
        work = h
        guard = 0
        while not work.is_zero():
            guard += 1
            if guard > 100000:
                raise RuntimeError("coset decomposition failed to terminate")
            # monomial with the longest coset part
            best = None
            for m in work.terms:
                w0, u = self.min_coset_rep(mu, m.w)
                lw = perm_length(w0)
                if best is None or lw > best[0]:
                    best = (lw, m, w0, u)
            _, m, w0, u = best
            c = work.terms[m]
            # target inner monomial: positions permuted through T_{w0}
            alpha2 = tuple(m.alpha[w0[k] - 1] for k in range(self.n))
            beta2 = tuple(m.beta[w0[k] - 1] for k in range(self.n))
            # sign of reordering the Clifford factors
            targets = [w0[k] for k in range(self.n) if beta2[k]]
            invs = sum(
                1
                for a in range(len(targets))
                for b in range(a + 1, len(targets))
                if targets[a] > targets[b]
            )
            sign = -1 if invs & 1 else 1
            inner = self.monomial_elem(
                NormalMonomial(alpha2, beta2, u), -c if sign == -1 else c
            )
            prev = result.get(w0)
            result[w0] = inner if prev is None else prev + inner
            t_rep = self.monomial_elem(
                NormalMonomial((0,) * self.n, (0,) * self.n, w0)
            )
            work = work - self.multiply(t_rep, inner)
        return {w: e for w, e in result.items() if not e.is_zero()}


def normal_multiply(a, b):
    """Product in canonical PBW form (module-level form of multiply)."""
    if a.algebra is not b.algebra:
        raise ValueError("rank or field mismatch")
    return a.algebra.multiply(a, b)


def sigma(h):
    """The order-reversing algebra automorphism."""
    return h.algebra.sigma(h)


def tau(h):
    """The Clifford-twisted antiautomorphism."""
    return h.algebra.tau(h)


def coset_decompose(h, mu):
    """Unique expansion over minimal coset representatives of the parabolic."""
    return h.algebra.coset_decompose(h, mu)
