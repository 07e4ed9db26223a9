# cython: language_level=3
"""Compiled arithmetic kernels for cyclotomic field elements.

Same raw element format and semantics as _pykernels.py: ``(nums, den)`` with
integer numerators over a positive common denominator, gcd-normalized.
Coefficients are arbitrary-precision Python ints; the win over the pure
backend is the C-level loop and indexing around them.
"""

from math import gcd

BACKEND = "cython"


def felem_normalize(nums, den):
    cdef Py_ssize_t i, m
    cdef list out
    if den < 0:
        den = -den
        nums = [-x for x in nums]
    g = den
    for x in nums:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        m = len(nums)
        out = [0] * m
        for i in range(m):
            out[i] = nums[i] // g
        return (tuple(out), den // g)
    return (tuple(nums), den)


def felem_is_zero(a):
    for x in a[0]:
        if x:
            return False
    return True


def felem_neg(a):
    return (tuple(-x for x in a[0]), a[1])


def felem_add(a, b):
    cdef Py_ssize_t i, m
    an, ad = a
    bn, bd = b
    m = len(an)
    cdef list out = [0] * m
    if ad == bd:
        for i in range(m):
            out[i] = an[i] + bn[i]
        return felem_normalize(out, ad)
    for i in range(m):
        out[i] = an[i] * bd + bn[i] * ad
    return felem_normalize(out, ad * bd)


def felem_sub(a, b):
    cdef Py_ssize_t i, m
    an, ad = a
    bn, bd = b
    m = len(an)
    cdef list out = [0] * m
    if ad == bd:
        for i in range(m):
            out[i] = an[i] - bn[i]
        return felem_normalize(out, ad)
    for i in range(m):
        out[i] = an[i] * bd - bn[i] * ad
    return felem_normalize(out, ad * bd)


def felem_scale(a, p, q):
    if p == 0:
        return (tuple(0 for _ in a[0]), 1)
    return felem_normalize([x * p for x in a[0]], a[1] * q)


cdef list _mul_reduced(an, bn, red):
    cdef Py_ssize_t i, j, k, t, m
    m = len(an)
    cdef list conv = [0] * (2 * m - 1)
    for i in range(m):
        ai = an[i]
        if ai:
            for j in range(m):
                bj = bn[j]
                if bj:
                    conv[i + j] = conv[i + j] + ai * bj
    for t in range(2 * m - 2, m - 1, -1):
        c = conv[t]
        if c:
            row = red[t - m]
            for k in range(m):
                rk = row[k]
                if rk:
                    conv[k] = conv[k] + c * rk
    return conv[:m]


def felem_mul(a, b, red):
    an, ad = a
    bn, bd = b
    return felem_normalize(_mul_reduced(an, bn, red), ad * bd)


def felem_submul(a, b, c, red):
    """a - b*c, fused."""
    cdef Py_ssize_t i, m
    an, ad = a
    cdef list pn = _mul_reduced(b[0], c[0], red)
    pd = b[1] * c[1]
    m = len(an)
    cdef list out = [0] * m
    if ad == pd:
        for i in range(m):
            out[i] = an[i] - pn[i]
        return felem_normalize(out, ad)
    for i in range(m):
        out[i] = an[i] * pd - pn[i] * ad
    return felem_normalize(out, ad * pd)
