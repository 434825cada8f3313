# cython: boundscheck=False, wraparound=False
"""Compiled Grassmann kernels: term-pair multiplication and table scans.

Coefficients stay generic Python objects (Fraction, ComplexRational, float,
complex); the win comes from running the pair loop, mask tests and sign
computation in C.
"""

BACKEND = "cython"


cdef inline int _popcount(unsigned long long x) noexcept:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline int _inversions(unsigned long long a, unsigned long long b) noexcept:
    cdef int count = 0
    a >>= 1
    while a:
        count += _popcount(a & b)
        a >>= 1
    return count


def inversions(a, b):
    """Number of pairs (i in a, j in b) with i > j, for bitmask monomials."""
    return _inversions(<unsigned long long> a, <unsigned long long> b)


def mul_into(terms_a, terms_b, list out):
    """Accumulate the product of two term lists into `out`; return touched
    masks (possibly with duplicates)."""
    cdef unsigned long long ma, mb, m
    cdef Py_ssize_t i, j, na, nb
    na = len(terms_a)
    nb = len(terms_b)
    touched = []
    for i in range(na):
        ta = terms_a[i]
        ma = <unsigned long long> ta[0]
        ca = ta[1]
        for j in range(nb):
            tb = terms_b[j]
            mb = <unsigned long long> tb[0]
            if ma & mb:
                continue
            c = ca * tb[1]
            m = ma | mb
            if _inversions(ma, mb) & 1:
                out[m] = out[m] - c
            else:
                out[m] = out[m] + c
            touched.append(m)
    return touched


def collect_terms(list coeffs):
    """Nonzero (mask, coeff) pairs of a dense table (exact-zero skip)."""
    cdef Py_ssize_t m, size = len(coeffs)
    out = []
    for m in range(size):
        c = coeffs[m]
        if c:
            out.append((m, c))
    return out


def gather_terms(list coeffs, touched):
    """Nonzero (mask, coeff) pairs among the given masks, sorted, deduped."""
    out = []
    for m in sorted(set(touched)):
        c = coeffs[m]
        if c:
            out.append((m, c))
    return out
