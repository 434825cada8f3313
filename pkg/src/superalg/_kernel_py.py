"""Pure-Python fallback for the hot Grassmann kernels.

Same contract as the compiled module `superalg._kernel`; which one is used
is decided once, at import time, in `superalg._backend`.
"""

BACKEND = "python"


def inversions(a: int, b: int) -> int:
    """Number of pairs (i in a, j in b) with i > j, for bitmask monomials."""
    count = 0
    a >>= 1
    while a:
        count += (a & b).bit_count()
        a >>= 1
    return count


def mul_into(terms_a, terms_b, out):
    """Accumulate the product of two term lists into the dense table `out`.

    `terms_a`, `terms_b` are sequences of (mask, coeff) with nonzero coeff;
    `out` is a dense list indexed by mask.  Disjoint masks only; the sign is
    the parity of the inversion count between the two masks.  Returns the
    list of touched masks (possibly with duplicates).
    """
    touched = []
    for ma, ca in terms_a:
        for mb, cb in terms_b:
            if ma & mb:
                continue
            c = ca * cb
            a = ma >> 1
            count = 0
            while a:
                count += (a & mb).bit_count()
                a >>= 1
            m = ma | mb
            if count & 1:
                out[m] = out[m] - c
            else:
                out[m] = out[m] + c
            touched.append(m)
    return touched


def collect_terms(coeffs):
    """Nonzero (mask, coeff) pairs of a dense table (exact-zero skip)."""
    return [(m, c) for m, c in enumerate(coeffs) if c]


def gather_terms(coeffs, touched):
    """Nonzero (mask, coeff) pairs among the given masks, sorted, deduped."""
    return [(m, coeffs[m]) for m in sorted(set(touched)) if coeffs[m]]
