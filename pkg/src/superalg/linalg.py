"""Small dense linear algebra over the scalar rings.

Exact rings get fraction Gauss-Jordan; float rings delegate to numpy.
Matrices are plain lists of lists of ring scalars.
"""

from __future__ import annotations

import numpy as np


def identity(n, ring):
    return [
        [ring.one if i == j else ring.zero for j in range(n)] for i in range(n)
    ]


def mat_mul(a, b, ring):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[ring.zero] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if ring.is_zero(c):
                continue
            bk = b[k]
            for j in range(cols):
                oi[j] = oi[j] + c * bk[j]
    return out

def mat_vec(a, v, ring):
    out = []
    for row in a:
        s = ring.zero
        for c, x in zip(row, v):
            s = s + c * x
        out.append(s)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def scalar_det(a, ring):
    """Determinant by fraction-free-ish Gaussian elimination over a field."""
    n = len(a)
    m = [row[:] for row in a]
    det = ring.one
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not ring.is_zero(m[r][col]):
                pivot = r
                break
        if pivot is None:
            return ring.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        inv = ring.one / p
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if ring.is_zero(factor):
                continue
            m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return det


def scalar_inv(a, ring):
    """Inverse of a square scalar matrix (Gauss-Jordan, exact over fields)."""
    n = len(a)
    m = [row[:] + ident_row for row, ident_row in zip(a, identity(n, ring))]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not ring.is_zero(m[r][col]):
                pivot = r
                break
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        inv = ring.one / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r == col:
                continue
            factor = m[r][col]
            if ring.is_zero(factor):
                continue
            m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def nullspace(a, ring, tol=1e-9):
    """Basis of the right nullspace of a (rows x cols) scalar matrix."""
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    if not ring.is_exact:
        arr = np.array(a, dtype=complex if ring.is_complex else float)
        _, s, vh = np.linalg.svd(arr)
        rank = int(np.sum(s > tol * max(1.0, s[0] if len(s) else 1.0)))
        return [list(v) for v in vh[rank:].conj()]
    m = [row[:] for row in a]
    pivots = []
    r = 0
    for col in range(cols):
        pivot = None
        for rr in range(r, rows):
            if not ring.is_zero(m[rr][col]):
                pivot = rr
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ring.one / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for rr in range(rows):
            if rr != r and not ring.is_zero(m[rr][col]):
                factor = m[rr][col]
                m[rr] = [x - factor * y for x, y in zip(m[rr], m[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ring.zero] * cols
        v[fc] = ring.one
        for pr, pc in enumerate(pivots):
            v[pc] = -m[pr][fc]
        basis.append(v)
    return basis


def is_invertible(a, ring, tol=1e-9):
    if ring.is_exact:
        return not ring.is_zero(scalar_det(a, ring))
    arr = np.array(a, dtype=complex if ring.is_complex else float)
    s = np.linalg.svd(arr, compute_uv=False)
    return bool(len(s) == 0 or s[-1] > tol)
