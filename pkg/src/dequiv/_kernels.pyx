# cython: language_level=3
"""Compiled row-reduction kernel over the rationals.

Same interface as ``_kernels_py``: matrices are flat row-major lists of
int numerators and (positive) denominators.  Arithmetic stays on Python
ints (entries can grow arbitrarily large); the win over the pure twin is
loop and indexing overhead.
"""

from math import gcd

BACKEND = "cython"


cdef inline tuple _q_norm(n, d):
    if n == 0:
        return 0, 1
    if d < 0:
        n, d = -n, -d
    g = gcd(n if n > 0 else -n, d)
    if g > 1:
        n //= g
        d //= g
    return n, d


def rref(list nums, list dens, Py_ssize_t nrows, Py_ssize_t ncols):
    """Reduced row echelon form, in place.  Returns (rank, pivot_cols)."""
    cdef Py_ssize_t rank = 0, col, r, c, piv, a, b, base, off
    pivots = []
    for col in range(ncols):
        piv = -1
        for r in range(rank, nrows):
            if nums[r * ncols + col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            a = piv * ncols
            b = rank * ncols
            for c in range(ncols):
                nums[a + c], nums[b + c] = nums[b + c], nums[a + c]
                dens[a + c], dens[b + c] = dens[b + c], dens[a + c]
        base = rank * ncols
        pn = nums[base + col]
        pd = dens[base + col]
        for c in range(col, ncols):
            n = nums[base + c] * pd
            d = dens[base + c] * pn
            nums[base + c], dens[base + c] = _q_norm(n, d)
        for r in range(nrows):
            if r == rank:
                continue
            off = r * ncols
            fn = nums[off + col]
            if fn == 0:
                continue
            fd = dens[off + col]
            for c in range(col, ncols):
                bn = nums[base + c]
                if bn == 0:
                    continue
                bd = dens[base + c]
                n1 = nums[off + c] * fd * bd - fn * bn * dens[off + c]
                d1 = dens[off + c] * fd * bd
                nums[off + c], dens[off + c] = _q_norm(n1, d1)
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, pivots
