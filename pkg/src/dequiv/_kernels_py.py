"""Pure-Python row-reduction kernel over the rationals.

A matrix is stored as two flat row-major lists of ints (numerators and
denominators, denominators > 0).  The compiled twin ``_kernels.pyx``
implements the same interface; ``dequiv.exactla`` picks whichever is
available at import time.
"""

from math import gcd

BACKEND = "python"


def _q_norm(n, d):
    # keep d > 0 and gcd(|n|, d) = 1
    if n == 0:
        return 0, 1
    if d < 0:
        n, d = -n, -d
    g = gcd(n if n > 0 else -n, d)
    if g > 1:
        n //= g
        d //= g
    return n, d


def rref(nums, dens, nrows, ncols):
    """Reduced row echelon form, in place.

    Returns (rank, pivot_cols).  Entry (r, c) lives at index r*ncols + c.
    """
    rank = 0
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
            a, b = piv * ncols, rank * ncols
            for c in range(ncols):
                nums[a + c], nums[b + c] = nums[b + c], nums[a + c]
                dens[a + c], dens[b + c] = dens[b + c], dens[a + c]
        base = rank * ncols
        pn = nums[base + col]
        pd = dens[base + col]
        # scale pivot row to make the pivot 1
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
                # entry -= factor * pivot_row_entry
                n1 = nums[off + c] * fd * bd - fn * bn * dens[off + c]
                d1 = dens[off + c] * fd * bd
                nums[off + c], dens[off + c] = _q_norm(n1, d1)
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return rank, pivots
