"""Exact linear algebra over Q and prime fields, plus Z-matrix normal forms.

Everything downstream (path-class bases, Cartan matrices, resolutions,
Hochschild cochains) runs through :class:`ExactMatrix`.  Over Q the row
reduction is delegated to the elimination kernel (compiled if available,
pure Python otherwise); prime fields use a generic fallback.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

if os.environ.get("DEQUIV_PURE"):
    from . import _kernels_py as _kernels
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _kernels  # type: ignore[no-redef]

KERNEL_BACKEND = _kernels.BACKEND


class RationalField:
    """The field Q with elements represented as Fraction (always normalized)."""

    name = "Q"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def to_str(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return "%d/%d" % (a.numerator, a.denominator)

    def from_str(self, s):
        return Fraction(s)

    def __repr__(self):
        return "QQ"


class PrimeField:
    """GF(p) with elements represented as ints in [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError("not a prime: %d" % p)
        self.p = p
        self.name = "F%d" % p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def to_str(self, a):
        return str(a % self.p)

    def from_str(self, s):
        return int(s) % self.p

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()


def field_from_spec(spec: str):
    """Parse a field flag: 'q' for the rationals, 'fp:PRIME' for GF(p)."""
    spec = spec.strip().lower()
    if spec in ("q", "qq"):
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError("unknown field spec %r" % spec)


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix over an exact field."""

    field: object
    nrows: int
    ncols: int
    entries: tuple  # tuple of row tuples

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence], field=QQ) -> "ExactMatrix":
        rows = [tuple(field.from_int(x) if isinstance(x, int) else x for x in r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return ExactMatrix(field, nrows, ncols, tuple(rows))

    @staticmethod
    def zero(nrows: int, ncols: int, field=QQ) -> "ExactMatrix":
        z = field.zero
        return ExactMatrix(field, nrows, ncols, tuple(tuple(z for _ in range(ncols)) for _ in range(nrows)))

    @staticmethod
    def identity(n: int, field=QQ) -> "ExactMatrix":
        z, o = field.zero, field.one
        return ExactMatrix(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    # -- basic ops ---------------------------------------------------------

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def row(self, r):
        return self.entries[r]

    def col(self, c):
        return tuple(self.entries[r][c] for r in range(self.nrows))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        f = self.field
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        return ExactMatrix(f, self.nrows, self.ncols, tuple(
            tuple(f.add(a, b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __neg__(self) -> "ExactMatrix":
        f = self.field
        return ExactMatrix(f, self.nrows, self.ncols, tuple(
            tuple(f.neg(a) for a in r) for r in self.entries))

    def scale(self, c) -> "ExactMatrix":
        f = self.field
        if isinstance(c, int):
            c = f.from_int(c)
        return ExactMatrix(f, self.nrows, self.ncols, tuple(
            tuple(f.mul(c, a) for a in r) for r in self.entries))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        f = self.field
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %dx%d @ %dx%d" % (self.nrows, self.ncols, other.nrows, other.ncols))
        ot = other.transpose().entries
        rows = []
        for ra in self.entries:
            row = []
            for cb in ot:
                acc = f.zero
                for a, b in zip(ra, cb):
                    if not f.is_zero(a) and not f.is_zero(b):
                        acc = f.add(acc, f.mul(a, b))
                row.append(acc)
            rows.append(tuple(row))
        return ExactMatrix(f, self.nrows, other.ncols, tuple(rows))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.ncols, self.nrows,
                           tuple(tuple(self.entries[r][c] for r in range(self.nrows))
                                 for c in range(self.ncols)))

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(a) for r in self.entries for a in r)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        assert self.nrows == other.nrows
        return ExactMatrix(self.field, self.nrows, self.ncols + other.ncols,
                           tuple(ra + rb for ra, rb in zip(self.entries, other.entries)))

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        assert self.ncols == other.ncols
        return ExactMatrix(self.field, self.nrows + other.nrows, self.ncols,
                           self.entries + other.entries)

    # -- elimination -------------------------------------------------------

    def rref(self):
        """Return (rank, pivot_cols, rref matrix)."""
        f = self.field
        if f is QQ or isinstance(f, RationalField):
            nums = [x.numerator for r in self.entries for x in r]
            dens = [x.denominator for r in self.entries for x in r]
            rank, pivots = _kernels.rref(nums, dens, self.nrows, self.ncols)
            rows = tuple(
                tuple(Fraction(nums[r * self.ncols + c], dens[r * self.ncols + c])
                      for c in range(self.ncols))
                for r in range(self.nrows))
            return rank, pivots, ExactMatrix(f, self.nrows, self.ncols, rows)
        return self._rref_generic()

    def _rref_generic(self):
        f = self.field
        rows = [list(r) for r in self.entries]
        rank = 0
        pivots = []
        for col in range(self.ncols):
            piv = next((r for r in range(rank, self.nrows) if not f.is_zero(rows[r][col])), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = f.inv(rows[rank][col])
            rows[rank] = [f.mul(inv, x) for x in rows[rank]]
            for r in range(self.nrows):
                if r != rank and not f.is_zero(rows[r][col]):
                    c0 = rows[r][col]
                    rows[r] = [f.sub(x, f.mul(c0, y)) for x, y in zip(rows[r], rows[rank])]
            pivots.append(col)
            rank += 1
            if rank == self.nrows:
                break
        return rank, pivots, ExactMatrix(f, self.nrows, self.ncols, tuple(tuple(r) for r in rows))

    def rank(self) -> int:
        return self.rref()[0]

    def kernel(self) -> "ExactMatrix":
        """Matrix whose columns form a basis of the right kernel."""
        f = self.field
        rank, pivots, rr = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        cols = []
        for fc in free:
            v = [f.zero] * self.ncols
            v[fc] = f.one
            for i, pc in enumerate(pivots):
                v[pc] = f.neg(rr.entries[i][fc])
            cols.append(v)
        if not cols:
            return ExactMatrix(f, self.ncols, 0, tuple(tuple() for _ in range(self.ncols)))
        return ExactMatrix(f, self.ncols, len(cols),
                           tuple(tuple(col[r] for col in cols) for r in range(self.ncols)))

    def solve(self, b: "ExactMatrix") -> Optional["ExactMatrix"]:
        """A particular solution X of self @ X = b, or None if inconsistent."""
        f = self.field
        assert b.nrows == self.nrows
        aug = self.hstack(b)
        rank, pivots, rr = aug.rref()
        if any(p >= self.ncols for p in pivots):
            return None
        xcols = []
        for j in range(b.ncols):
            v = [f.zero] * self.ncols
            for i, pc in enumerate(pivots):
                v[pc] = rr.entries[i][self.ncols + j]
            xcols.append(v)
        return ExactMatrix(f, self.ncols, b.ncols,
                           tuple(tuple(col[r] for col in xcols) for r in range(self.ncols)))

    def inverse(self) -> "ExactMatrix":
        if self.nrows != self.ncols:
            raise ValueError("not square")
        x = self.solve(ExactMatrix.identity(self.nrows, self.field))
        if x is None or not (self @ x - ExactMatrix.identity(self.nrows, self.field)).is_zero():
            raise ValueError("matrix not invertible")
        return x

    def det(self):
        """Exact determinant (fraction-free not required; elimination based)."""
        if self.nrows != self.ncols:
            raise ValueError("not square")
        f = self.field
        rows = [list(r) for r in self.entries]
        det = f.one
        n = self.nrows
        for col in range(n):
            piv = next((r for r in range(col, n) if not f.is_zero(rows[r][col])), None)
            if piv is None:
                return f.zero
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = f.neg(det)
            det = f.mul(det, rows[col][col])
            inv = f.inv(rows[col][col])
            for r in range(col + 1, n):
                if not f.is_zero(rows[r][col]):
                    c0 = f.mul(inv, rows[r][col])
                    rows[r] = [f.sub(x, f.mul(c0, y)) for x, y in zip(rows[r], rows[col])]
        return det

    # -- conversions -------------------------------------------------------

    def to_int_rows(self):
        out = []
        for r in self.entries:
            row = []
            for x in r:
                if isinstance(x, Fraction):
                    if x.denominator != 1:
                        raise ValueError("non-integer entry %s" % x)
                    row.append(x.numerator)
                else:
                    row.append(int(x))
            out.append(row)
        return out

    def to_str_rows(self):
        f = self.field
        return [[f.to_str(x) for x in r] for r in self.entries]

    def __str__(self):
        return "\n".join("[" + " ".join(self.field.to_str(x) for x in r) + "]" for r in self.entries)


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients ascending by degree, normalized."""

    coeffs: tuple

    @staticmethod
    def of(coeffs: Iterable[int]) -> "IntPolynomial":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return IntPolynomial(tuple(int(c) for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial.of(out)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("%sx" % ("" if c == 1 else "-" if c == -1 else c))
            else:
                terms.append("%sx^%d" % ("" if c == 1 else "-" if c == -1 else c, i))
        return " + ".join(reversed(terms)).replace("+ -", "- ")


def rank_and_kernel(m: ExactMatrix):
    """Rank and a basis of the right kernel (as columns)."""
    rank = m.rank()
    return rank, m.kernel()


def char_poly(m: ExactMatrix) -> IntPolynomial:
    """Characteristic polynomial det(xI - m) of a square integer matrix.

    Faddeev-LeVerrier over Q; coefficients are asserted integral.
    """
    if m.nrows != m.ncols:
        raise ValueError("char_poly requires a square matrix")
    n = m.nrows
    a = ExactMatrix.from_rows([[Fraction(x) for x in row] for row in m.to_int_rows()])
    coeffs = [Fraction(1)]  # c_n .. c_0, descending
    mk = a
    ident = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        if k > 1:
            mk = a @ (mk + ident.scale(coeffs[-1]))
        tr = sum((mk.entries[i][i] for i in range(n)), Fraction(0))
        coeffs.append(Fraction(-tr, k))
    asc = list(reversed(coeffs))
    for c in asc:
        if c.denominator != 1:
            raise ArithmeticError("non-integer characteristic coefficient %s" % c)
    return IntPolynomial.of([c.numerator for c in asc])


def smith_normal_form(m: ExactMatrix):
    """Invariant factors d1 | d2 | ... of an integer matrix (positive, rank many)."""
    rows = m.to_int_rows()
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    diag = []
    r0 = c0 = 0
    while r0 < nr and c0 < nc:
        # locate a nonzero pivot of minimal absolute value
        piv = None
        for i in range(r0, nr):
            for j in range(c0, nc):
                if rows[i][j] != 0 and (piv is None or abs(rows[i][j]) < abs(rows[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        while True:
            i, j = piv
            rows[r0], rows[i] = rows[i], rows[r0]
            for k in range(nr):
                rows[k][c0], rows[k][j] = rows[k][j], rows[k][c0]
            p = rows[r0][c0]
            dirty = False
            for i in range(r0 + 1, nr):
                q = rows[i][c0] // p
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r0])]
                if rows[i][c0] != 0:
                    dirty = True
            for j in range(c0 + 1, nc):
                q = rows[r0][j] // p
                if q:
                    for i in range(nr):
                        rows[i][j] -= q * rows[i][c0]
                if rows[r0][j] != 0:
                    dirty = True
            if not dirty:
                break
            # a smaller remainder appeared somewhere in the pivot row/column
            piv = None
            for i in range(r0, nr):
                for j in range(c0, nc):
                    if rows[i][j] != 0 and (piv is None or abs(rows[i][j]) < abs(rows[piv[0]][piv[1]])):
                        piv = (i, j)
        diag.append(abs(rows[r0][c0]))
        r0 += 1
        c0 += 1
    # enforce the divisibility chain on the diagonal
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if b % a != 0:
                from math import gcd
                g = gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return [d for d in diag if d != 0]
