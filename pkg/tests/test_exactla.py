import random
from fractions import Fraction

import pytest

from dequiv.exactla import (QQ, ExactMatrix, IntPolynomial, PrimeField,
                            char_poly, field_from_spec, rank_and_kernel,
                            smith_normal_form)


def naive_gauss_rank(rows):
    """Independent rank oracle: fraction Gaussian elimination from scratch."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def cofactor_det(rows):
    """Independent determinant oracle by Laplace expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def test_rank_against_hand_elimination():
    rng = random.Random(7)
    for _ in range(30):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(-4, 4) for _ in range(nc)] for _ in range(nr)]
        m = ExactMatrix.from_rows(rows)
        assert m.rank() == naive_gauss_rank(rows)


def test_rank_equals_transpose_rank():
    rng = random.Random(11)
    for _ in range(20):
        rows = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(4)]
                for _ in range(3)]
        m = ExactMatrix.from_rows(rows)
        assert m.rank() == m.transpose().rank()


def test_kernel_columns_are_annihilated():
    rng = random.Random(13)
    for _ in range(20):
        rows = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
        m = ExactMatrix.from_rows(rows)
        k = m.kernel()
        assert k.ncols == 5 - m.rank()
        if k.ncols:
            assert (m @ k).is_zero()


def test_solve_and_inverse():
    m = ExactMatrix.from_rows([[1, 2], [3, 4]])
    b = ExactMatrix.from_rows([[1], [1]])
    x = m.solve(b)
    assert (m @ x - b).is_zero()
    assert (m @ m.inverse() - ExactMatrix.identity(2)).is_zero()
    singular = ExactMatrix.from_rows([[1, 2], [2, 4]])
    assert singular.solve(ExactMatrix.from_rows([[0], [1]])) is None


def test_det_against_cofactor_expansion():
    rng = random.Random(17)
    for _ in range(15):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        assert ExactMatrix.from_rows(rows).det() == cofactor_det(rows)


def test_char_poly_examples():
    assert char_poly(ExactMatrix.identity(2)).coeffs == (1, -2, 1)
    assert char_poly(ExactMatrix.from_rows([[-1, -2], [2, 3]])).coeffs == (1, -2, 1)
    assert char_poly(ExactMatrix.from_rows([[-1, -1], [1, 0]])).coeffs == (1, 1, 1)


def test_char_poly_similarity_invariance():
    rng = random.Random(19)
    a = ExactMatrix.from_rows([[2, 1, 0], [0, -1, 3], [1, 1, 1]])
    # conjugate by a random unimodular matrix
    u = ExactMatrix.from_rows([[1, rng.randint(-3, 3), rng.randint(-3, 3)],
                               [0, 1, rng.randint(-3, 3)],
                               [0, 0, 1]])
    conj = u @ a @ u.inverse()
    assert char_poly(a).coeffs == char_poly(conj).coeffs


def test_smith_normal_form_examples():
    assert smith_normal_form(ExactMatrix.from_rows([[0, 2], [-2, 0]])) == [2, 2]
    assert smith_normal_form(ExactMatrix.from_rows([[2, 0], [0, 3]])) == [1, 6]
    assert smith_normal_form(ExactMatrix.zero(2, 3)) == []


def test_smith_divisibility_and_unimodular_invariance():
    rng = random.Random(23)
    for _ in range(15):
        rows = [[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)]
        m = ExactMatrix.from_rows(rows)
        fac = smith_normal_form(m)
        assert all(fac[i + 1] % fac[i] == 0 for i in range(len(fac) - 1))
        u = ExactMatrix.from_rows([[1, rng.randint(-2, 2), 0], [0, 1, 0],
                                   [rng.randint(-2, 2), 0, 1]])
        assert smith_normal_form(u @ m) == fac
        assert smith_normal_form(m @ u) == fac


def test_prime_field_rank_matches_rationals_generically():
    f = field_from_spec("fp:10007")
    rows = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
    mq = ExactMatrix.from_rows(rows)
    mp = ExactMatrix.from_rows([[f.from_int(x) for x in r] for r in rows], f)
    assert mq.rank() == mp.rank()


def test_prime_field_arithmetic():
    f = PrimeField(7)
    assert f.mul(f.from_int(3), f.inv(f.from_int(3))) == f.one
    assert f.add(f.from_int(6), f.one) == f.zero
    with pytest.raises(ValueError):
        field_from_spec("fp:8")


def test_rank_and_kernel_consistency():
    m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    rank, kernel = rank_and_kernel(m)
    assert rank == 1
    assert kernel.ncols == 2
    assert (m @ kernel).is_zero()


def test_int_polynomial_rendering():
    assert str(IntPolynomial((1, -2, 1))) == "x^2 - 2x + 1"
