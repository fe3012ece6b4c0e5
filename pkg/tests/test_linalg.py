from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from mfcy.linalg import det, matmul, nullspace, poly_det, rank, rref, solve
from mfcy.polyring import Poly, variables

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(matrices(4, 4))
def test_det_matches_float(m):
    expected = np.linalg.det(np.array(m, dtype=float))
    assert abs(float(det(m)) - expected) < 1e-6 * max(1.0, abs(expected))


@given(matrices(3, 5))
def test_rank_nullity(m):
    kernel = nullspace(m)
    assert rank(m) + len(kernel) == 5
    for v in kernel:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)


@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_solve(m, x):
    rhs = [sum(a * b for a, b in zip(row, x)) for row in m]
    sol = solve(m, rhs)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in m] == rhs


def test_inconsistent_system():
    assert solve([[1, 1], [2, 2]], [Fraction(1), Fraction(3)]) is None


def test_rref_pivots():
    r, piv = rref([[2, 4, 1], [1, 2, 0]])
    assert piv == [0, 2]
    assert r[0] == [1, 2, 0]


def test_poly_det_multiplicative():
    x, y = variables(2)
    a = [[x, y], [1, x + y]]
    b = [[y, 2], [x, x * y]]
    ab = matmul(a, b, Poly.zero(2))
    assert poly_det(ab) == poly_det(a) * poly_det(b)
