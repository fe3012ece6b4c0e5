from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfcy.polyring import Poly, variables
from mfcy.residue import (
    NonRationalPointError,
    ResidueQuery,
    contour_oracle_1d,
    residue_at_rational_points,
    residue_local,
    residue_local_by_eliminants,
    residue_monomial,
    residue_total,
    residue_univariate,
    transformation_law_direct,
)


def test_univariate_basics():
    (z,) = variables(1)
    assert residue_univariate(Poly.constant(1, 1), z, 1) == 1
    assert residue_univariate(z ** 2 + 3 * z, z ** 2, 1) == 3
    assert residue_univariate(Poly.constant(1, 1), z - 2, 2, 2) == 0


roots = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=2), min_size=2, max_size=4, unique=True)


@settings(max_examples=30, deadline=None)
@given(roots, st.lists(st.integers(-3, 3), min_size=1, max_size=3))
def test_global_residue_theorem(xs, hc):
    # deg h <= deg g - 2: the residues over all finite poles sum to zero
    (z,) = variables(1)
    g = Poly.constant(1, 1)
    for x in xs:
        g = g * (z - x)
    h = sum((c * z ** k for k, c in enumerate(hc[: len(xs) - 1])), Poly.zero(1))
    q = ResidueQuery(h, ((g, 1),))
    assert residue_total(q) == 0
    assert sum(residue_local(ResidueQuery(h, ((g, 1),), (x,))) for x in xs) == 0


def test_point_residues_sum_to_total():
    x, y = variables(2)
    f1, f2 = x ** 2 - 1, y * (y - 2)
    h = 1 + x + 3 * y + x * y
    q = ResidueQuery(h, ((f1, 1), (f2, 1)))
    pts = [(a, b) for a in (1, -1) for b in (0, 2)]
    local = sum(residue_local(ResidueQuery(h, q.denominators, p)) for p in pts)
    assert local == residue_total(q) == residue_at_rational_points(q)


def test_transformation_law_against_monomial():
    x, y = variables(2)
    q = ResidueQuery(x ** 3 * y + 2 * x * y ** 2 + 5, ((x ** 2, 2), (y ** 3, 1)), (0, 0))
    assert residue_monomial(q) == transformation_law_direct(ResidueQuery(q.numerator, q.denominators))
    assert residue_monomial(q) == residue_local_by_eliminants(q)


def test_contour_oracle():
    (z,) = variables(1)
    g = (z - 1) ** 2 * (z + 1)
    h = z ** 3 + 2
    exact = residue_local(ResidueQuery(h, ((g, 1),), (Fraction(1),)))
    assert abs(contour_oracle_1d(h, g, 1, 1.0, 0.5) - float(exact)) < 1e-9


def test_bad_queries():
    x, y = variables(2)
    with pytest.raises(ValueError):
        ResidueQuery(x, ((x, 1),))
    with pytest.raises(ValueError):
        ResidueQuery(x, ((x, 1), (y, 0)))
    with pytest.raises((NonRationalPointError, ValueError, TypeError)):
        ResidueQuery(x, ((x, 1), (y, 1)), (0.5, 0))
