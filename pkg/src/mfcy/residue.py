"""Grothendieck residues of polynomial data.

The total residue (sum over all common zeros of the denominators) is computed
with the transformation law: monic univariate eliminants ``chi_i(z_i)`` are
found in the ideal together with a cofactor matrix ``A`` and the residue of
``h / (g_1^s_1 ... g_n^s_n)`` becomes a coefficient of the normal form of
``h * det(A)`` modulo the eliminants.  Local residues at rational points go
through a monomial backend when possible and through local eliminant factors
otherwise.  A trapezoidal contour integral in one variable is kept as an
independent numeric check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .linalg import matmul, poly_det, rank
from .polyring import (
    DEGREVLEX,
    GroebnerBasis,
    NonIsolatedError,
    Poly,
    coordinates,
    divide,
    groebner,
    minimal_polynomial,
    multiplication_matrix,
    normal_form,
    quotient_basis,
    truncated_inverse,
    univariate_coefficients,
)


class ResidueError(ValueError):
    pass


class NotAPoleError(ResidueError):
    """The point is not a common zero of the denominators."""


class BackendUnsupportedError(ResidueError):
    """The monomial backend does not apply to this query."""


class NonRationalPointError(ResidueError):
    """Per-point residues are only available at rational points."""


@dataclass(frozen=True)
class ResidueQuery:
    """``numerator`` already carries the volume-form coefficient."""

    numerator: Poly
    denominators: tuple  # ((g, power), ...)
    point: tuple | None = None

    def __post_init__(self):
        n = self.numerator.nvars
        dens = tuple((g, int(s)) for g, s in self.denominators)
        object.__setattr__(self, "denominators", dens)
        if len(dens) != n:
            raise ValueError(f"need {n} denominators, got {len(dens)}")
        for g, s in dens:
            if g.nvars != n:
                raise ValueError("denominator lives in a different ring")
            if not g:
                raise ValueError("zero denominator")
            if s < 1:
                raise ValueError("denominator powers must be positive")
        if self.point is not None:
            object.__setattr__(self, "point", tuple(_rational_coordinate(x) for x in self.point))
            if len(self.point) != n:
                raise ValueError("point has the wrong dimension")

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    def powered(self) -> tuple:
        return tuple(g ** s for g, s in self.denominators)


def _rational_coordinate(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            from .polyring import parse_scalar

            return parse_scalar(x)
        except ValueError:
            raise NonRationalPointError(f"point coordinate {x!r} is not an exact rational") from None
    raise NonRationalPointError(f"point coordinate {x!r} is not an exact rational")


# -- one variable ------------------------------------------------------------

def _split_monomial(g: Poly) -> tuple[tuple, Poly] | None:
    """Write ``g = z^m * u`` with ``u(0) != 0``; ``None`` if impossible."""
    n = g.nvars
    m = tuple(min(mon[i] for mon in g.terms) for i in range(n))
    if m not in g.terms:
        return None
    u = Poly(n, {tuple(a - b for a, b in zip(mon, m)): c for mon, c in g.terms.items()})
    return m, u


def residue_univariate(h: Poly, g: Poly, s: int, x=0) -> Fraction:
    """Coefficient of ``(z-x)^-1`` in the Laurent expansion of ``h / g^s`` at ``x``."""
    if h.nvars != 1 or g.nvars != 1:
        raise ValueError("residue_univariate works in one variable")
    x = _rational_coordinate(x)
    if not g:
        raise ValueError("zero denominator")
    if g.evaluate([x]):
        raise NotAPoleError(f"g({x}) != 0")
    ht = h.translate([x])
    gt = g.translate([x])
    (m,), u = _split_monomial(gt)
    order = m * s
    inv = truncated_inverse(u ** s, order - 1)
    return (ht * inv).coefficient((order - 1,))


# -- monomial backend --------------------------------------------------------

def residue_monomial(q: ResidueQuery) -> Fraction:
    """Residue when every translated denominator is a unit times a pure power.

    ``g_i = u_i * z_{pi(i)}^{a_i}`` with ``pi`` a permutation; the residue is
    ``sgn(pi)`` times the coefficient of ``z^(A-1)`` in ``h * prod u_i^-s_i``.
    """
    n = q.nvars
    point = q.point if q.point is not None else (Fraction(0),) * n
    h = q.numerator.translate(point) if any(point) else q.numerator
    exps = [0] * n
    perm = [None] * n
    unit = Poly.constant(n, 1)
    for i, (g, s) in enumerate(q.denominators):
        gt = g.translate(point) if any(point) else g
        if gt.constant_term():
            raise NotAPoleError(f"denominator {i + 1} does not vanish at the point")
        split = _split_monomial(gt)
        if split is None:
            raise BackendUnsupportedError(f"denominator {i + 1} is not a unit times a monomial")
        m, u = split
        support = [k for k, e in enumerate(m) if e]
        if len(support) != 1:
            raise BackendUnsupportedError(f"denominator {i + 1} is not a pure power")
        var = support[0]
        if exps[var]:
            raise BackendUnsupportedError("two denominators are powers of the same variable")
        exps[var] = m[var] * s
        perm[i] = var
        unit = unit * u ** s
    target = tuple(e - 1 for e in exps)
    inv = truncated_inverse(unit, sum(target))
    value = (h.truncate(sum(target)) * inv).coefficient(target)
    return value * _perm_sign(perm)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


# -- total residues via the transformation law -------------------------------

@dataclass
class ResidueFunctional:
    """The linear functional ``h -> sum_x Res_x[h / (G_1 ... G_n)]`` on the quotient."""

    generators: tuple
    gb: GroebnerBasis
    basis: list
    eliminants: list
    det_cofactors: Poly
    values: list = field(default_factory=list)

    @classmethod
    def build(cls, generators: Sequence[Poly]) -> "ResidueFunctional":
        generators = tuple(generators)
        n = generators[0].nvars
        gb = groebner(generators, DEGREVLEX)
        if gb.is_unit_ideal():
            basis = []
            return cls(generators, gb, basis, [], Poly.zero(n), [])
        basis = quotient_basis(gb)
        elims = [minimal_polynomial(gb, i) for i in range(n)]
        det_a = poly_det([list(e.cofactors) for e in elims])
        chis = [e.poly for e in elims]
        top = tuple(e.poly.degree_in(e.variable) - 1 for e in elims)
        values = []
        for b in basis:
            r, _ = divide(det_a * Poly.monomial(b), chis, DEGREVLEX)
            values.append(r.coefficient(top))
        return cls(generators, gb, basis, elims, det_a, values)

    def __call__(self, h: Poly) -> Fraction:
        if not self.basis:
            return Fraction(0)
        vec = coordinates(self.gb, h, self.basis)
        return sum((a * b for a, b in zip(vec, self.values) if a and b), Fraction(0))

    @property
    def multiplicity(self) -> int:
        return len(self.basis)


@lru_cache(maxsize=512)
def residue_functional(generators: tuple) -> ResidueFunctional:
    return ResidueFunctional.build(generators)


def residue_total(q: ResidueQuery) -> Fraction:
    """Sum of local residues over all common zeros, by the transformation law."""
    if q.point is not None:
        raise ValueError("residue_total takes a query without a point")
    if all(len(g.terms) == 1 for g, _ in q.denominators):
        # pure monomial denominators vanish only at the origin
        try:
            return residue_monomial(q)
        except (BackendUnsupportedError, NotAPoleError):
            pass
    return residue_functional(q.powered())(q.numerator)


def transformation_law_direct(q: ResidueQuery) -> Fraction:
    """Total residue straight from eliminants, without the cached quotient functional."""
    gens = q.powered()
    gb = groebner(gens, DEGREVLEX)
    elims = [minimal_polynomial(gb, i) for i in range(q.nvars)]
    det_a = poly_det([list(e.cofactors) for e in elims])
    r, _ = divide(q.numerator * det_a, [e.poly for e in elims], DEGREVLEX)
    return r.coefficient(tuple(e.poly.degree_in(e.variable) - 1 for e in elims))


# -- local residues ----------------------------------------------------------

def residue_local(q: ResidueQuery) -> Fraction:
    """Local residue at a rational common zero of the denominators."""
    if q.point is None:
        raise ValueError("residue_local needs a point")
    for i, (g, _) in enumerate(q.denominators):
        if g.evaluate(q.point):
            raise NotAPoleError(f"denominator {i + 1} does not vanish at {q.point}")
    try:
        return residue_monomial(q)
    except BackendUnsupportedError:
        pass
    return residue_local_by_eliminants(q)


def residue_local_by_eliminants(q: ResidueQuery) -> Fraction:
    """Local residue through eliminants of the translated ideal, split as ``z^m * unit``."""
    n = q.nvars
    point = q.point
    h = q.numerator.translate(point)
    gens = tuple(g.translate(point) ** s for g, s in q.denominators)
    gb = groebner(gens, DEGREVLEX)
    elims = [minimal_polynomial(gb, i) for i in range(n)]
    det_a = poly_det([list(e.cofactors) for e in elims])
    # chi_i = z_i^m_i * v_i(z_i) with v_i(0) != 0
    orders = []
    unit = Poly.constant(n, 1)
    for e in elims:
        coeffs = univariate_coefficients(e.poly, e.variable)
        m = next(k for k, c in enumerate(coeffs) if c)
        if m == 0:
            raise NotAPoleError("point is not a common zero")
        v = Poly(n, {tuple(k - m if t == e.variable else 0 for t in range(n)): c
                     for k, c in enumerate(coeffs) if c})
        orders.append(m)
        unit = unit * v
    target = tuple(m - 1 for m in orders)
    bound = sum(target)
    inv = truncated_inverse(unit, bound)
    return ((h * det_a).truncate(bound) * inv).coefficient(target)


# -- critical loci and rational points ---------------------------------------

@dataclass(frozen=True)
class CriticalLocus:
    jacobian: tuple
    gb: GroebnerBasis
    basis: tuple
    milnor_number: int


def critical_locus(f: Poly) -> CriticalLocus:
    jac = tuple(f.partial(i) for i in range(f.nvars))
    gb = groebner(jac, DEGREVLEX)
    try:
        basis = tuple(quotient_basis(gb))
    except NonIsolatedError as exc:
        raise NonIsolatedError(f"critical points of {f} are not isolated: {exc}") from None
    return CriticalLocus(jac, gb, basis, len(basis))


def rational_roots(p: Poly, i: int) -> list[Fraction]:
    """Rational roots of a univariate polynomial in ``z_i``."""
    coeffs = univariate_coefficients(p, i)
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    roots = []
    while ints and ints[0] == 0:
        ints.pop(0)
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(ints) <= 1:
        return roots
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    a0, an = abs(ints[0]), abs(ints[-1])
    for num in _divisors(a0):
        for dnm in _divisors(an):
            for cand in (Fraction(num, dnm), Fraction(-num, dnm)):
                if cand in roots:
                    continue
                if sum(c * cand ** k for k, c in enumerate(ints)) == 0:
                    roots.append(cand)
    return sorted(roots)


def _divisors(k: int) -> list[int]:
    out = []
    d = 1
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            if d * d != k:
                out.append(k // d)
        d += 1
    return sorted(out)


def rational_zeros(gens: Sequence[Poly]) -> tuple[list[tuple], bool]:
    """Rational common zeros of ``gens`` and whether they exhaust the zero set.

    Exhaustive means the local multiplicities of the rational zeros add up
    to the dimension of the quotient ring.  The multiplicity at ``p`` is the
    dimension of the joint generalized eigenspace of the multiplication
    operators ``z_i`` for the eigenvalues ``p_i``.
    """
    gens = tuple(gens)
    n = gens[0].nvars
    gb = groebner(gens, DEGREVLEX)
    basis = quotient_basis(gb)
    total = len(basis)
    candidates = [rational_roots(minimal_polynomial(gb, i).poly, i) for i in range(n)]
    zeros = [pt for pt in product(*candidates) if all(not g.evaluate(pt) for g in gens)]
    mats = [multiplication_matrix(gb, Poly.var(n, i), basis) for i in range(n)]
    mult = 0
    for pt in zeros:
        stacked = []
        for i in range(n):
            shifted = [[m - (pt[i] if r == c else 0) for c, m in enumerate(row)] for r, row in enumerate(mats[i])]
            stacked.extend(_mat_power(shifted, total))
        mult += total - rank(stacked)
    return zeros, mult == total


def _mat_power(a: list, k: int) -> list:
    size = len(a)
    result = [[Fraction(int(r == c)) for c in range(size)] for r in range(size)]
    base = a
    while k:
        if k & 1:
            result = matmul(result, base, Fraction(0))
        base = matmul(base, base, Fraction(0))
        k >>= 1
    return result


def residue_at_rational_points(q: ResidueQuery) -> Fraction:
    """Sum of local residues over rational zeros; errors if some zero is irrational."""
    zeros, complete = rational_zeros(q.powered())
    if not complete:
        raise NonRationalPointError("some common zeros are not rational; use the total residue")
    return sum((residue_local(ResidueQuery(q.numerator, q.denominators, pt)) for pt in zeros), Fraction(0))


# -- numeric oracle ----------------------------------------------------------

def contour_oracle_1d(h: Poly, g: Poly, s: int, x: float, radius: float, samples: int = 512) -> float:
    """``(1/2 pi i)`` times the integral of ``h/g^s`` over the circle ``|z - x| = radius``.

    Trapezoidal rule; the caller must make sure no other zero of ``g`` lies
    within ``radius`` of ``x``.  Returns the real part.
    """
    hc = [float(c) for c in univariate_coefficients(h, 0)]
    gc = [float(c) for c in univariate_coefficients(g, 0)]
    theta = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    w = radius * np.exp(1j * theta)
    z = x + w
    hv = np.polyval(hc[::-1], z)
    gv = np.polyval(gc[::-1], z)
    # dz = i w dtheta, and 1/(2 pi i) * i * (2 pi / samples) = 1 / samples
    val = np.sum(hv / gv ** s * w) / samples
    return float(val.real)
