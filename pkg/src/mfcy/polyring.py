"""Exact multivariate polynomials over the rationals.

Polynomials are immutable maps from exponent tuples to nonzero ``Fraction``
coefficients.  The module also provides monomial orders, division with
cofactor tracking, Buchberger's algorithm with a cofactor matrix, quotient
(staircase) bases of zero-dimensional ideals and univariate eliminants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from operator import add
from typing import Iterable, Mapping, Sequence

Scalar = Fraction
Monomial = tuple


class DimensionError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


class NotAUnitError(ValueError):
    pass


class NonIsolatedError(ValueError):
    """The ideal is not zero-dimensional (infinite staircase)."""


def as_scalar(c) -> Fraction | int:
    """Exact coefficient; integral values are kept as ``int`` since int arithmetic is much cheaper."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, float):
        raise TypeError("floating point coefficients are not accepted")
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise DimensionError(f"monomial {m} does not have {nvars} exponents")
                c = as_scalar(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        # trusted constructor: terms already normalized
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Poly":
        c = as_scalar(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """The variable ``z_{i+1}`` (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "Poly":
        c = as_scalar(c)
        return cls._raw(len(exps), {tuple(exps): c} if c else {})

    # -- basic protocol ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        out: dict = {}
        get = out.get
        right = list(other.terms.items())
        for m1, c1 in self.terms.items():
            for m2, c2 in right:
                m = tuple(map(add, m1, m2))
                s = get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw(self.nvars, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {m: c * v for m, v in self.terms.items()})

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def low_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(m) for m in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def truncate(self, degree_bound: int) -> "Poly":
        """Drop all terms of total degree above ``degree_bound``."""
        return Poly._raw(self.nvars, {m: c for m, c in self.terms.items() if sum(m) <= degree_bound})

    def partial(self, i: int) -> "Poly":
        """Formal derivative with respect to the variable of 0-based index ``i``."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Poly._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def evaluate_complex(self, point: Sequence[complex]) -> complex:
        total = 0j
        for m, c in self.terms.items():
            v = complex(float(c))
            for x, e in zip(point, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def compose(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``z_i -> images[i]``; the images share one ring."""
        if len(images) != self.nvars:
            raise DimensionError("need one image per variable")
        target = images[0].nvars if images else 0
        result = Poly.zero(target)
        powers: dict = {}
        for m, c in self.terms.items():
            t = Poly.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    t = t * powers[key]
            result = result + t
        return result

    def translate(self, point: Sequence) -> "Poly":
        """Return ``p(z + point)``, moving ``point`` to the origin."""
        n = self.nvars
        images = [Poly.var(n, i) + Fraction(point[i]) for i in range(n)]
        return self.compose(images)

    def embed(self, nvars: int, offset: int = 0) -> "Poly":
        """View ``self`` inside a larger ring, placing its variables at ``offset``."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * nvars
            e[offset:offset + self.nvars] = m
            out[tuple(e)] = c
        return Poly._raw(nvars, out)

    def leading_monomial(self, order: "MonomialOrder") -> tuple:
        return max(self.terms, key=order.key)

    def leading_term(self, order: "MonomialOrder") -> tuple[tuple, Fraction]:
        m = self.leading_monomial(order)
        return m, self.terms[m]

    def monic(self, order: "MonomialOrder") -> "Poly":
        _, c = self.leading_term(order)
        return self.scale(Fraction(1) / c)

    def sorted_terms(self, order: "MonomialOrder" | None = None) -> list[tuple[tuple, Fraction]]:
        order = order or DEGREVLEX
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)


# -- free helpers (the contract-level names) ---------------------------------

def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def scale(c, p: Poly) -> Poly:
    return p.scale(c)


def partial_derivative(p: Poly, i: int) -> Poly:
    return p.partial(i)


def coefficient_of(p: Poly, m: Sequence[int]) -> Fraction:
    return p.coefficient(m)


def variables(nvars: int) -> list[Poly]:
    return [Poly.var(nvars, i) for i in range(nvars)]


def truncated_inverse(u: Poly, degree_bound: int) -> Poly:
    """Power-series inverse of a unit, correct through total degree ``degree_bound``."""
    c = u.constant_term()
    if not c:
        raise NotAUnitError("constant term is zero")
    inv_c = Fraction(1) / c
    # u = c (1 - w), 1/u = c^{-1} (1 + w + w^2 + ...)
    w = (Poly.constant(u.nvars, 1) - u.scale(inv_c))
    result = Poly.constant(u.nvars, 1)
    power = Poly.constant(u.nvars, 1)
    lo = w.low_degree()
    if lo > 0:
        for _ in range(degree_bound // lo):
            power = (power * w).truncate(degree_bound)
            if not power:
                break
            result = result + power
    return result.scale(inv_c)


# -- monomial orders ---------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """A term order.

    ``kind`` is one of ``degrevlex``, ``lex`` or ``block``.  ``perm`` lists
    variable indices from most to least significant.  ``blocks`` (block
    orders only) gives consecutive block sizes along ``perm``; each block is
    compared by degrevlex, blocks lexicographically.
    """

    kind: str = "degrevlex"
    perm: tuple | None = None
    blocks: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and not self.blocks:
            raise ValueError("block order needs block sizes")

    def _permuted(self, m):
        if self.perm is None:
            return m
        return tuple(m[i] for i in self.perm)

    def key(self, m):
        m = self._permuted(m)
        if self.kind == "lex":
            return m
        if self.kind == "degrevlex":
            return (sum(m), tuple(-e for e in reversed(m)))
        key = []
        start = 0
        for size in self.blocks:
            part = m[start:start + size]
            key.append((sum(part), tuple(-e for e in reversed(part))))
            start += size
        return tuple(key)


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(y - x for x, y in zip(b, a))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# -- division ----------------------------------------------------------------

def divide(p: Poly, divisors: Sequence[Poly], order: MonomialOrder = DEGREVLEX) -> tuple[Poly, list[Poly]]:
    """Multivariate division: ``p = remainder + sum(q_i * divisors[i])``.

    No term of the remainder is divisible by a leading monomial of a divisor.
    """
    n = p.nvars
    leads = []
    for g in divisors:
        if g.nvars != n:
            raise DimensionError(f"{n} vs {g.nvars} variables")
        leads.append(g.leading_term(order) if g else None)
    quotients = [dict() for _ in divisors]
    rem: dict = {}
    work = dict(p.terms)
    key = order.key
    while work:
        m = max(work, key=key)
        c = work[m]
        for idx, lt in enumerate(leads):
            if lt is not None and _divides(lt[0], m):
                qm = _mono_div(m, lt[0])
                qc = Fraction(c) / lt[1]
                quotients[idx][qm] = quotients[idx].get(qm, 0) + qc
                for gm, gc in divisors[idx].terms.items():
                    t = tuple(a + b for a, b in zip(gm, qm))
                    v = work.get(t, 0) - qc * gc
                    if v:
                        work[t] = v
                    else:
                        work.pop(t, None)
                break
        else:
            rem[m] = c
            del work[m]
    qs = [Poly(n, q) for q in quotients]
    return Poly._raw(n, rem), qs


def exact_quotient(p: Poly, q: Poly) -> Poly:
    """``p / q`` when ``q`` divides ``p``; raises otherwise."""
    r, (quo,) = divide(p, [q])
    if r:
        raise ArithmeticError("inexact polynomial division")
    return quo


# -- Groebner bases ----------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis with cofactors.

    ``cofactors[k][j]`` is the coefficient of ``inputs[j]`` in the expression
    of ``generators[k]``.
    """

    generators: tuple
    cofactors: tuple
    order: MonomialOrder
    inputs: tuple
    _leads: tuple = field(default=(), compare=False, repr=False)

    @property
    def nvars(self) -> int:
        return self.inputs[0].nvars

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.generators)


def _vec_sub(u: list, v: list, scale_poly: Poly | None = None) -> list:
    if scale_poly is None:
        return [a - b for a, b in zip(u, v)]
    return [a - scale_poly * b for a, b in zip(u, v)]


def groebner(gens: Sequence[Poly], order: MonomialOrder = DEGREVLEX) -> GroebnerBasis:
    """Buchberger's algorithm with the normal selection strategy.

    Pairs are selected by smallest lcm of leading monomials, ties broken by
    (later index, earlier index) of the basis elements.  The result is
    auto-reduced and monic, so it is canonical for the ideal and order.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].nvars
    for g in gens:
        if g.nvars != n:
            raise DimensionError(f"{n} vs {g.nvars} variables")
    m = len(gens)
    zero = Poly.zero(n)
    one = Poly.constant(n, 1)

    basis: list[Poly] = []
    cof: list[list[Poly]] = []
    for j, g in enumerate(gens):
        if g:
            basis.append(g)
            cof.append([one if k == j else zero for k in range(m)])
    if not basis:
        return GroebnerBasis((), (), order, tuple(gens))

    def reduce_tracked(p: Poly, pc: list) -> tuple[Poly, list]:
        r, qs = divide(p, basis, order)
        pc = list(pc)
        for q, c in zip(qs, cof):
            if q:
                pc = _vec_sub(pc, c, q)
        return r, pc

    leads = [b.leading_term(order) for b in basis]
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    key = order.key

    def pair_key(pr):
        i, j = pr
        return (key(_lcm(leads[i][0], leads[j][0])), j, i)

    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        mi, ci = leads[i]
        mj, cj = leads[j]
        lcm = _lcm(mi, mj)
        if all(a == 0 or b == 0 for a, b in zip(mi, mj)):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        ti = Poly.monomial(_mono_div(lcm, mi), Fraction(1) / ci)
        tj = Poly.monomial(_mono_div(lcm, mj), Fraction(1) / cj)
        s = ti * basis[i] - tj * basis[j]
        sc = [ti * a - tj * b for a, b in zip(cof[i], cof[j])]
        r, rc = reduce_tracked(s, sc)
        if r:
            basis.append(r)
            cof.append(rc)
            leads.append(r.leading_term(order))
            k = len(basis) - 1
            pairs.extend((a, k) for a in range(k))

    # minimalize: keep an element iff no kept leading monomial divides its own
    minimal: list[int] = []
    for a in sorted(range(len(basis)), key=lambda a: (key(leads[a][0]), a)):
        if not any(_divides(leads[b][0], leads[a][0]) for b in minimal):
            minimal.append(a)
    basis = [basis[a] for a in minimal]
    cof = [cof[a] for a in minimal]

    # inter-reduce and make monic
    reduced_basis: list[Poly] = []
    reduced_cof: list[list[Poly]] = []
    for a in range(len(basis)):
        others = [basis[b] for b in range(len(basis)) if b != a]
        other_cof = [cof[b] for b in range(len(basis)) if b != a]
        lt_m, lt_c = basis[a].leading_term(order)
        tail = basis[a] - Poly.monomial(lt_m, lt_c)
        r, qs = divide(tail, others, order)
        p = r + Poly.monomial(lt_m, lt_c)
        pc = list(cof[a])
        for q, c in zip(qs, other_cof):
            if q:
                pc = _vec_sub(pc, c, q)
        inv = Fraction(1) / lt_c
        reduced_basis.append(p.scale(inv))
        reduced_cof.append([c.scale(inv) for c in pc])
    order_idx = sorted(range(len(reduced_basis)), key=lambda a: key(reduced_basis[a].leading_monomial(order)))
    return GroebnerBasis(
        tuple(reduced_basis[a] for a in order_idx),
        tuple(tuple(reduced_cof[a]) for a in order_idx),
        order,
        tuple(gens),
    )


def normal_form(p: Poly, gb: GroebnerBasis) -> tuple[Poly, list[Poly]]:
    """Reduce ``p`` by the basis; cofactors refer to ``gb.generators``."""
    if gb.inputs and p.nvars != gb.nvars:
        raise DimensionError(f"{p.nvars} vs {gb.nvars} variables")
    if not gb.generators:
        return p, []
    return divide(p, gb.generators, gb.order)


def input_cofactors(gb: GroebnerBasis, basis_cofactors: Sequence[Poly]) -> list[Poly]:
    """Translate cofactors on ``gb.generators`` into cofactors on ``gb.inputs``."""
    n = gb.nvars
    out = [Poly.zero(n) for _ in gb.inputs]
    for q, row in zip(basis_cofactors, gb.cofactors):
        if q:
            out = [o + q * r for o, r in zip(out, row)]
    return out


def ideal_contains(p: Poly, gb: GroebnerBasis) -> bool:
    return not normal_form(p, gb)[0]


def quotient_basis(gb: GroebnerBasis) -> list[tuple]:
    """Standard monomials (not divisible by any leading monomial), in order."""
    n = gb.nvars
    leads = gb.leading_monomials()
    bounds = []
    for i in range(n):
        pure = [m[i] for m in leads if all(e == 0 for k, e in enumerate(m) if k != i) and m[i] > 0]
        if not pure and not any(not any(m) for m in leads):
            raise NonIsolatedError(f"no pure power of z{i + 1} among leading monomials")
        bounds.append(min(pure) if pure else 0)
    if any(not any(m) for m in leads):
        return []
    out = []
    for m in product(*(range(b) for b in bounds)):
        if not any(_divides(l, m) for l in leads):
            out.append(tuple(m))
    out.sort(key=gb.order.key)
    return out


def multiplication_matrix(gb: GroebnerBasis, p: Poly, basis: Sequence[tuple] | None = None) -> list[list[Fraction]]:
    """Matrix of multiplication by ``p`` on the quotient, columns = images of basis."""
    basis = list(basis) if basis is not None else quotient_basis(gb)
    index = {m: k for k, m in enumerate(basis)}
    size = len(basis)
    mat = [[Fraction(0)] * size for _ in range(size)]
    for col, b in enumerate(basis):
        r, _ = normal_form(p * Poly.monomial(b), gb)
        for m, c in r.terms.items():
            mat[index[m]][col] = c
    return mat


def coordinates(gb: GroebnerBasis, p: Poly, basis: Sequence[tuple]) -> list[Fraction]:
    r, _ = normal_form(p, gb)
    index = {m: k for k, m in enumerate(basis)}
    vec = [Fraction(0)] * len(basis)
    for m, c in r.terms.items():
        vec[index[m]] = c
    return vec


@dataclass(frozen=True)
class Eliminant:
    """Monic univariate ``chi(z_i)`` in the ideal, with ``chi = sum cofactors[j]*inputs[j]``."""

    variable: int
    poly: Poly
    cofactors: tuple


def minimal_polynomial(gb: GroebnerBasis, i: int) -> Eliminant:
    """Least-degree monic ``chi(z_i)`` in the ideal, by Krylov iteration in the quotient."""
    from .linalg import solve

    n = gb.nvars
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range")
    basis = quotient_basis(gb)
    zi = Poly.var(n, i)
    vectors = []
    power = Poly.constant(n, 1)
    while True:
        r, _ = normal_form(power, gb)
        vec = coordinates(gb, r, basis)
        if vectors:
            # solve sum a_k v_k = vec
            cols = [[v[row] for v in vectors] for row in range(len(basis))]
            sol = solve(cols, vec)
        else:
            sol = [] if not any(vec) else None
        if sol is not None:
            d = len(vectors)
            chi = Poly.monomial(tuple(d if k == i else 0 for k in range(n)))
            for k, a in enumerate(sol):
                if a:
                    chi = chi - Poly.monomial(tuple(k if t == i else 0 for t in range(n)), a)
            break
        vectors.append(vec)
        power = (power * zi)
        if len(vectors) > len(basis) + 1:
            raise ArithmeticError("Krylov iteration did not terminate")
    rem, qs = normal_form(chi, gb)
    assert not rem
    return Eliminant(i, chi, tuple(input_cofactors(gb, qs)))


def univariate_coefficients(p: Poly, i: int) -> list[Fraction]:
    """Coefficients of ``p`` viewed as a polynomial in ``z_i`` alone (low to high)."""
    deg = max(p.degree_in(i), 0)
    out = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        if any(e for k, e in enumerate(m) if k != i):
            raise ValueError("polynomial involves other variables")
        out[m[i]] += c
    return out


# -- string format -----------------------------------------------------------

class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at column {column}: {text!r}")
        self.text = text
        self.column = column


def default_names(nvars: int) -> list[str]:
    return [f"z{i + 1}" for i in range(nvars)]


def format_scalar(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly, names: Sequence[str] | None = None) -> str:
    """Render as ``3/2*z1^2*z2 - z2 + 1`` (degrevlex, highest term first)."""
    names = list(names) if names is not None else default_names(p.nvars)
    if not p.terms:
        return "0"
    pieces = []
    for m, c in p.sorted_terms(DEGREVLEX):
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else format_scalar(mag) + "*" + "*".join(factors)
        else:
            body = format_scalar(mag)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")


def parse_poly(text: str, names: Sequence[str] | int) -> Poly:
    """Parse the polynomial grammar; ``names`` is a list of variable names or a count.

    Accepted: sums of terms, each a product of rational coefficients,
    variables and ``var^k`` powers, e.g. ``-3/2*z1^2*z2 + z2 - 1``.
    Parenthesised sub-expressions are also accepted.
    """
    if isinstance(names, int):
        names = default_names(names)
    names = list(names)
    index = {nm: k for k, nm in enumerate(names)}
    n = len(names)
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        mt = _TOKEN.match(stripped, pos)
        if not mt or mt.end() == pos:
            raise PolyParseError("unexpected character", text, pos + 1)
        kind = mt.lastgroup
        tokens.append((kind, mt.group(kind), mt.start(kind) + 1))
        pos = mt.end()
    tokens.append(("end", "", len(stripped) + 1))
    state = {"i": 0}

    def peek():
        return tokens[state["i"]]

    def take():
        tok = tokens[state["i"]]
        state["i"] += 1
        return tok

    def expr() -> Poly:
        result = Poly.zero(n)
        sign = 1
        kind, val, col = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        result = result + term().scale(sign)
        while True:
            kind, val, col = peek()
            if kind == "op" and val in "+-":
                take()
                t = term()
                result = result + t if val == "+" else result - t
            else:
                return result

    def term() -> Poly:
        result = factor()
        while True:
            kind, val, col = peek()
            if kind == "op" and val == "*":
                take()
                result = result * factor()
            else:
                return result

    def factor() -> Poly:
        kind, val, col = take()
        if kind == "num":
            base = Poly.constant(n, Fraction(val))
        elif kind == "name":
            if val not in index:
                raise PolyParseError(f"unknown variable {val!r}", text, col)
            base = Poly.var(n, index[val])
        elif kind == "op" and val == "(":
            base = expr()
            k2, v2, c2 = take()
            if v2 != ")":
                raise PolyParseError("expected ')'", text, c2)
        elif kind == "op" and val == "-":
            return -factor()
        else:
            raise PolyParseError("expected a coefficient or variable", text, col)
        kind, val, col = peek()
        if kind == "op" and val == "^":
            take()
            k2, v2, c2 = take()
            if k2 != "num" or "/" in v2:
                raise PolyParseError("expected a non-negative integer exponent", text, c2)
            base = base ** int(v2)
        return base

    if not stripped.strip():
        raise PolyParseError("empty polynomial", text, 1)
    result = expr()
    kind, val, col = peek()
    if kind != "end":
        raise PolyParseError(f"unexpected {val!r}", text, col)
    return result


def parse_scalar(text: str) -> Fraction:
    text = str(text).strip()
    if not re.fullmatch(r"-?\d+(/\d+)?", text):
        raise ValueError(f"not an exact rational: {text!r}")
    value = Fraction(text)
    return value
