"""The dg category of matrix factorizations of a superpotential.

Objects are pairs of square polynomial matrices ``(D12, D21)`` with
``D12 D21 = D21 D12 = f * 1``.  Morphisms are parity-homogeneous block
matrices; only the two nonzero blocks are stored:

    even:  [[X, 0], [0, Y]]      (X = Phi11, Y = Phi22)
    odd:   [[0, X], [Y, 0]]      (X = Phi12, Y = Phi21)

Each block of a morphism ``D' -> D''`` has ``rank(D'')`` rows and
``rank(D')`` columns.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg import matmul
from .polyring import DimensionError, Poly, normal_form
from .residue import CriticalLocus, critical_locus


class NotAFactorizationError(ValueError):
    pass


class ObjectMismatchError(ValueError):
    pass


class DegenerateChartError(ValueError):
    pass


Matrix = tuple  # tuple of row tuples of Poly


def as_matrix(rows: Sequence[Sequence[Poly]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def zero_matrix(nvars: int, rows: int, cols: int) -> Matrix:
    z = Poly.zero(nvars)
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def identity_matrix(nvars: int, k: int) -> Matrix:
    one, z = Poly.constant(nvars, 1), Poly.zero(nvars)
    return tuple(tuple(one if r == c else z for c in range(k)) for r in range(k))


def mat_mul(a: Matrix, b: Matrix, nvars: int) -> Matrix:
    return as_matrix(matmul(a, b, Poly.zero(nvars)))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(x.scale(c) for x in r) for r in a)


def mat_map(fn, a: Matrix) -> Matrix:
    return tuple(tuple(fn(x) for x in r) for r in a)


def trace(a: Matrix, nvars: int) -> Poly:
    out = Poly.zero(nvars)
    for i in range(len(a)):
        out = out + a[i][i]
    return out


def block_product(pa: int, xa, ya, pb: int, xb, yb, mul):
    """Blocks of the product of two parity-homogeneous block matrices."""
    if pa == 0:
        return mul(xa, xb), mul(ya, yb)
    return mul(xa, yb), mul(ya, xb)


@dataclass(frozen=True, eq=False)
class Superpotential:
    """A polynomial with isolated critical points.

    Isolatedness is checked on first access to the critical locus.  Whether
    0 is the only critical value cannot be decided over Q; the sufficient
    check that ``f`` is nilpotent in the Milnor algebra is run and a warning
    is issued when it fails.
    """

    f: Poly

    @property
    def nvars(self) -> int:
        return self.f.nvars

    def __eq__(self, other):
        return isinstance(other, Superpotential) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    @cached_property
    def critical(self) -> CriticalLocus:
        locus = critical_locus(self.f)
        if not _nilpotent_in_quotient(self.f, locus):
            warnings.warn(f"{self.f} is not nilpotent in its Milnor algebra: "
                          "nonzero critical values are likely", stacklevel=2)
        return locus

    @property
    def milnor_number(self) -> int:
        return self.critical.milnor_number

    @cached_property
    def jacobian(self) -> tuple:
        return tuple(self.f.partial(i) for i in range(self.nvars))

    def check_critical_values(self, points) -> None:
        """Verify ``f(x) = 0`` at user-supplied rational critical points."""
        for pt in points:
            if any(g.evaluate(pt) for g in self.jacobian):
                raise ValueError(f"{pt} is not a critical point of {self.f}")
            if self.f.evaluate(pt):
                raise ValueError(f"critical value f({pt}) = {self.f.evaluate(pt)} is nonzero")


def _nilpotent_in_quotient(f: Poly, locus: CriticalLocus) -> bool:
    power = Poly.constant(f.nvars, 1)
    r = normal_form(f, locus.gb)[0]
    for _ in range(max(locus.milnor_number, 1)):
        power = normal_form(power * r, locus.gb)[0]
    return not power


@dataclass(frozen=True, eq=False)
class MatrixFactorization:
    potential: Superpotential
    d12: Matrix
    d21: Matrix
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "d12", as_matrix(self.d12))
        object.__setattr__(self, "d21", as_matrix(self.d21))
        k = len(self.d12)
        for m in (self.d12, self.d21):
            if len(m) != k or any(len(r) != k for r in m):
                raise NotAFactorizationError("D12 and D21 must be square of equal size")
        n = self.potential.nvars
        f = self.potential.f
        for label, prod in (("D12*D21", mat_mul(self.d12, self.d21, n)), ("D21*D12", mat_mul(self.d21, self.d12, n))):
            for r in range(k):
                for c in range(k):
                    want = f if r == c else Poly.zero(n)
                    if prod[r][c] != want:
                        raise NotAFactorizationError(
                            f"D^2 = f*1 failed: {label} entry ({r + 1},{c + 1}) is {prod[r][c]}, expected {want}")

    @property
    def k(self) -> int:
        return len(self.d12)

    @property
    def nvars(self) -> int:
        return self.potential.nvars

    def __eq__(self, other):
        return (isinstance(other, MatrixFactorization) and self.potential == other.potential
                and self.d12 == other.d12 and self.d21 == other.d21)

    def __hash__(self):
        return hash((self.potential, self.d12, self.d21))

    def as_morphism(self) -> "Morphism":
        """``D`` itself as an odd endomorphism."""
        return Morphism(self, self, 1, self.d12, self.d21)

    def full(self) -> Matrix:
        return self.as_morphism().full()

    def __repr__(self):
        label = self.name or "MF"
        return f"<{label} rank {self.k} of {self.potential.f}>"


def make_factorization(f: Superpotential | Poly, d12, d21, name: str | None = None) -> MatrixFactorization:
    if isinstance(f, Poly):
        f = Superpotential(f)
    return MatrixFactorization(f, d12, d21, name)


def koszul_factorization(f: Superpotential | Poly, pairs: Sequence[tuple[Poly, Poly]],
                         name: str | None = None) -> MatrixFactorization:
    """Tensor product of the rank-one factorizations ``(u_i, v_i)``, left to right.

    Each step maps ``(P, Q)`` to ``([[P, u], [-v, Q]], [[Q, -u], [v, P]])``.
    """
    if isinstance(f, Poly):
        f = Superpotential(f)
    n = f.nvars
    total = Poly.zero(n)
    for u, v in pairs:
        total = total + u * v
    if total != f.f:
        raise NotAFactorizationError(f"sum of u_i*v_i is {total}, not {f.f}")
    (u, v), rest = pairs[0], pairs[1:]
    p, q = ((u,),), ((v,),)
    for u, v in rest:
        k = len(p)
        eye = identity_matrix(n, k)
        ue, ve = mat_map(lambda x: x * u, eye), mat_map(lambda x: x * v, eye)
        new_p = tuple(p[r] + ue[r] for r in range(k)) + tuple(
            tuple(-x for x in ve[r]) + q[r] for r in range(k))
        new_q = tuple(q[r] + tuple(-x for x in ue[r]) for r in range(k)) + tuple(
            ve[r] + p[r] for r in range(k))
        p, q = new_p, new_q
    return MatrixFactorization(f, p, q, name)


@dataclass(frozen=True, eq=False)
class Morphism:
    source: MatrixFactorization
    target: MatrixFactorization
    parity: int
    x: Matrix
    y: Matrix

    def __post_init__(self):
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 (even) or 1 (odd)")
        object.__setattr__(self, "x", as_matrix(self.x))
        object.__setattr__(self, "y", as_matrix(self.y))
        rows, cols = self.target.k, self.source.k
        for blk in (self.x, self.y):
            if len(blk) != rows or any(len(r) != cols for r in blk):
                raise ValueError(f"blocks must be {rows}x{cols}")
        if self.source.potential != self.target.potential:
            raise ObjectMismatchError("source and target factor different superpotentials")

    @property
    def nvars(self) -> int:
        return self.source.nvars

    def blocks(self) -> dict:
        if self.parity == 0:
            return {"11": self.x, "22": self.y}
        return {"12": self.x, "21": self.y}

    def __eq__(self, other):
        return (isinstance(other, Morphism) and self.parity == other.parity and self.source == other.source
                and self.target == other.target and self.x == other.x and self.y == other.y)

    def __hash__(self):
        return hash((self.parity, self.source, self.target, self.x, self.y))

    def __repr__(self):
        return f"Morphism({'odd' if self.parity else 'even'}, {self.source!r} -> {self.target!r})"

    def is_zero(self) -> bool:
        return not any(e for blk in (self.x, self.y) for r in blk for e in r)

    def _same_space(self, other: "Morphism"):
        if (self.source, self.target, self.parity) != (other.source, other.target, other.parity):
            raise ObjectMismatchError("morphisms live in different spaces")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._same_space(other)
        return Morphism(self.source, self.target, self.parity, mat_add(self.x, other.x), mat_add(self.y, other.y))

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + other.scale(-1)

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def scale(self, c) -> "Morphism":
        return Morphism(self.source, self.target, self.parity, mat_scale(c, self.x), mat_scale(c, self.y))

    def map_entries(self, fn) -> "Morphism":
        return Morphism(self.source, self.target, self.parity, mat_map(fn, self.x), mat_map(fn, self.y))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def full(self) -> Matrix:
        """The full ``2l x 2k`` block matrix."""
        n = self.nvars
        rows, cols = self.target.k, self.source.k
        z = zero_matrix(n, rows, cols)
        if self.parity == 0:
            top, bottom = (self.x, z), (z, self.y)
        else:
            top, bottom = (z, self.x), (self.y, z)
        return tuple(top[0][r] + top[1][r] for r in range(rows)) + tuple(
            bottom[0][r] + bottom[1][r] for r in range(rows))

    @classmethod
    def from_full(cls, source, target, mat) -> "Morphism":
        """Split a full block matrix; raises if it is not parity-homogeneous."""
        l, k = target.k, source.k
        mat = as_matrix(mat)
        b11 = tuple(r[:k] for r in mat[:l])
        b12 = tuple(r[k:] for r in mat[:l])
        b21 = tuple(r[:k] for r in mat[l:])
        b22 = tuple(r[k:] for r in mat[l:])
        nonzero = lambda b: any(e for r in b for e in r)
        if not (nonzero(b12) or nonzero(b21)):
            return cls(source, target, 0, b11, b22)
        if not (nonzero(b11) or nonzero(b22)):
            return cls(source, target, 1, b12, b21)
        raise ValueError("matrix is not parity-homogeneous")


def identity(d: MatrixFactorization) -> Morphism:
    eye = identity_matrix(d.nvars, d.k)
    return Morphism(d, d, 0, eye, eye)


def zero_morphism(source: MatrixFactorization, target: MatrixFactorization, parity: int) -> Morphism:
    z = zero_matrix(source.nvars, target.k, source.k)
    return Morphism(source, target, parity, z, z)


def compose(psi: Morphism, phi: Morphism) -> Morphism:
    """``psi o phi`` (apply ``phi`` first)."""
    if phi.target != psi.source:
        raise ObjectMismatchError("cannot compose: target of the first is not the source of the second")
    n = phi.nvars
    mul = lambda a, b: mat_mul(a, b, n)
    x, y = block_product(psi.parity, psi.x, psi.y, phi.parity, phi.x, phi.y, mul)
    return Morphism(phi.source, psi.target, psi.parity ^ phi.parity, x, y)


def delta(phi: Morphism) -> Morphism:
    """``D'' Phi - (-1)^|Phi| Phi D'``."""
    left = compose(phi.target.as_morphism(), phi)
    right = compose(phi, phi.source.as_morphism())
    return left - right if phi.parity == 0 else left + right


def supertrace(phi: Morphism) -> Poly:
    if phi.source != phi.target:
        raise ObjectMismatchError("supertrace needs an endomorphism")
    n = phi.nvars
    if phi.parity:
        return Poly.zero(n)
    return trace(phi.x, n) - trace(phi.y, n)


def d_partial(obj: MatrixFactorization | Morphism, i: int) -> Morphism:
    """Entrywise ``d/dz_i``; a factorization is differentiated as its odd operator ``D``."""
    m = obj.as_morphism() if isinstance(obj, MatrixFactorization) else obj
    if not 0 <= i < m.nvars:
        raise IndexError(f"variable index {i} out of range")
    return m.map_entries(lambda p: p.partial(i))


@dataclass(frozen=True)
class RationalMatrix:
    """``numerator / denominator`` with a polynomial denominator nonvanishing on the chart."""

    numerator: Morphism
    denominator: Poly


def local_contraction(d: MatrixFactorization, i: int) -> RationalMatrix:
    """``h = d_i D / d_i f`` on the chart ``d_i f != 0``; checks ``D h + h D = 1``."""
    df = d.potential.f.partial(i)
    if not df:
        raise DegenerateChartError(f"d f / d z{i + 1} vanishes identically")
    num = d_partial(d, i)
    dm = d.as_morphism()
    lhs = compose(dm, num) + compose(num, dm)
    want = identity(d).map_entries(lambda p: p * df)
    if lhs != want:
        raise NotAFactorizationError("contraction identity D h + h D = 1 failed")
    return RationalMatrix(num, df)
