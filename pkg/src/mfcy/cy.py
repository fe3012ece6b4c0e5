"""Residue functionals on MF(f): the Kapustin-Li trace, its first correction and
the chain-level Calabi-Yau functional Theta, plus the induced pairing.

Theta on a chain ``Phi_l[...|Phi_1]`` is

    1/(n+l-1)!  sum_k (-1)^{k_1 eps_1 + ... + k_l eps_l}  sum_i (-1)^i
      sum_{r, r_i >= 1} r_1! ... r_n!  sum_{Lambda(r)}  sum_{S_n^i} sgn
      Res[ str(Phi_l d_{i(l)}D(l) d_{j..}D(l) ... Phi_1 d_{i(1)}D(1) d_{j..}D(1)) omega
           / (d_1 f)^{r_1+1} ... (d_i f)^{r_i} ... (d_n f)^{r_n+1} ]

where block ``s`` carries ``k_s`` of the ``j`` indices and the ``j`` sequence
is read in written order (block ``l`` first) for its sign.

The fast evaluator folds the sums over ``k``, ``Lambda(r)`` and ``S_n^i`` into
one supertrace over a Grassmann algebra: block ``s`` becomes
``Phi_s F_s G_s`` with ``F_s = sum_a t_a d_a D(s)`` (commuting ``t`` track
``r``) and ``G_s = sum_k ((-1)^eps_s E_s)^k``, ``E_s = sum_b e_b d_b D(s)``
(anticommuting ``e``).  The coefficient of ``t^r e_{[n] - i}`` collects exactly
the terms of the nested sum with the right permutation signs.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Sequence

from .hochschild import Chain, ChainSum, as_chain_sum
from .linalg import det, nullspace, rank, solve
from .mfcat import (
    MatrixFactorization,
    Morphism,
    ObjectMismatchError,
    Superpotential,
    compose,
    d_partial,
    delta,
    mat_add,
    mat_mul,
    mat_scale,
)
from .polyring import Poly, multiplication_matrix
from .residue import ResidueQuery, residue_local, residue_total

DEFAULT_BUDGET = 10 ** 7


class BudgetError(RuntimeError):
    def __init__(self, estimate: int, budget: int):
        super().__init__(f"estimated {estimate} terms exceeds the budget of {budget}")
        self.estimate = estimate
        self.budget = budget


class VolumeFormError(ValueError):
    pass


class NotACocycleError(ValueError):
    pass


# -- volume forms ------------------------------------------------------------

@dataclass(frozen=True)
class VolumeForm:
    """``Omega = omega dz_1 ... dz_n``."""

    omega: Poly

    def __post_init__(self):
        if not self.omega:
            raise VolumeFormError("omega must be nonzero")

    @classmethod
    def standard(cls, nvars: int) -> "VolumeForm":
        return cls(Poly.constant(nvars, 1))

    def check(self, potential: Superpotential) -> None:
        """Require omega to be a unit of the Milnor algebra."""
        crit = potential.critical
        if not crit.basis:
            return
        m = multiplication_matrix(crit.gb, self.omega, crit.basis)
        if det(m) == 0:
            raise VolumeFormError(f"omega = {self.omega} vanishes at a critical point of f")

    def check_points(self, points) -> None:
        for p in points:
            if self.omega.evaluate(p) == 0:
                warnings.warn(f"omega vanishes at {tuple(p)}", stacklevel=2)


def as_volume_form(omega, nvars: int, potential: Superpotential | None = None) -> VolumeForm:
    """Coerce to a volume form; a nonconstant omega is checked against ``potential``."""
    if omega is None:
        return VolumeForm.standard(nvars)
    vol = omega if isinstance(omega, VolumeForm) else VolumeForm(omega)
    if potential is not None and not vol.omega.is_constant():
        _checked_unit(vol, potential)
    return vol


@lru_cache(maxsize=64)
def _checked_unit(vol: VolumeForm, potential: Superpotential) -> bool:
    vol.check(potential)
    return True


# -- combinatorics -----------------------------------------------------------

def _perm_sign(seq: Sequence[int]) -> int:
    seq = list(seq)
    sign = 1
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                sign = -sign
    return sign


def compositions(total: int, parts: int) -> Iterator[tuple]:
    """Weak compositions of ``total`` into ``parts`` nonnegative parts, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class CombinatorialFrame:
    """Index sets of the nested sum for ``n`` variables and chain length ``l``.

    Indices are 1-based, as in the formula.
    """

    n: int
    l: int

    def k_compositions(self) -> Iterator[tuple]:
        return compositions(self.n - 1, self.l)

    def r_vectors(self, i: int) -> Iterator[tuple]:
        return (r for r in compositions(self.l, self.n) if r[i - 1] >= 1)

    def lambda_set(self, r: Sequence[int]) -> Iterator[tuple]:
        """Tuples ``(i(1), ..., i(l))`` with ``r_a`` copies of ``a``."""
        for t in product(range(1, self.n + 1), repeat=self.l):
            if all(t.count(a + 1) == r[a] for a in range(self.n)):
                yield t

    def s_set(self, i: int) -> Iterator[tuple[tuple, int]]:
        """Permutations of ``(1..n) - {i}`` with their signs."""
        rest = [a for a in range(1, self.n + 1) if a != i]
        for p in permutations(rest):
            yield p, _perm_sign(p)

    @staticmethod
    def lambda_size(r: Sequence[int]) -> int:
        out = math.factorial(sum(r))
        for x in r:
            out //= math.factorial(x)
        return out

    def term_count(self) -> int:
        """Number of residue terms in the fully enumerated nested sum."""
        n, l = self.n, self.l
        ks = math.comb(n + l - 2, l - 1)
        return ks * n * (n ** l - (n - 1) ** l) * math.factorial(n - 1)


def term_count(n: int, l: int) -> int:
    return CombinatorialFrame(n, l).term_count()


# -- residue dispatch --------------------------------------------------------

def _residue(numerator: Poly, jac: Sequence[Poly], powers: Sequence[int], mode: str, point) -> Fraction:
    if not numerator:
        return Fraction(0)
    dens = tuple(zip(jac, powers))
    if mode == "total":
        return residue_total(ResidueQuery(numerator, dens))
    if mode == "point":
        if point is None:
            raise ValueError("point mode needs a point")
        return residue_local(ResidueQuery(numerator, dens, tuple(point)))
    raise ValueError(f"unknown mode {mode!r}")


def _check_mode(potential: Superpotential, mode: str, point):
    if mode == "point":
        if point is None:
            raise ValueError("point mode needs a point")
        for g in potential.jacobian:
            if g.evaluate(point):
                raise ValueError(f"{tuple(point)} is not a critical point of f")


def _full_str(mat, k: int) -> Poly:
    """Supertrace of a full ``2k x 2k`` matrix."""
    out = mat[0][0] - mat[0][0]
    for a in range(k):
        out = out + mat[a][a] - mat[k + a][k + a]
    return out


@lru_cache(maxsize=256)
def _partials_full(d: MatrixFactorization) -> tuple:
    return tuple(d_partial(d, a).full() for a in range(d.nvars))


def _mm(a, b, nvars):
    return mat_mul(a, b, nvars)


# -- Kapustin-Li trace -------------------------------------------------------

def theta_kl(phi: Morphism, omega=None, mode: str = "total", point=None) -> Fraction:
    """``(1/n!) sum_sigma sgn(sigma) Res[str(d_s1 D ... d_sn D Phi) omega / (d_1 f ... d_n f)]``."""
    d = phi.source
    if phi.target != d:
        raise ObjectMismatchError("theta_kl needs an endomorphism")
    n = d.nvars
    vol = as_volume_form(omega, n, d.potential)
    _check_mode(d.potential, mode, point)
    parts = _partials_full(d)
    pf = phi.full()
    num = Poly.zero(n)
    for sigma in permutations(range(n)):
        m = pf
        for a in reversed(sigma):
            m = _mm(parts[a], m, n)
        num = num + _full_str(m, d.k).scale(_perm_sign(sigma))
    jac = d.potential.jacobian
    return _residue(num * vol.omega, jac, (1,) * n, mode, point) / Fraction(math.factorial(n))


# -- the first correction ----------------------------------------------------

def theta_tilde(psi2: Morphism, psi1: Morphism, omega=None, mode: str = "total", point=None) -> Fraction:
    """The correction functional on ``Psi'' (x) Psi'`` with ``Psi': D' -> D''`` and ``Psi'': D'' -> D'``.

    Each wedge power is expanded over one permutation of all ``n`` slots with
    ``d_sigma(1) ... d_sigma(n)`` in written order.
    """
    d1, d2 = psi1.source, psi1.target
    if psi2.source != d2 or psi2.target != d1:
        raise ObjectMismatchError("theta_tilde needs Psi': D' -> D'' and Psi'': D'' -> D'")
    n = d1.nvars
    vol = as_volume_form(omega, n, d1.potential)
    _check_mode(d1.potential, mode, point)
    p1, p2 = _partials_full(d1), _partials_full(d2)
    f1, f2 = psi1.full(), psi2.full()
    jac = d1.potential.jacobian
    total = Fraction(0)
    for j in range(n):
        num = Poly.zero(n)
        for k in range(1, n + 1):
            outer = -1 if (k - 1) * (psi1.parity + 1) % 2 else 1
            inner = -1 if (k - 1) % 2 else 1
            for sigma in permutations(range(n)):
                sg = _perm_sign(sigma) * outer
                # Psi'' (dD'')^k Psi' d_j D' (dD')^(n-k)
                m = f2
                for a in sigma[:k]:
                    m = _mm(m, p2[a], n)
                m = _mm(_mm(m, f1, n), p1[j], n)
                for a in sigma[k:]:
                    m = _mm(m, p1[a], n)
                term = _full_str(m, d1.k)
                # (-1)^(k-1) Psi'' d_j D'' (dD'')^(k-1) Psi' (dD')^(n-k+1)
                m = _mm(f2, p2[j], n)
                for a in sigma[:k - 1]:
                    m = _mm(m, p2[a], n)
                m = _mm(m, f1, n)
                for a in sigma[k - 1:]:
                    m = _mm(m, p1[a], n)
                term = term + _full_str(m, d1.k).scale(inner)
                num = num + term.scale(sg)
        powers = tuple(2 if a == j else 1 for a in range(n))
        total += _residue(num * vol.omega, jac, powers, mode, point)
    sign = -1 if n % 2 else 1
    return Fraction(total * sign, math.factorial(n + 1))


# -- Theta: Grassmann evaluation ---------------------------------------------

def _merge_sign(m1: int, m2: int) -> int:
    """Sign of ``e_{m1} e_{m2}`` relative to the sorted monomial (disjoint masks)."""
    count = 0
    b = m2
    while b:
        low = b & -b
        count += bin(m1 & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if count % 2 else 1


def _gmul(a: dict, b: dict, nvars: int, max_pop: int) -> dict:
    out: dict = {}
    for m1, x in a.items():
        for m2, y in b.items():
            if m1 & m2:
                continue
            m = m1 | m2
            if bin(m).count("1") > max_pop:
                continue
            prod = _mm(x, y, nvars)
            if _merge_sign(m1, m2) < 0:
                prod = mat_scale(-1, prod)
            out[m] = mat_add(out[m], prod) if m in out else prod
    return out


def _gstr_product(a: dict, b: dict, k: int, masks: Sequence[int], nvars: int) -> dict:
    """``str`` of the mask components of ``a b`` listed in ``masks``; only diagonals are formed."""
    out: dict = {}
    zero = Poly.zero(nvars)
    for m1, x in a.items():
        for m2, y in b.items():
            if m1 & m2 or (m1 | m2) not in masks:
                continue
            acc = zero
            for row in range(len(x)):
                xr = x[row]
                diag = zero
                for col, xv in enumerate(xr):
                    if xv:
                        yv = y[col][row]
                        if yv:
                            diag = diag + xv * yv
                acc = acc + diag if row < k else acc - diag
            if _merge_sign(m1, m2) < 0:
                acc = -acc
            m = m1 | m2
            out[m] = out[m] + acc if m in out else acc
    return out


def _gadd(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, x in b.items():
        out[m] = mat_add(out[m], x) if m in out else x
    return out


def _lift(mat, total_vars: int) -> tuple:
    return tuple(tuple(p.embed(total_vars) for p in row) for row in mat)


def _block_factor(phi_full, d: MatrixFactorization, eps: int, n: int) -> dict:
    """``Phi F G`` for one block, over the ring in ``z_1..z_n, t_1..t_n``."""
    nn = 2 * n
    parts = [_lift(m, nn) for m in _partials_full(d)]
    size = 2 * d.k
    f_mat = None
    for a in range(n):
        t = Poly.var(nn, n + a)
        term = tuple(tuple(p * t for p in row) for row in parts[a])
        f_mat = term if f_mat is None else mat_add(f_mat, term)
    sgn = -1 if eps % 2 else 1
    e_mat = {1 << b: mat_scale(sgn, parts[b]) for b in range(n)}
    ident = tuple(tuple(Poly.constant(nn, int(r == c)) for c in range(size)) for r in range(size))
    g = {0: ident}
    power = {0: ident}
    for _ in range(1, n):
        power = _gmul(power, e_mat, nn, n - 1)
        g = _gadd(g, power)
    left = _mm(_lift(phi_full, nn), f_mat, nn)
    return {m: _mm(left, x, nn) for m, x in g.items()}


def theta_numerators(c: Chain) -> dict:
    """``{(i, r): numerator}`` with ``(-1)^i r!`` folded in (omega not yet applied).

    ``i`` is 1-based; ``r`` is the exponent vector of the ``t`` variables.
    """
    n = c.phi(1).nvars
    l = c.length
    nn = 2 * n
    blocks = [_block_factor(c.phi(s).full(), c.obj(s), c.eps(s), n) for s in range(l, 0, -1)]
    acc = blocks[0]
    for blk in blocks[1:-1]:
        acc = _gmul(acc, blk, nn, n - 1)
    k1 = c.obj(1).k
    full_mask = (1 << n) - 1
    wanted = [full_mask & ~(1 << (i - 1)) for i in range(1, n + 1)]
    if l == 1:
        strs = {m: _full_str(acc[m], k1) for m in wanted if m in acc}
    else:
        strs = _gstr_product(acc, blocks[-1], k1, wanted, nn)
    out: dict = {}
    for i in range(1, n + 1):
        s = strs.get(wanted[i - 1])
        if s is None:
            continue
        groups: dict = {}
        for mono, coeff in s.terms.items():
            r = mono[n:]
            if r[i - 1] < 1:
                continue
            groups.setdefault(r, {})[mono[:n]] = coeff
        sign = -1 if i % 2 else 1
        for r, terms in groups.items():
            weight = sign
            for x in r:
                weight *= math.factorial(x)
            out[(i, r)] = Poly(n, terms).scale(weight)
    return out


def _denominator_powers(i: int, r: Sequence[int]) -> tuple:
    return tuple(x if a == i - 1 else x + 1 for a, x in enumerate(r))


@dataclass(frozen=True)
class ThetaResult:
    value: Fraction
    term_count: int
    residue_calls: int


def evaluate_theta(c: Chain, omega=None, mode: str = "total", point=None,
                   budget: int | None = DEFAULT_BUDGET, threads: int = 1) -> ThetaResult:
    """Theta on one chain; the term-count estimate is checked before any work."""
    n = c.phi(1).nvars
    l = c.length
    count = term_count(n, l)
    if budget is not None and count > budget:
        raise BudgetError(count, budget)
    potential = c.obj(1).potential
    vol = as_volume_form(omega, n, potential)
    _check_mode(potential, mode, point)
    nums = theta_numerators(c)
    jac = potential.jacobian
    keys = sorted(nums)

    def one(key):
        i, r = key
        return _residue(nums[key] * vol.omega, jac, _denominator_powers(i, r), mode, point)

    if threads > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(one, keys))
    else:
        values = [one(k) for k in keys]
    total = Fraction(0)
    for v in values:  # fixed order
        total += v
    return ThetaResult(Fraction(total) / math.factorial(n + l - 1), count, len(keys))


def theta_main(c, omega=None, mode: str = "total", point=None,
               budget: int | None = DEFAULT_BUDGET, threads: int = 1) -> Fraction:
    """Theta on a chain or, by linearity, on a ``ChainSum``."""
    if isinstance(c, Chain):
        return evaluate_theta(c, omega, mode, point, budget, threads).value
    total = Fraction(0)
    for chain, coeff in as_chain_sum(c):
        total += coeff * evaluate_theta(chain, omega, mode, point, budget, threads).value
    return total


# -- Theta: literal enumeration (oracle) -------------------------------------

def theta_main_enumerative(c: Chain, omega=None, mode: str = "total", point=None) -> Fraction:
    """Theta by walking every index set of the nested sum; slow, for cross-checks."""
    n = c.phi(1).nvars
    l = c.length
    vol = as_volume_form(omega, n, c.obj(1).potential)
    frame = CombinatorialFrame(n, l)
    parts = {s: _partials_full(c.obj(s)) for s in range(1, l + 1)}
    phis = {s: c.phi(s).full() for s in range(1, l + 1)}
    eps = {s: c.eps(s) for s in range(1, l + 1)}
    k1 = c.obj(1).k
    jac = c.obj(1).potential.jacobian
    total = Fraction(0)
    for i in range(1, n + 1):
        for r in frame.r_vectors(i):
            weight = -1 if i % 2 else 1
            for x in r:
                weight *= math.factorial(x)
            num = Poly.zero(n)
            for ks in frame.k_compositions():  # ks[s-1] = k_s
                ksign = -1 if sum(ks[s - 1] * eps[s] for s in range(1, l + 1)) % 2 else 1
                for lam in frame.lambda_set(r):  # lam[s-1] = i(s)
                    for js, jsign in frame.s_set(i):
                        m = None
                        pos = 0
                        for s in range(l, 0, -1):
                            blk = _mm(phis[s], parts[s][lam[s - 1] - 1], n)
                            for j in js[pos:pos + ks[s - 1]]:
                                blk = _mm(blk, parts[s][j - 1], n)
                            pos += ks[s - 1]
                            m = blk if m is None else _mm(m, blk, n)
                        num = num + _full_str(m, k1).scale(ksign * jsign)
            total += weight * _residue(num * vol.omega, jac, _denominator_powers(i, r), mode, point)
    return Fraction(total) / math.factorial(n + l - 1)


def theta_one_variable(c: Chain, omega=None, mode: str = "total", point=None) -> Fraction:
    """``-Res[str(Phi_l D(l)' ... Phi_1 D(1)') omega / (f')^l]`` for ``n = 1``."""
    if c.phi(1).nvars != 1:
        raise ValueError("the closed form is for one variable")
    vol = as_volume_form(omega, 1, c.obj(1).potential)
    m = None
    for s in range(c.length, 0, -1):
        blk = _mm(c.phi(s).full(), d_partial(c.obj(s), 0).full(), 1)
        m = blk if m is None else _mm(m, blk, 1)
    num = _full_str(m, c.obj(1).k)
    fp = c.obj(1).potential.f.partial(0)
    return -_residue(num * vol.omega, (fp,), (c.length,), mode, point)


# -- pairing and nondegeneracy -----------------------------------------------

def is_cocycle(phi: Morphism) -> bool:
    return delta(phi).is_zero()


def pairing(a2: Morphism, a1: Morphism, omega=None, mode: str = "total", point=None) -> Fraction:
    """``Theta([a'' a'])`` for cocycles ``a': D' -> D''`` and ``a'': D'' -> D'``."""
    for name, a in (("a''", a2), ("a'", a1)):
        if not is_cocycle(a):
            raise NotACocycleError(f"{name} is not a cocycle")
    return theta_main(Chain((compose(a2, a1),)), omega, mode, point)


def gram_matrix(basis_a: Sequence[Morphism], basis_b: Sequence[Morphism], omega=None) -> list[list[Fraction]]:
    """``G[p][q] = pairing(basis_a[p], basis_b[q])``."""
    return [[pairing(a, b, omega) for b in basis_b] for a in basis_a]


def gram_rank(g: Sequence[Sequence[Fraction]]) -> int:
    return rank(g)


def _monomials_upto(nvars: int, bound: int) -> list[tuple]:
    out = []
    for d in range(bound + 1):
        out.extend(m for m in compositions(d, nvars))
    return out


def _elementary_morphisms(source, target, parity, bound) -> list[Morphism]:
    n = source.nvars
    zero = Poly.zero(n)
    out = []
    for blk in (0, 1):
        for r in range(target.k):
            for col in range(source.k):
                for mono in _monomials_upto(n, bound):
                    mat = [[zero] * source.k for _ in range(target.k)]
                    mat[r][col] = Poly.monomial(mono)
                    other = tuple(tuple(zero for _ in range(source.k)) for _ in range(target.k))
                    m = tuple(tuple(row) for row in mat)
                    x, y = (m, other) if blk == 0 else (other, m)
                    out.append(Morphism(source, target, parity, x, y))
    return out


def _coords(m: Morphism) -> dict:
    out = {}
    for label, blk in (("x", m.x), ("y", m.y)):
        for r, row in enumerate(blk):
            for c, p in enumerate(row):
                for mono, coeff in p.terms.items():
                    out[(label, r, c, mono)] = coeff
    return out


def _as_columns(vectors: Sequence[dict]) -> tuple[list, list[list[Fraction]]]:
    keys = sorted({k for v in vectors for k in v})
    index = {k: a for a, k in enumerate(keys)}
    mat = [[Fraction(0)] * len(vectors) for _ in keys]
    for col, v in enumerate(vectors):
        for k, c in v.items():
            mat[index[k]][col] = c
    return keys, mat


@dataclass(frozen=True)
class CoboundaryResult:
    """``witness`` solves ``delta(witness) = phi`` when found; otherwise none exists
    with entries of degree at most ``degree_bound``."""

    is_coboundary: bool
    witness: Morphism | None
    degree_bound: int

    def __bool__(self):
        return self.is_coboundary


def is_coboundary(phi: Morphism, degree_bound: int) -> CoboundaryResult:
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    basis = _elementary_morphisms(phi.source, phi.target, 1 - phi.parity, degree_bound)
    images = [_coords(delta(b)) for b in basis]
    target = _coords(phi)
    keys, mat = _as_columns(images + [target])
    rhs = [row[-1] for row in mat]
    lhs = [row[:-1] for row in mat]
    sol = solve(lhs, rhs) if keys else []
    if sol is None:
        return CoboundaryResult(False, None, degree_bound)
    witness = None
    for coeff, b in zip(sol, basis):
        if coeff:
            term = b.scale(coeff)
            witness = term if witness is None else witness + term
    if witness is None:
        witness = basis[0].scale(0)
    return CoboundaryResult(True, witness, degree_bound)


def cocycle_space(source: MatrixFactorization, target: MatrixFactorization, parity: int,
                  degree_bound: int) -> list[Morphism]:
    """A basis of all cocycles ``D' -> D''`` with entries of degree at most ``degree_bound``."""
    basis = _elementary_morphisms(source, target, parity, degree_bound)
    keys, mat = _as_columns([_coords(delta(b)) for b in basis])
    if keys:
        kernel = nullspace(mat)
    else:
        kernel = [[Fraction(int(a == b)) for b in range(len(basis))] for a in range(len(basis))]
    out = []
    for vec in kernel:
        m = None
        for coeff, b in zip(vec, basis):
            if coeff:
                term = b.scale(coeff)
                m = term if m is None else m + term
        if m is not None:
            out.append(m)
    return out


def _max_degree(m: Morphism) -> int:
    return max((p.total_degree() for blk in (m.x, m.y) for row in blk for p in row if p), default=0)


def cocycle_basis(source: MatrixFactorization, target: MatrixFactorization, parity: int,
                  degree_bound: int) -> list[Morphism]:
    """Cocycles of degree at most ``degree_bound`` whose classes are independent
    modulo coboundaries of the same degree range, lowest degree first."""
    cocycles = sorted(cocycle_space(source, target, parity, degree_bound), key=_max_degree)
    current = [_coords(delta(b)) for b in _elementary_morphisms(source, target, 1 - parity, degree_bound)]
    base_rank = rank(_as_columns(current)[1]) if current else 0
    chosen: list[Morphism] = []
    for z in cocycles:
        trial = current + [_coords(z)]
        r = rank(_as_columns(trial)[1])
        if r > base_rank:
            chosen.append(z)
            current, base_rank = trial, r
    return chosen
