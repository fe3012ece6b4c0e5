"""Standard test corpus and seeded random morphisms/chains."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .cy import cocycle_space
from .hochschild import Chain
from .mfcat import (
    MatrixFactorization,
    Morphism,
    Superpotential,
    koszul_factorization,
    make_factorization,
    zero_morphism,
)
from .polyring import Poly, variables


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    potential: Superpotential
    objects: tuple


def _power(a: int) -> str:
    return "z" if a == 1 else f"z^{a}"


def power_corpus(d: int, splits=None) -> CorpusEntry:
    """``f = z^d`` with the objects ``(z^a, z^(d-a))``, ``a`` in ``splits`` (default all)."""
    if splits is None:
        splits = range(1, d)
    (z,) = variables(1)
    f = Superpotential(z ** d)
    objs = tuple(make_factorization(f, ((z ** a,),), ((z ** (d - a),),), name=f"({_power(a)}, {_power(d - a)})") for a in splits)
    return CorpusEntry(f"z^{d}", f, objs)


def standard_corpus() -> list[CorpusEntry]:
    out = [power_corpus(3), power_corpus(4)]

    z1, z2 = variables(2)
    f = Superpotential(z1 ** 3 + z2 ** 3)
    out.append(CorpusEntry("z1^3 + z2^3", f, (
        koszul_factorization(f, [(z1, z1 ** 2), (z2, z2 ** 2)], name="K(z1, z2)"),
        koszul_factorization(f, [(z1 ** 2, z1), (z2, z2 ** 2)], name="K(z1^2, z2)"),
    )))

    x1, x2, x3 = variables(3)
    g = Superpotential(x1 ** 2 + x2 ** 2 + x3 ** 2)
    out.append(CorpusEntry("z1^2 + z2^2 + z3^2", g, (
        koszul_factorization(g, [(x1, x1), (x2, x2), (x3, x3)], name="K(z1, z2, z3)"),
    )))
    return out


def corpus_entry(name: str) -> CorpusEntry:
    for e in standard_corpus():
        if e.name == name:
            return e
    raise KeyError(name)


def _monomials(nvars: int, max_degree: int) -> list[tuple]:
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def random_poly(rng: random.Random, nvars: int, max_degree: int = 2, terms: int = 2,
                coeff_range: int = 3) -> Poly:
    monos = _monomials(nvars, max_degree)
    out = {}
    for _ in range(terms):
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            m = rng.choice(monos)
            out[m] = out.get(m, 0) + Fraction(c)
    return Poly(nvars, out)


def random_morphism(rng: random.Random, source: MatrixFactorization, target: MatrixFactorization,
                    parity: int | None = None, max_degree: int = 2, density: float = 0.6) -> Morphism:
    if parity is None:
        parity = rng.randint(0, 1)
    n = source.nvars

    def block():
        return tuple(tuple(random_poly(rng, n, max_degree) if rng.random() < density else Poly.zero(n)
                           for _ in range(source.k)) for _ in range(target.k))

    return Morphism(source, target, parity, block(), block())


def random_chain(rng: random.Random, objects, length: int, max_degree: int = 2,
                 parities=None, density: float = 0.6) -> Chain:
    """A random composable cycle ``Phi_l[...|Phi_1]`` through randomly chosen objects."""
    objs = [rng.choice(objects) for _ in range(length)]  # D^(1), ..., D^(l)
    phis = []
    for i in range(length):
        p = None if parities is None else parities[i]
        phis.append(random_morphism(rng, objs[i], objs[(i + 1) % length], p, max_degree, density))
    return Chain.from_phis(phis)


@lru_cache(maxsize=128)
def _cocycle_space(source: MatrixFactorization, target: MatrixFactorization, parity: int, bound: int) -> tuple:
    return tuple(cocycle_space(source, target, parity, bound))


def random_cocycle(rng: random.Random, source: MatrixFactorization, target: MatrixFactorization,
                   parity: int, degree_bound: int = 2, coeff_range: int = 3) -> Morphism:
    """A random integer combination of a basis of cocycles of bounded degree (possibly zero)."""
    space = _cocycle_space(source, target, parity, degree_bound)
    out = zero_morphism(source, target, parity)
    for z in space:
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            out = out + z.scale(c)
    return out


def theta_parities(rng: random.Random, length: int, nvars: int, shift: int = 0) -> list[int]:
    """Random parities ``[|Phi_1|, ..., |Phi_l|]`` for which Theta can be nonzero.

    With ``shift=1`` the chain instead has the parity on which ``Theta o b`` can be nonzero.
    """
    ps = [rng.randint(0, 1) for _ in range(length)]
    if (sum(ps) + length + nvars - 1 + shift) % 2:
        ps[0] ^= 1
    return ps
