"""Hochschild chains of MF(f) and the operators b(delta), b(mu), b'(mu), b''(mu), tau, N.

A chain ``Phi_l[Phi_{l-1}|...|Phi_1]`` is stored with its entries in written
order, ``entries = (Phi_l, ..., Phi_1)``.  ``Phi_i`` maps ``D^(i) -> D^(i+1)``
for ``i < l`` and ``Phi_l`` maps ``D^(l) -> D^(1)``.  Shifted entries are never
materialized; the shift only enters through ``|s Phi| = |Phi| + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .mfcat import MatrixFactorization, Morphism, ObjectMismatchError, compose, delta


@dataclass(frozen=True)
class Chain:
    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("chains have length at least 1")
        l = len(entries)
        for i in range(1, l):
            if self.phi(i).target != self.phi(i + 1).source:
                raise ObjectMismatchError(f"Phi_{i} does not land where Phi_{i + 1} starts")
        if self.phi(l).target != self.phi(1).source:
            raise ObjectMismatchError(f"Phi_{l} does not close the chain up")

    @property
    def length(self) -> int:
        return len(self.entries)

    def phi(self, i: int) -> Morphism:
        """``Phi_i`` for ``1 <= i <= l``."""
        return self.entries[self.length - i]

    def obj(self, i: int) -> MatrixFactorization:
        """``D^(i)``, the source of ``Phi_i``."""
        return self.phi(i).source

    def shifted_parity(self, i: int) -> int:
        return (self.phi(i).parity + 1) % 2

    def eps(self, i: int) -> int:
        """``eps_i = sum_{j >= i} |s Phi_j|`` mod 2 (``eps_{l+1} = 0``)."""
        return sum(self.shifted_parity(j) for j in range(i, self.length + 1)) % 2

    def total_parity(self) -> int:
        return self.eps(1)

    @classmethod
    def from_phis(cls, phis_low_to_high) -> "Chain":
        """Build from ``[Phi_1, ..., Phi_l]``."""
        return cls(tuple(reversed(tuple(phis_low_to_high))))

    def replaced(self, i: int, new: Morphism) -> "Chain":
        entries = list(self.entries)
        entries[self.length - i] = new
        return Chain(tuple(entries))

    def is_degenerate(self) -> bool:
        return any(e.is_zero() for e in self.entries)


class ChainSum:
    """A finite Q-linear combination of chains; like chains are merged."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict = {}
        if terms:
            for c, a in terms.items():
                self._add_term(c, Fraction(a))

    def _add_term(self, chain: Chain, coeff: Fraction):
        if not coeff or chain.is_degenerate():
            return
        v = self.terms.get(chain, 0) + coeff
        if v:
            self.terms[chain] = v
        else:
            self.terms.pop(chain, None)

    @classmethod
    def of(cls, chain: Chain, coeff=1) -> "ChainSum":
        out = cls()
        out._add_term(chain, Fraction(coeff))
        return out

    def __iter__(self) -> Iterator[tuple[Chain, Fraction]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "ChainSum") -> "ChainSum":
        out = ChainSum()
        out.terms = dict(self.terms)
        for c, a in other.terms.items():
            out._add_term(c, a)
        return out

    def __sub__(self, other: "ChainSum") -> "ChainSum":
        return self + other.scale(-1)

    def scale(self, a) -> "ChainSum":
        a = Fraction(a)
        out = ChainSum()
        if a:
            out.terms = {c: v * a for c, v in self.terms.items()}
        return out

    def apply(self, op: Callable[[Chain], "ChainSum"]) -> "ChainSum":
        out = ChainSum()
        for c, a in self.terms.items():
            for c2, a2 in op(c).terms.items():
                out._add_term(c2, a * a2)
        return out

    def expand(self) -> dict:
        """Canonical multilinear expansion into elementary tensors.

        Keys are tuples of elementary morphisms (one monomial in one block
        entry); two chain sums are equal as tensors iff their expansions agree.
        """
        out: dict = {}
        cache: dict = {}
        for chain, coeff in self.terms.items():
            parts = []
            for e in chain.entries:
                if e not in cache:
                    cache[e] = _elementary(e)
                parts.append(cache[e])
            _accumulate(out, parts, 0, (), coeff)
        return {k: v for k, v in out.items() if v}

    def is_zero(self) -> bool:
        return not self.expand()

    def __eq__(self, other):
        if not isinstance(other, ChainSum):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"ChainSum({len(self.terms)} chains)"


def _elementary(m: Morphism) -> list:
    out = []
    for label, blk in (("x", m.x), ("y", m.y)):
        for r, row in enumerate(blk):
            for c, p in enumerate(row):
                for mono, coeff in p.terms.items():
                    out.append(((m.source, m.target, m.parity, label, r, c, mono), coeff))
    return out


def _accumulate(out: dict, parts: list, depth: int, key: tuple, coeff: Fraction):
    if depth == len(parts):
        out[key] = out.get(key, 0) + coeff
        return
    for elem, c in parts[depth]:
        _accumulate(out, parts, depth + 1, key + (elem,), coeff * c)


def as_chain_sum(x) -> ChainSum:
    return x if isinstance(x, ChainSum) else ChainSum.of(x)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def b_delta(c: Chain) -> ChainSum:
    l = c.length
    out = ChainSum.of(c.replaced(l, delta(c.phi(l))))
    for i in range(1, l):
        out._add_term(c.replaced(i, delta(c.phi(i))), Fraction(_sign(c.eps(i + 1))))
    return out


def _bmu_parts(c: Chain) -> tuple[ChainSum, ChainSum, ChainSum]:
    """(first term, middle sum, wrap-around term) of b(mu)."""
    l = c.length
    first, middle, wrap = ChainSum(), ChainSum(), ChainSum()
    if l < 2:
        return first, middle, wrap
    phis = [None] + [c.phi(i) for i in range(1, l + 1)]
    # (-1)^{|Phi_l|} Phi_l Phi_{l-1} [Phi_{l-2}|...|Phi_1]
    head = compose(phis[l], phis[l - 1])
    first._add_term(Chain.from_phis(phis[1:l - 1] + [head]), Fraction(_sign(phis[l].parity)))
    # - sum_{i=1}^{l-2} (-1)^{eps_{i+1}} Phi_l[...|Phi_{i+1} Phi_i|...]
    for i in range(1, l - 1):
        merged = compose(phis[i + 1], phis[i])
        new = phis[1:i] + [merged] + phis[i + 2:]
        middle._add_term(Chain.from_phis(new), Fraction(-_sign(c.eps(i + 1))))
    # - (-1)^{|s Phi_1| (eps_2 + 1)} Phi_1 Phi_l [Phi_{l-1}|...|Phi_2]
    head = compose(phis[1], phis[l])
    wrap._add_term(Chain.from_phis(phis[2:l] + [head]),
                   Fraction(-_sign(c.shifted_parity(1) * (c.eps(2) + 1))))
    return first, middle, wrap


def b_mu(c: Chain) -> ChainSum:
    first, middle, wrap = _bmu_parts(c)
    return first + middle + wrap


def b_mu_prime(c: Chain) -> ChainSum:
    """The second line of b(mu): the inner compositions and the wrap-around term."""
    _, middle, wrap = _bmu_parts(c)
    return middle + wrap


def b_mu_doubleprime(c: Chain) -> ChainSum:
    """b(mu) without its wrap-around term."""
    first, middle, _ = _bmu_parts(c)
    return first + middle


def full_b(c: Chain) -> ChainSum:
    return b_delta(c) + b_mu(c)


def tau_signed(c: Chain) -> tuple[int, Chain]:
    """``tau(Phi_l[...|Phi_1]) = sign * Phi_{l-1}[...|Phi_1|Phi_l]``."""
    l = c.length
    if l == 1:
        return 1, c
    s = c.shifted_parity(l)
    sign = _sign(s * (c.eps(1) - s))
    return sign, Chain(c.entries[1:] + c.entries[:1])


def tau(c: Chain) -> ChainSum:
    sign, rotated = tau_signed(c)
    return ChainSum.of(rotated, sign)


def norm_operator(c: Chain) -> ChainSum:
    """``N = sum_{i=0}^{l-1} tau^i``."""
    out = ChainSum()
    sign, cur = 1, c
    for _ in range(c.length):
        out._add_term(cur, Fraction(sign))
        s, cur = tau_signed(cur)
        sign *= s
    return out


N = norm_operator


def one_minus_tau(c: Chain) -> ChainSum:
    return ChainSum.of(c) - tau(c)


OPERATORS = {
    "b": full_b,
    "bdelta": b_delta,
    "bmu": b_mu,
    "bmu_prime": b_mu_prime,
    "bmu_doubleprime": b_mu_doubleprime,
    "tau": tau,
    "N": norm_operator,
}


def apply(op, x) -> ChainSum:
    return as_chain_sum(x).apply(op)
