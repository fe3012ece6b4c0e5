"""The invariant suite behind ``mfcy verify``.

Every check draws from its own ``random.Random`` seeded by a string built from
the suite seed, the check name and the corpus entry, so results do not depend
on which checks run or in what order.  Reports carry no timing and no thread
count, which keeps them byte-identical across ``--threads`` settings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import hochschild as hh
from .corpus import (
    CorpusEntry,
    power_corpus,
    random_chain,
    random_cocycle,
    random_morphism,
    standard_corpus,
    theta_parities,
)
from .cy import (
    cocycle_basis,
    gram_matrix,
    is_coboundary,
    theta_kl,
    theta_main,
    theta_one_variable,
    theta_tilde,
)
from .hochschild import Chain, ChainSum
from .linalg import rank
from .mfcat import compose, delta
from .polyring import Poly, variables
from .residue import ResidueQuery, critical_locus, residue_total


@dataclass
class CheckResult:
    name: str
    corpus: str
    cases: int = 0
    failures: int = 0
    nonzero: int = 0  # cases where the quantities compared were not all zero

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, nontrivial: bool = True):
        self.cases += 1
        self.failures += not ok
        self.nonzero += bool(nontrivial)

    def as_dict(self) -> dict:
        return {"check": self.name, "corpus": self.corpus, "cases": self.cases,
                "nonzero": self.nonzero, "failures": self.failures, "passed": self.passed}


@dataclass
class SuiteReport:
    corpus: str
    seed: int
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def as_dict(self) -> dict:
        return {"corpus": self.corpus, "seed": self.seed, "passed": self.passed,
                "checks": [r.as_dict() for r in self.results]}


def _rng(seed: int, *labels) -> random.Random:
    return random.Random(":".join([str(seed), *map(str, labels)]))


# -- per-entry checks --------------------------------------------------------

HOCHSCHILD_IDENTITIES = {
    "b o b = 0": lambda c: c.apply(hh.full_b).apply(hh.full_b),
    "b(delta)(1 - tau) = (1 - tau) b(delta)":
        lambda c: c.apply(hh.one_minus_tau).apply(hh.b_delta) - c.apply(hh.b_delta).apply(hh.one_minus_tau),
    "b(mu)(1 - tau) = (1 - tau) b'(mu)":
        lambda c: c.apply(hh.one_minus_tau).apply(hh.b_mu) - c.apply(hh.b_mu_prime).apply(hh.one_minus_tau),
    "N b(delta) = b(delta) N":
        lambda c: c.apply(hh.b_delta).apply(hh.norm_operator) - c.apply(hh.norm_operator).apply(hh.b_delta),
    "N b(mu) = b''(mu) N":
        lambda c: c.apply(hh.b_mu).apply(hh.norm_operator) - c.apply(hh.norm_operator).apply(hh.b_mu_doubleprime),
}


def check_hochschild(entry: CorpusEntry, seed: int, count: int) -> list[CheckResult]:
    results = {name: CheckResult(name, entry.name) for name in HOCHSCHILD_IDENTITIES}
    rng = _rng(seed, "hochschild", entry.name)
    for _ in range(count):
        c = ChainSum.of(random_chain(rng, entry.objects, rng.randint(1, 3), max_degree=1, density=0.4))
        for name, fn in HOCHSCHILD_IDENTITIES.items():
            results[name].record(fn(c).is_zero(), nontrivial=len(c) > 0)
    return list(results.values())


def check_theta_cocycle(entry: CorpusEntry, seed: int, count: int, threads: int = 1) -> list[CheckResult]:
    n = entry.potential.nvars
    cocycle = CheckResult("Theta o b = 0", entry.name)
    cyclic = CheckResult("Theta o (1 - tau) = 0", entry.name)
    rng = _rng(seed, "theta", entry.name)
    for _ in range(count):
        l = rng.randint(1, 3)
        c = ChainSum.of(random_chain(rng, entry.objects, l, parities=theta_parities(rng, l, n, shift=1)))
        bd = theta_main(c.apply(hh.b_delta), threads=threads)
        bm = theta_main(c.apply(hh.b_mu), threads=threads)
        cocycle.record(bd + bm == 0, nontrivial=bool(bd or bm))
        l = rng.randint(1, 3)
        c = random_chain(rng, entry.objects, l, parities=theta_parities(rng, l, n))
        value = theta_main(c, threads=threads)
        rotated = theta_main(hh.tau(c), threads=threads)
        cyclic.record(value == rotated, nontrivial=bool(value))
    return [cocycle, cyclic]


def _cocycle_bound(entry: CorpusEntry) -> int:
    return 1 if entry.potential.nvars >= 3 else 2


def check_kl_reduction(entry: CorpusEntry, seed: int, count: int, threads: int = 1) -> CheckResult:
    n = entry.potential.nvars
    out = CheckResult("Theta on length one = theta_KL", entry.name)
    rng = _rng(seed, "kl", entry.name)
    for _ in range(count):
        d = rng.choice(entry.objects)
        phi = random_cocycle(rng, d, d, n % 2, _cocycle_bound(entry))
        kl = theta_kl(phi)
        out.record(theta_main(Chain((phi,)), threads=threads) == kl, nontrivial=bool(kl))
    return out


def check_one_variable(entry: CorpusEntry, seed: int, count: int) -> CheckResult:
    out = CheckResult("Theta = one-variable closed form", entry.name)
    rng = _rng(seed, "n=1", entry.name)
    for _ in range(count):
        l = rng.randint(1, 4)
        c = random_chain(rng, entry.objects, l, parities=theta_parities(rng, l, 1))
        closed = theta_one_variable(c)
        out.record(theta_main(c) == closed, nontrivial=bool(closed))
    return out


def check_correction(entry: CorpusEntry, seed: int, count: int) -> list[CheckResult]:
    defect = CheckResult("theta_KL defect = theta-tilde terms", entry.name)
    symmetry = CheckResult("theta-tilde graded symmetry", entry.name)
    rng = _rng(seed, "tilde", entry.name)
    for _ in range(count):
        a, b = rng.choice(entry.objects), rng.choice(entry.objects)
        p1 = random_morphism(rng, a, b)
        p2 = random_morphism(rng, b, a)
        lhs = theta_kl(compose(p2, p1)) - (-1) ** (p1.parity * p2.parity) * theta_kl(compose(p1, p2))
        rhs = theta_tilde(p2, delta(p1)) - (-1) ** p2.parity * theta_tilde(delta(p2), p1)
        defect.record(lhs == rhs, nontrivial=bool(lhs))
        s1 = theta_tilde(p2, p1)
        s2 = theta_tilde(p1, p2) * (-1) ** ((p1.parity + 1) * (p2.parity + 1))
        symmetry.record(s1 == s2, nontrivial=bool(s1))
    return [defect, symmetry]


# -- global checks -----------------------------------------------------------

def nondegeneracy_case(d: int, a: int, b: int, parity: int) -> dict:
    """Gram data for ``Hom(D_b, D_a)`` of the given parity against ``Hom(D_a, D_b)``."""
    entry = power_corpus(d)
    da, db = entry.objects[a - 1], entry.objects[b - 1]
    left = cocycle_basis(db, da, parity, d)
    right = cocycle_basis(da, db, 1 - parity, d)
    certified = all(not is_coboundary(z, 2 * d) for z in left + right)
    g = gram_matrix(left, right)
    r = rank(g) if left and right else 0
    return {"left": left, "right": right, "gram": g, "rank": r, "certified": certified,
            "full_rank": certified and len(left) == len(right) == r}


def check_nondegeneracy(degrees=(3, 4, 5)) -> list[CheckResult]:
    out = []
    for d in degrees:
        res = CheckResult("Gram matrices square of full rank", f"z^{d}")
        for a in range(1, d):
            for b in range(1, d):
                for parity in (0, 1):
                    case = nondegeneracy_case(d, a, b, parity)
                    res.record(case["full_rank"], nontrivial=case["rank"] > 0)
        out.append(res)
    return out


def brieskorn_pham(exponents) -> Poly:
    zs = variables(len(exponents))
    f = Poly.zero(len(exponents))
    for z, e in zip(zs, exponents):
        f = f + z ** e
    return f


BRIESKORN_PHAM = ((2,), (3,), (5,), (2, 2), (2, 3), (3, 3), (2, 5), (4, 4), (3, 5), (2, 2, 2), (2, 3, 3), (3, 3, 3))


def hessian(f: Poly) -> Poly:
    from .linalg import poly_det

    n = f.nvars
    return poly_det([[f.partial(a).partial(b) for b in range(n)] for a in range(n)])


def check_milnor(cases=BRIESKORN_PHAM) -> CheckResult:
    out = CheckResult("Res[Hess f / prod d_i f] = Milnor number", "Brieskorn-Pham")
    for exps in cases:
        f = brieskorn_pham(exps)
        jac = tuple(f.partial(a) for a in range(f.nvars))
        value = residue_total(ResidueQuery(hessian(f), tuple((g, 1) for g in jac)))
        mu = len(critical_locus(f).basis)
        out.record(value == mu)
    return out


# -- the suite ---------------------------------------------------------------

def run_suite(corpus: str = "standard", seed: int = 7, threads: int = 1, chains: int = 6,
              cocycles: int = 8, pairs: int = 8) -> SuiteReport:
    if corpus != "standard":
        raise ValueError(f"unknown corpus {corpus!r}")
    report = SuiteReport(corpus, seed)
    for entry in standard_corpus():
        n = entry.potential.nvars
        report.results += check_hochschild(entry, seed, chains)
        report.results += check_theta_cocycle(entry, seed, chains, threads)
        report.results.append(check_kl_reduction(entry, seed, cocycles, threads))
        if n == 1:
            report.results.append(check_one_variable(entry, seed, chains))
        if n <= 2:
            report.results += check_correction(entry, seed, pairs)
    report.results += check_nondegeneracy()
    report.results.append(check_milnor())
    return report
