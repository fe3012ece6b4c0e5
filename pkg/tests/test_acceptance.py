"""One test per acceptance criterion; every comparison is exact except the contour oracle."""

import random
import subprocess
import sys
from fractions import Fraction

import pytest

from mfcy import hochschild as hh
from mfcy.corpus import (
    power_corpus,
    random_chain,
    random_cocycle,
    random_morphism,
    random_poly,
    theta_parities,
)
from mfcy.cy import theta_kl, theta_main, theta_one_variable, theta_tilde
from mfcy.hochschild import Chain, ChainSum
from mfcy.mfcat import Morphism, compose, delta, make_factorization
from mfcy.polyring import Poly, quotient_basis, variables
from mfcy.residue import (
    ResidueQuery,
    contour_oracle_1d,
    critical_locus,
    residue_local,
    residue_local_by_eliminants,
    residue_monomial,
    residue_total,
    transformation_law_direct,
)
from mfcy.verify import BRIESKORN_PHAM, brieskorn_pham, hessian, nondegeneracy_case


def report(n, ok, detail):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def test_criterion_1_cocycle_law(corpus):
    per_entry = 30
    failures, chains, nontrivial = [], 0, [0, 0]
    for entry in corpus:
        n = entry.potential.nvars
        rng = random.Random(f"acceptance-1:{entry.name}")
        for k in range(per_entry):
            l = rng.randint(1, 3)
            c = random_chain(rng, entry.objects, l, max_degree=2, parities=theta_parities(rng, l, n, shift=1))
            bd = theta_main(ChainSum.of(c).apply(hh.b_delta))
            bm = theta_main(ChainSum.of(c).apply(hh.b_mu))
            nontrivial[0] += bd != 0
            if bd + bm != 0:
                failures.append(("b", entry.name, k, bd + bm))
            l = rng.randint(1, 3)
            c = random_chain(rng, entry.objects, l, max_degree=2, parities=theta_parities(rng, l, n))
            value = theta_main(c)
            nontrivial[1] += value != 0
            if theta_main(hh.tau(c)) != value:
                failures.append(("tau", entry.name, k))
            chains += 2
    ok = not failures and all(nontrivial)
    report(1, ok, f"{chains} chains, nonzero Theta(b_delta c) in {nontrivial[0]}, nonzero Theta(c) in {nontrivial[1]}")
    assert chains >= 100
    assert not failures
    assert all(nontrivial)


def test_criterion_2_kapustin_li_reduction(corpus):
    failures, nonzero = [], 0
    for entry in corpus:
        n = entry.potential.nvars
        bound = 1 if n >= 3 else 2
        rng = random.Random(f"acceptance-2:{entry.name}")
        for k in range(50):
            d = rng.choice(entry.objects)
            phi = random_cocycle(rng, d, d, n % 2, bound)
            assert delta(phi).is_zero()
            kl = theta_kl(phi)
            nonzero += kl != 0
            if theta_main(Chain((phi,))) != kl:
                failures.append((entry.name, k))
    report(2, not failures, f"{50 * len(corpus)} cocycles, {nonzero} with nonzero trace")
    assert not failures
    assert nonzero > 0


def test_criterion_3_correction_identity(corpus):
    entries = [e for e in corpus if e.name in ("z^3", "z1^3 + z2^3")]
    assert len(entries) == 2
    failures, nonzero = [], 0
    for entry in entries:
        rng = random.Random(f"acceptance-3:{entry.name}")
        for k in range(50):
            a, b = rng.choice(entry.objects), rng.choice(entry.objects)
            p1 = random_morphism(rng, a, b)  # D' -> D''
            p2 = random_morphism(rng, b, a)  # D'' -> D'
            lhs = theta_kl(compose(p2, p1)) - (-1) ** (p1.parity * p2.parity) * theta_kl(compose(p1, p2))
            rhs = theta_tilde(p2, delta(p1)) - (-1) ** p2.parity * theta_tilde(delta(p2), p1)
            if lhs != rhs:
                failures.append(("defect", entry.name, k))
            s1 = theta_tilde(p2, p1)
            if s1 != (-1) ** ((p1.parity + 1) * (p2.parity + 1)) * theta_tilde(p1, p2):
                failures.append(("symmetry", entry.name, k))
            nonzero += (lhs != 0) + (s1 != 0)
    report(3, not failures, f"100 pairs, {nonzero} nonzero sides")
    assert not failures
    assert nonzero > 0


def test_criterion_4_worked_constants():
    (z,) = variables(1)
    one = Poly.constant(1, 1)
    # f = z^3, D = (z, z^2), Phi = [[0, -1], [z, 0]]:
    # dD Phi = [[z, 0], [0, -2z]], str = 3z, Res[3z / 3z^2] = 1
    d3 = make_factorization(z ** 3, ((z,),), ((z ** 2,),))
    phi3 = Morphism(d3, d3, 1, ((-one,),), ((z,),))
    # f = z^2, D = (z, z), Phi = [[0, 1], [-1, 0]]:
    # dD Phi = [[-1, 0], [0, 1]], str = -2, Res[-2 / 2z] = -1
    d2 = make_factorization(z ** 2, ((z,),), ((z,),))
    phi2 = Morphism(d2, d2, 1, ((one,),), ((-one,),))
    got = (theta_kl(phi3), theta_kl(phi2))
    ok = got == (1, -1) and delta(phi3).is_zero() and delta(phi2).is_zero()
    report(4, ok, f"theta_KL values {got[0]}, {got[1]} (expected 1, -1)")
    assert delta(phi3).is_zero() and delta(phi2).is_zero()
    assert got == (Fraction(1), Fraction(-1))


def test_criterion_5_one_variable_closed_form(corpus):
    entries = [e for e in corpus if e.potential.nvars == 1]
    failures, nonzero, total = [], 0, 0
    for entry in entries:
        rng = random.Random(f"acceptance-5:{entry.name}")
        for l in range(1, 5):
            for k in range(10):
                c = random_chain(rng, entry.objects, l, parities=theta_parities(rng, l, 1), density=0.8)
                closed = theta_one_variable(c)
                nonzero += closed != 0
                total += 1
                if theta_main(c) != closed:
                    failures.append((entry.name, l, k))
    report(5, not failures, f"{total} chains with l <= 4, {nonzero} nonzero")
    assert not failures
    assert nonzero > 0


def test_criterion_6_residue_engine():
    # (a) Milnor identity
    milnor = []
    for exps in BRIESKORN_PHAM:
        f = brieskorn_pham(exps)
        jac = tuple(f.partial(a) for a in range(f.nvars))
        mu = len(quotient_basis(critical_locus(f).gb))
        assert mu <= 16
        milnor.append(residue_total(ResidueQuery(hessian(f), tuple((g, 1) for g in jac))) == mu)

    # (b) monomial backend against the transformation law on overlapping queries
    rng = random.Random("acceptance-6b")
    agree = []
    for k in range(30):
        n = rng.randint(1, 3)
        zs = variables(n)
        perm = list(range(n))
        rng.shuffle(perm)
        dens = []
        top = 3 if n < 3 else 2  # keeps the global ideal small enough for Buchberger
        for i in range(n):
            unit = Poly.constant(n, rng.choice([1, 2, -3, Fraction(1, 2)]))
            if k % 2:
                unit = unit + random_poly(rng, n, 1, 2) * zs[rng.randrange(n)]
            dens.append((unit * zs[perm[i]] ** rng.randint(1, top), rng.randint(1, top - 1)))
        h = random_poly(rng, n, 4, 5)
        q = ResidueQuery(h, tuple(dens), (0,) * n)
        mono = residue_monomial(q)
        agree.append(mono == residue_local_by_eliminants(q))
        if k % 2 == 0:  # pure monomials vanish only at the origin
            total_q = ResidueQuery(h, tuple(dens))
            agree.append(mono == transformation_law_direct(total_q) == residue_total(total_q))

    # (c) one-variable contour integrals
    rng = random.Random("acceptance-6c")
    errors = []
    for _ in range(20):
        roots = rng.sample([Fraction(a, 2) for a in range(-6, 7)], 3)
        (z,) = variables(1)
        g = Poly.constant(1, 1)
        for x in roots:
            g = g * (z - x) ** rng.randint(1, 2)
        h = random_poly(rng, 1, 4, 4) + 1
        s = rng.randint(1, 2)
        x = roots[0]
        radius = 0.4 * float(min(abs(x - y) for y in roots[1:]))
        exact = residue_local(ResidueQuery(h, ((g, s),), (x,)))
        errors.append(abs(contour_oracle_1d(h, g, s, float(x), radius, samples=1024) - float(exact)))
    ok = all(milnor) and all(agree) and max(errors) < 1e-8
    report(6, ok, f"Milnor {sum(milnor)}/{len(milnor)}, backends {sum(agree)}/{len(agree)}, "
                  f"contour max error {max(errors):.1e}")
    assert all(milnor)
    assert all(agree)
    assert max(errors) < 1e-8


def test_criterion_7_nondegeneracy():
    results = []
    for d in (3, 4, 5):
        for a in range(1, d):
            for b in range(1, d):
                for parity in (0, 1):
                    case = nondegeneracy_case(d, a, b, parity)
                    results.append((d, a, b, parity, len(case["left"]), case["rank"], case["full_rank"]))
    bad = [r for r in results if not r[-1]]
    report(7, not bad, f"{len(results)} Gram matrices, sizes up to {max(r[4] for r in results)}")
    assert not bad
    # the cohomology of Hom(D_a, D_b) has dimension min(a, b, d - a, d - b) in each parity
    for d, a, b, parity, size, _, _ in results:
        assert size == min(a, b, d - a, d - b)


def test_criterion_8_hochschild_identities(corpus):
    identities = {
        "b o b": lambda c: c.apply(hh.full_b).apply(hh.full_b),
        "b(delta) tau": lambda c: c.apply(hh.one_minus_tau).apply(hh.b_delta)
        - c.apply(hh.b_delta).apply(hh.one_minus_tau),
        "b(mu) tau": lambda c: c.apply(hh.one_minus_tau).apply(hh.b_mu)
        - c.apply(hh.b_mu_prime).apply(hh.one_minus_tau),
        "N b(delta)": lambda c: c.apply(hh.b_delta).apply(hh.norm_operator)
        - c.apply(hh.norm_operator).apply(hh.b_delta),
        "N b(mu)": lambda c: c.apply(hh.b_mu).apply(hh.norm_operator)
        - c.apply(hh.norm_operator).apply(hh.b_mu_doubleprime),
    }
    failures, nontrivial = [], 0
    for entry in corpus:
        rng = random.Random(f"acceptance-8:{entry.name}")
        for k in range(25):
            c = ChainSum.of(random_chain(rng, entry.objects, rng.randint(1, 3), max_degree=1, density=0.4))
            nontrivial += not c.apply(hh.b_delta).is_zero()
            for name, fn in identities.items():
                if not fn(c).is_zero():
                    failures.append((name, entry.name, k))
    report(8, not failures, f"{25 * len(corpus)} chains, b(delta) nonzero on {nontrivial}")
    assert not failures
    assert nontrivial > 0


def test_criterion_9_determinism():
    def run(threads):
        cmd = [sys.executable, "-m", "mfcy", "verify", "--corpus", "standard", "--seed", "7",
               "--threads", str(threads)]
        return subprocess.run(cmd, capture_output=True, timeout=600)

    one, eight = run(1), run(8)
    ok = one.returncode == eight.returncode == 0 and one.stdout == eight.stdout
    report(9, ok, f"exit codes {one.returncode}/{eight.returncode}, {len(one.stdout)} bytes")
    assert one.returncode == 0, one.stderr.decode()
    assert eight.returncode == 0, eight.stderr.decode()
    assert one.stdout == eight.stdout
