import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfcy.corpus import random_chain, random_cocycle, random_morphism, standard_corpus, theta_parities
from mfcy.cy import (
    BudgetError,
    CombinatorialFrame,
    NotACocycleError,
    VolumeForm,
    VolumeFormError,
    as_volume_form,
    cocycle_basis,
    evaluate_theta,
    is_coboundary,
    pairing,
    term_count,
    theta_kl,
    theta_main,
    theta_main_enumerative,
)
from mfcy.hochschild import Chain
from mfcy.mfcat import Superpotential, delta, make_factorization
from mfcy.polyring import Poly, variables

CORPUS = {e.name: e for e in standard_corpus()}


@pytest.mark.parametrize("n,l", [(1, 1), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_frame_counts(n, l):
    fr = CombinatorialFrame(n, l)
    enumerated = 0
    for _k in fr.k_compositions():
        for i in range(1, n + 1):
            for r in fr.r_vectors(i):
                lam = list(fr.lambda_set(r))
                assert len(lam) == CombinatorialFrame.lambda_size(r)
                assert len(lam) == math.factorial(l) // math.prod(math.factorial(x) for x in r)
                perms = list(fr.s_set(i))
                assert len(perms) == math.factorial(n - 1)
                enumerated += len(lam) * len(perms)
    assert enumerated == term_count(n, l) == fr.term_count()


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(["z^3", "z^4", "z1^3 + z2^3"]), st.integers(1, 2), st.integers(0, 10 ** 6))
def test_grassmann_path_matches_enumeration(name, l, seed):
    entry = CORPUS[name]
    rng = random.Random(seed)
    n = entry.potential.nvars
    c = random_chain(rng, entry.objects, l, max_degree=1, parities=theta_parities(rng, l, n))
    assert theta_main(c) == theta_main_enumerative(c)


def test_wrong_total_parity_vanishes():
    entry = CORPUS["z1^3 + z2^3"]
    rng = random.Random(3)
    for l in (1, 2):
        c = random_chain(rng, entry.objects, l, max_degree=2, parities=theta_parities(rng, l, 2, shift=1))
        assert theta_main(c) == 0


def test_budget_refusal_before_work():
    entry = CORPUS["z1^2 + z2^2 + z3^2"]
    rng = random.Random(4)
    c = random_chain(rng, entry.objects, 3, max_degree=1, parities=theta_parities(rng, 3, 3))
    with pytest.raises(BudgetError) as err:
        evaluate_theta(c, budget=10)
    assert err.value.estimate == term_count(3, 3)


def test_threads_do_not_change_value():
    entry = CORPUS["z1^3 + z2^3"]
    rng = random.Random(5)
    c = random_chain(rng, entry.objects, 2, max_degree=2, parities=theta_parities(rng, 2, 2))
    one = evaluate_theta(c, threads=1)
    four = evaluate_theta(c, threads=4)
    assert one.value == four.value and one.term_count == four.term_count


def test_pairing_graded_symmetric_and_rejects_non_cocycles():
    entry = CORPUS["z^4"]
    rng = random.Random(6)
    for _ in range(5):
        a, b = rng.choice(entry.objects), rng.choice(entry.objects)
        p = rng.randint(0, 1)
        x = random_cocycle(rng, a, b, p, 2)
        y = random_cocycle(rng, b, a, 1 - p, 2)
        assert pairing(y, x) == (-1) ** (x.parity * y.parity) * pairing(x, y)
    d = entry.objects[0]
    bad = random_morphism(rng, d, d, parity=1)
    assert not delta(bad).is_zero()
    with pytest.raises(NotACocycleError):
        pairing(bad, bad)


def test_coboundary_witness():
    entry = CORPUS["z^4"]
    rng = random.Random(7)
    a, b = entry.objects[0], entry.objects[1]
    psi = random_morphism(rng, a, b, parity=0, max_degree=2)
    res = is_coboundary(delta(psi), 2)
    assert res and (delta(res.witness) - delta(psi)).is_zero()
    for m in cocycle_basis(a, b, 1, 3):
        assert not is_coboundary(m, 3)


def test_volume_form_checks():
    (z,) = variables(1)
    f = Superpotential(z ** 3)
    with pytest.raises(VolumeFormError):
        VolumeForm(Poly.zero(1))
    with pytest.raises(VolumeFormError):
        as_volume_form(z, 1, f)
    vol = as_volume_form(2 + z, 1, f)
    d = make_factorization(z ** 3, ((z,),), ((z ** 2,),))
    phi = random_cocycle(random.Random(8), d, d, 1, 2)
    assert theta_kl(phi, vol.omega) - theta_kl(phi, 3 + z) == -theta_kl(phi)


def test_point_mode_sums_to_total():
    # z^3 - 3z has the two rational critical points z = 1 and z = -1
    (z,) = variables(1)
    d = make_factorization(z ** 3 - 3 * z, ((z,),), ((z ** 2 - 3,),))
    rng = random.Random(9)
    for l in (1, 2, 3):
        c = random_chain(rng, [d], l, parities=theta_parities(rng, l, 1), density=0.8)
        local = theta_main(c, mode="point", point=(1,)) + theta_main(c, mode="point", point=(-1,))
        assert local == theta_main(c)
    with pytest.raises(ValueError):
        theta_main(c, mode="point", point=(0,))
