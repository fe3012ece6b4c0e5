import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfcy.corpus import random_morphism, standard_corpus
from mfcy.mfcat import (
    NotAFactorizationError,
    ObjectMismatchError,
    compose,
    delta,
    identity,
    koszul_factorization,
    make_factorization,
    supertrace,
)
from mfcy.polyring import variables

CORPUS = standard_corpus()
names = st.sampled_from(range(len(CORPUS)))


def test_koszul_squares_to_f():
    x, y, z = variables(3)
    f = x ** 2 + y ** 2 + z ** 2
    d = koszul_factorization(f, [(x, x), (y, y), (z, z)])
    assert d.k == 4
    assert delta(identity(d)).is_zero()


def test_rejects_non_factorization():
    (z,) = variables(1)
    with pytest.raises(NotAFactorizationError):
        make_factorization(z ** 3, ((z,),), ((z,),))


def test_rejects_mismatched_potentials():
    (z,) = variables(1)
    a = make_factorization(z ** 2, ((z,),), ((z,),))
    b = make_factorization(z ** 3, ((z,),), ((z ** 2,),))
    with pytest.raises(ObjectMismatchError):
        compose(identity(a), identity(b))


@settings(max_examples=25, deadline=None)
@given(names, st.integers(0, 10 ** 6))
def test_delta_squares_to_zero_and_leibniz(idx, seed):
    entry = CORPUS[idx]
    rng = random.Random(seed)
    a, b, c = (rng.choice(entry.objects) for _ in range(3))
    phi = random_morphism(rng, a, b, max_degree=1)
    psi = random_morphism(rng, b, c, max_degree=1)
    assert delta(delta(phi)).is_zero()
    lhs = delta(compose(psi, phi))
    rhs = compose(delta(psi), phi) + compose(psi, delta(phi)).scale((-1) ** psi.parity)
    assert (lhs - rhs).is_zero()


@settings(max_examples=25, deadline=None)
@given(names, st.integers(0, 10 ** 6))
def test_supertrace_graded_cyclic(idx, seed):
    entry = CORPUS[idx]
    rng = random.Random(seed)
    a, b = rng.choice(entry.objects), rng.choice(entry.objects)
    phi = random_morphism(rng, a, b, max_degree=1)
    psi = random_morphism(rng, b, a, max_degree=1)
    sign = (-1) ** (phi.parity * psi.parity)
    assert supertrace(compose(psi, phi)) == supertrace(compose(phi, psi)).scale(sign)
