import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfcy import hochschild as hh
from mfcy.corpus import random_chain, random_morphism, standard_corpus
from mfcy.hochschild import Chain, ChainSum
from mfcy.mfcat import ObjectMismatchError, identity, zero_morphism

CORPUS = standard_corpus()
cases = st.tuples(st.sampled_from(range(len(CORPUS))), st.integers(1, 4), st.integers(0, 10 ** 6))


def _chain(case):
    idx, l, seed = case
    rng = random.Random(seed)
    return random_chain(rng, CORPUS[idx].objects, l, max_degree=1, density=0.4)


@settings(max_examples=30, deadline=None)
@given(cases)
def test_tau_has_order_length(case):
    c = _chain(case)
    cs = ChainSum.of(c)
    for _ in range(c.length):
        cs = cs.apply(hh.tau)
    assert cs == ChainSum.of(c)


@settings(max_examples=30, deadline=None)
@given(cases)
def test_norm_kills_one_minus_tau(case):
    c = ChainSum.of(_chain(case))
    assert c.apply(hh.one_minus_tau).apply(hh.norm_operator).is_zero()
    assert c.apply(hh.norm_operator).apply(hh.one_minus_tau).is_zero()


def test_chain_must_close_up():
    objs = CORPUS[0].objects
    rng = random.Random(0)
    a, b = objs[0], objs[1]
    with pytest.raises(ObjectMismatchError):
        Chain((random_morphism(rng, a, b),))
    with pytest.raises(ValueError):
        Chain(())


def test_indexing_and_degenerate_chains_drop():
    d = CORPUS[0].objects[0]
    rng = random.Random(1)
    p1, p2 = random_morphism(rng, d, d, parity=0), random_morphism(rng, d, d, parity=1)
    c = Chain.from_phis([p1, p2])
    assert c.phi(1) is p1 and c.phi(2) is p2
    assert c.eps(1) == (c.shifted_parity(1) + c.shifted_parity(2)) % 2
    assert c.eps(3) == 0
    assert ChainSum.of(Chain.from_phis([p1, zero_morphism(d, d, 1)])).is_zero()


def test_expansion_is_multilinear():
    d = CORPUS[1].objects[0]
    rng = random.Random(2)
    a, b = random_morphism(rng, d, d, parity=1), random_morphism(rng, d, d, parity=1)
    other = identity(d)
    lhs = ChainSum.of(Chain.from_phis([a + b, other]))
    rhs = ChainSum.of(Chain.from_phis([a, other])) + ChainSum.of(Chain.from_phis([b, other]))
    assert lhs == rhs
    assert ChainSum.of(Chain.from_phis([a.scale(3), other])) == ChainSum.of(Chain.from_phis([a, other]), 3)
