"""Hochschild chains: the differential, the cyclic operator and the norm."""

import random

from mfcy import hochschild as hh
from mfcy.corpus import corpus_entry, random_chain
from mfcy.hochschild import ChainSum

entry = corpus_entry("z1^3 + z2^3")
rng = random.Random(11)
c = ChainSum.of(random_chain(rng, entry.objects, 3, max_degree=1, density=0.5))

bc = c.apply(hh.full_b)
print("b(c) has", len(bc), "chains; b(b(c)) is zero:", bc.apply(hh.full_b).is_zero())

cyc = c
for _ in range(3):
    cyc = cyc.apply(hh.tau)
print("tau^3 = id on length-3 chains:", cyc == c)

lhs = c.apply(hh.one_minus_tau).apply(hh.b_mu)
rhs = c.apply(hh.b_mu_prime).apply(hh.one_minus_tau)
print("b(mu)(1 - tau) = (1 - tau) b'(mu):", (lhs - rhs).is_zero())
