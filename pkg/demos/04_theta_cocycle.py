"""Theta vanishes on Hochschild boundaries and on (1 - tau)-images."""

import random

from mfcy import hochschild as hh
from mfcy.corpus import corpus_entry, random_chain, theta_parities
from mfcy.cy import evaluate_theta, theta_main
from mfcy.hochschild import ChainSum

entry = corpus_entry("z1^3 + z2^3")
n = entry.potential.nvars
rng = random.Random(5)

for trial in range(3):
    l = rng.randint(1, 3)
    c = random_chain(rng, entry.objects, l, parities=theta_parities(rng, l, n, shift=1))
    bd = theta_main(ChainSum.of(c).apply(hh.b_delta))
    bm = theta_main(ChainSum.of(c).apply(hh.b_mu))
    print(f"l={l}: Theta(b_delta c) = {bd}, Theta(b_mu c) = {bm}, sum = {bd + bm}")

c = random_chain(rng, entry.objects, 2, parities=theta_parities(rng, 2, n))
res = evaluate_theta(c)
print(f"Theta(c) = {res.value} from {res.term_count} enumerated terms "
      f"({res.residue_calls} residues); Theta(tau c) = {theta_main(hh.tau(c))}")
