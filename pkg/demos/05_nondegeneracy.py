"""The pairing on cohomology of the factorizations D_a = (z^a, z^(d-a)) of z^d is perfect."""

from mfcy.verify import nondegeneracy_case

for d in (3, 4, 5):
    for a in range(1, d):
        for b in range(a, d):
            for parity in (0, 1):
                case = nondegeneracy_case(d, a, b, parity)
                gram = [[str(v) for v in row] for row in case["gram"]]
                print(f"z^{d}  D_{a} -> D_{b}  parity {parity}:  rank {case['rank']}  gram {gram}")
