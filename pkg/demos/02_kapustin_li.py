"""The boundary trace on the simplest factorizations of z^2 and z^3."""

from mfcy import Morphism, Poly, delta, make_factorization, theta_kl, variables

(z,) = variables(1)
one = Poly.constant(1, 1)

d2 = make_factorization(z ** 2, ((z,),), ((z,),), "D")
phi2 = Morphism(d2, d2, 1, ((one,),), ((-one,),))
print("z^2: delta(phi) = 0 ?", delta(phi2).is_zero(), " theta_KL =", theta_kl(phi2))

d3 = make_factorization(z ** 3, ((z,),), ((z ** 2,),), "D")
phi3 = Morphism(d3, d3, 1, ((-one,),), ((z,),))
print("z^3: delta(phi) = 0 ?", delta(phi3).is_zero(), " theta_KL =", theta_kl(phi3))

# A nonconstant volume form that is a unit on the Milnor algebra rescales the trace.
print("z^3 with omega = 2 + z:", theta_kl(phi3, 2 + z))
