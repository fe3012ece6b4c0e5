"""Grothendieck residues, exactly.

Three backends should agree: the monomial expansion, the normal-form
functional, and (in one variable) a numerical contour integral.
"""

from mfcy.polyring import variables
from mfcy.residue import (
    ResidueQuery,
    contour_oracle_1d,
    residue_local,
    residue_monomial,
    residue_total,
)

x, y = variables(2)

# Res[(1 + x y) / (x^2, y^2)] picks out the coefficient of x y.
q = ResidueQuery(1 + x * y, ((x, 2), (y, 2)), (0, 0))
print("monomial backend:", residue_monomial(q))
print("normal forms    :", residue_total(ResidueQuery(q.numerator, q.denominators)))

# Nonmonomial denominators split across the rational critical points.
g1, g2 = x ** 2 - 1, y ** 2 - 4
h = 1 + x + y + 5 * x * y
total = residue_total(ResidueQuery(h, ((g1, 1), (g2, 1))))
points = [(a, b) for a in (1, -1) for b in (2, -2)]
local = [residue_local(ResidueQuery(h, ((g1, 1), (g2, 1)), p)) for p in points]
print("local residues  :", [str(v) for v in local], "sum", sum(local), "total", total)

# One variable: compare with a trapezoid rule on a small circle.
(z,) = variables(1)
g = (z - 1) ** 2 * (z + 2)
exact = residue_local(ResidueQuery(z ** 3 + 1, ((g, 1),), (1,)))
approx = contour_oracle_1d(z ** 3 + 1, g, 1, 1.0, 0.5)
print(f"contour check   : exact {exact} ~ {approx:.12f}")
