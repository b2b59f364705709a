"""
Checking the structure theorems on found points
===============================================

For a separable point, G divides F' and d/3 <= deg F <= d - 2.  When A' is
a nonzero constant gamma, the conditions 2 deg F <= d - 1,
2 deg G <= deg F - 1 and G^2 = beta F' agree, and force j(E) = 1728.
decompose() factors F - alpha_i over the splitting field of f and audits
every identity used along the way.
"""

import json

from isotwist import FieldSpec, TwistedCurve, check_conditions, check_lemma_gdf, decompose, parse_poly
from isotwist import validate_point

k = FieldSpec(7)
c = TwistedCurve.from_polys(parse_poly("t^7 - t", k), parse_poly("x^3 - x", k, "x"))
P = validate_point(c, parse_poly("t^3", k), parse_poly("t", k))

print("divisibility and degree window:", check_lemma_gdf(c, P).to_json())
print("conditions:", json.dumps(check_conditions(c, P).to_json(), indent=1))

dec = decompose(c, P)
for a, Fi, Ni, Si in zip(dec.alpha, dec.F_i, dec.N_i, dec.S_i):
    print(f"alpha = {a.to_text():>2}: F - alpha = {Fi.to_text():<10} N = {Ni.to_text():<10} S = {Si.to_text()}")
print("beta_l:", [b.to_text() for b in dec.beta_l])
print("identity checks:", dec.checks)

# over GF(3) the cubic x^3 - x + 1 is irreducible, so the audit runs in GF(27)
k3 = FieldSpec(3)
c = TwistedCurve.from_polys(parse_poly("t^3 - t + 1", k3), parse_poly("x^3 - x + 1", k3, "x"))
P = validate_point(c, parse_poly("t", k3), parse_poly("1", k3))
dec = decompose(c, P)
print(f"\nsplitting field GF({dec.field.q}); all identities hold: {dec.ok}")
