"""
An explicit family of separable points
======================================

For q = 3 (mod 4) the point (t^((q-1)/2), t^((q-3)/4)) lies on the twist
(t^q - t) y^2 = x^3 - x.  Both sides equal t^((3q-3)/2) - t^((q-1)/2).
"""

from isotwist import family_instance, morphism_view

for q in (3, 7, 11, 19, 27):
    inst = family_instance(q)
    P = inst.point
    m = morphism_view(inst.curve, P)
    print(f"q = {q:3d}: F = {P.F.to_text()}, G = {P.G.to_text()}, degree {m.degree} <= cap {m.degree_cap}")
    print("         checks:", ", ".join(k for k, v in inst.checks.items() if v))

# q = 3 (mod 4) is needed for the exponent (q - 3)/4
try:
    family_instance(5)
except Exception as exc:
    print("q = 5:", type(exc).__name__, exc)
