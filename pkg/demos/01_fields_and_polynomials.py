"""
Finite fields and polynomials
=============================

Arithmetic in GF(p^n), square roots, embeddings into extensions, and the
polynomial toolkit used everywhere else.
"""

from isotwist import FieldSpec, embed, parse_poly, poly_sqrt, roots_in_field, splitting_spec, sqrt_in_field
from isotwist.poly import gcd_monic, is_squarefree

# GF(9) = GF(3)[x] / (x^2 + 1), the least monic irreducible quadratic
K = FieldSpec(3, 2)
print("GF(9) modulus:", K.modulus)
i = K([0, 1])
print("i * i =", (i * i).to_text())

# square roots: the canonical root is the one with the smaller residue vector
k7 = FieldSpec(7)
print("sqrt(2) in GF(7):", sqrt_in_field(k7(2)).to_text())
print("sqrt(2) in GF(3):", sqrt_in_field(FieldSpec(3)(2)))

# GF(3) sits inside GF(9)
print("2 in GF(3) -> GF(9):", embed(FieldSpec(3)(2), K).to_text())

# polynomials parse from text and print back canonically
k3 = FieldSpec(3)
a = parse_poly("t^3 - t", k3)
q, r = divmod(a, parse_poly("t - 1", k3))
print(f"({a.to_text()}) = ({q.to_text()}) * (t - 1) + {r.to_text()}")
print("gcd(t^3 - t, t - 1) =", gcd_monic(a, parse_poly("t - 1", k3)).to_text())
print("t^3 + 1 square-free over GF(3)?", is_squarefree(parse_poly("t^3 + 1", k3)))

s = poly_sqrt(parse_poly("t^4 - 2*t^2 + 1", k7))
print("sqrt(t^4 - 2t^2 + 1) over GF(7):", s.to_text())

# x^3 + x + 1 has no root in GF(5); its splitting field is GF(125)
f = parse_poly("x^3 + x + 1", FieldSpec(5), "x")
L = splitting_spec(f)
print(f"{f.to_text('x')} splits over GF({L.q}) with roots", [r.to_text() for r in roots_in_field(f, L)])
