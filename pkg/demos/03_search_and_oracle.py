"""
Searching for integral points
=============================

search_separable scans the window ceil(d/3) <= deg F <= d - 2 and solves
for G by division and a polynomial square root.  naive_enumerate tests
every (F, G) pair directly and serves as the oracle.
"""

import time

from isotwist import FieldSpec, TwistedCurve, frobenius_lift, naive_enumerate, parse_poly, search_separable


def curve(q, A, f):
    k = FieldSpec(q)
    return TwistedCurve.from_polys(parse_poly(A, k, "t"), parse_poly(f, k, "x"))


c = curve(3, "t^3 - t", "x^3 - x")
report = search_separable(c)
print(c.label())
for P in report.points:
    print("  ", P.to_json())
print("separable:", len(report.separable), "bound q^(2d-3):", report.bound_value)
print("naive oracle agrees:", report.points == naive_enumerate(c, c.d - 2))

# a degree-5 twist over GF(5) that carries points of degree 3
c = curve(5, "t^5 + 2*t^3 + 2*t", "x^3 - x")
t0 = time.perf_counter()
report = search_separable(c)
print(f"\n{c.label()}: {len(report.separable)} separable points in {time.perf_counter() - t0:.2f}s")
print("naive oracle agrees:", report.points == naive_enumerate(c, c.d - 2))

# composing with Frobenius gives inseparable points of q times the degree
P = report.separable[0]
L = frobenius_lift(c, P)
print(f"lift of F = {P.F.to_text()}: deg {L.F.degree}, class {L.kind}")

# the q = 7 family curve has 14 separable points with deg F = 3
c = curve(7, "t^7 - t", "x^3 - x")
report = search_separable(c)
print(f"\n{c.label()}: {len(report.separable)} separable points, max deg F {report.max_deg_F}")
