"""
Lattice point counts and the resulting bounds
=============================================

The number of x with q(x) <= T is at most (2 sqrt(T / lambda) + 1)^r,
because these points stay distinct modulo n once n^2 > 4T / lambda.
Counting is exact; only the printed bound is a float.
"""

import random
from fractions import Fraction

from isotwist.bounds import (
    LatticeSpec,
    check_lemma_latt,
    combined_lang_bound,
    lang_bound,
    random_positive_definite,
    rh_degree_cap,
    twist_bound,
)

hexagonal = LatticeSpec([[2, 1], [1, 2]])
print("hexagonal lattice, T = 2:", check_lemma_latt(hexagonal, 2).to_json())

rng = random.Random(0)
for _ in range(5):
    g = random_positive_definite(rng, rng.randint(1, 3))
    T = Fraction(rng.randint(0, 100), 4)
    chk = check_lemma_latt(LatticeSpec(g), T)
    print(f"gram {g}, T = {T}: {chk.count} points <= {chk.bound:.1f}, distinct mod {chk.n}: {chk.injective}")

print("\nlang_bound(g=2, |S|=1, r=3) =", lang_bound(2, 1, 3))
print("with r <= 4g:", combined_lang_bound(2, 1))
for d in (3, 5, 7, 9):
    print(f"d = {d}: degree cap {rh_degree_cap((d - 1) // 2, 1)}, window top {d - 2}, "
          f"count bound over GF(3) {twist_bound(3, d)}")
