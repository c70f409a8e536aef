"""
Matching decompositions by Frobenius polynomials
================================================

Summands (tensor_F^r h^1)(s) for CM fields Q(i), Q(sqrt(-2)), Q(sqrt(-7)) over
F_113 are identified by the quadratic polynomial (1 - a t)(1 - conj(a) t) with
a = q^-s alpha^r. Shuffling a list and matching it back recovers the shuffle;
changing a single entry breaks the match.
"""

import random

from cmkit.errors import NoMatch
from cmkit.motive import frobenius_polynomial, match_decompositions
from cmkit.quadfield import QuadField, ordinary_weil_integer

q = 113
alphas = {m: ordinary_weil_integer(QuadField(m), q) for m in (-1, -2, -7)}
for m, a in alphas.items():
    print(f"Q(sqrt({m})): alpha = {a.value.x} + {a.value.y} sqrt({m})")

left = [(-1, 1, 0), (-2, 2, 1), (-7, 3, -1), (-1, 0, 2)]
for e in left:
    print(e, [str(c) for c in frobenius_polynomial(e, q, alphas)])

rng = random.Random(0)
right = left[:]
rng.shuffle(right)
print("\nshuffled:", right)
print("sigma:", match_decompositions(left, right, q, alphas))

right[0] = (right[0][0], right[0][1], right[0][2] + 1)
try:
    match_decompositions(left, right, q, alphas)
except NoMatch as exc:
    print("after perturbing one entry:", exc)
