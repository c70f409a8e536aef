"""
Ranks of constant families over function fields
===============================================

For X = E^g viewed over the function field of a curve C, the L-function of
H^{2i-1} is a ratio of integer polynomials whose order of vanishing at
t = q^-i is a count of eigenvalue pairings. We compute it for a few bases and
confirm each L-function against its Euler product over closed points.
"""

from cmkit import abstract_curve, bb_rank, curve_validate, descriptor, hom_rank, l_euler_check, picard_number, projective_line
from cmkit.ranks import tate_report

E = curve_validate({"p": "5", "e": "1", "model": "short-weierstrass", "A": "1", "B": "0"})
bases = {
    "P^1": projective_line(5),
    "E itself": descriptor(E),
    "quadratic twist": abstract_curve(5, [1, 2, 5]),
    "genus 2, E x E isogeny class": abstract_curve(5, [1, -4, 14, -20, 25]),
}

for g in range(1, 5):
    print(f"Picard number of E^{g}: {picard_number(E, g)}")

rep = tate_report(E, 2, 1, None)
print("\nTate classes on H^2(E^2):")
for w in rep.witnesses:
    print("  ", w)

for name, C in bases.items():
    print(f"\nbase {name} (genus {C.genus}); hom rank {hom_rank(C, E)}")
    for g, i in [(1, 1), (2, 1), (2, 2)]:
        r = bb_rank(E, g, i, C)
        check = l_euler_check(E, g, i, C, 6)
        flag = " (prediction only)" if r.prediction_only else ""
        print(f"  g={g} i={i}: order of vanishing {r.bb_rank}{flag}; Euler product agrees to t^6: {check.passed}")
