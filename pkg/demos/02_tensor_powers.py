"""
Tensor powers of h^1 of a CM elliptic curve
===========================================

The g-fold tensor power of h^1(E) splits over the CM field F into pieces
indexed by (i, j): the i-th F-tensor power twisted by j. This script prints
the decomposition at both coefficient levels and compares the counts with
the two-term recurrence a(i, j) = a(i-1, j) + a(i+1, j-1).
"""

from cmkit.motive import cm_tensor_decompose, decomposition_report, kunneth

for g in range(1, 7):
    F_level = cm_tensor_decompose(g, "F")
    Q_level = cm_tensor_decompose(g, "Q")
    print(f"g = {g}")
    print("  over F:", ", ".join(f"{k} x {s.label()}" for s, k in F_level))
    print("  over Q:", ", ".join(f"{k} x {s.label()}" for s, k in Q_level))

# Where the recurrence and the honest counts part ways
for g in range(2, 7):
    rep = decomposition_report(g)
    for row in rep["discrepancies"]:
        print(f"g = {g}: {row}")

# H^2(E^2) and H^3(E^3)
print("\nH^2(E^2):", ", ".join(f"{k} x {s.label()}" for s, k in kunneth(2, 2)))
h3 = kunneth(3, 3)
print("H^3(E^3):", ", ".join(f"{k} x {s.label()}" for s, k in h3), f"(dimension {h3.eigen_count()})")
