"""
The curve y^2 = x^3 + x over F_5
================================

Point counts, Frobenius data and the zeta function of a small ordinary CM
curve, with every number checked two ways.
"""

from cmkit import assemble_zeta, classify, curve_validate, point_count, series_log_zeta

E = curve_validate({"p": "5", "e": "1", "model": "short-weierstrass", "A": "1", "B": "0"})

# Counting by brute force over F_{5^n} and by the trace recurrence must agree.
for n in range(1, 7):
    naive = point_count(E, n, method="naive")
    rec = point_count(E, n, method="recurrence")
    print(f"|E(F_5^{n})| = {naive:>6}   recurrence: {rec}")

info = classify(E)
alpha = info["alpha"].value
print(f"\ntrace {info['trace']}, a^2 - 4q = {info['cm_disc']}, CM by Q(sqrt({info['m']})), conductor {info['conductor']}")
print(f"Frobenius alpha = {alpha.x} + {alpha.y}*sqrt({info['m']}), norm {alpha.norm()}")

# The zeta function of E^g factors through the Kunneth decomposition.
for g in (1, 2, 3):
    Z = assemble_zeta(E, g)
    counts = series_log_zeta(Z.factors(), 4).as_ints()[1:]
    print(f"\nE^{g}: degrees of P_n = {[P.degree for P in Z.parts]}")
    print(f"  points over F_5^n, n <= 4: {counts}")
    print(f"  |E(F_5^n)|^{g}:              {[point_count(E, n) ** g for n in range(1, 5)]}")
