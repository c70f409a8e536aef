"""Tate classes, Picard numbers and rank predictions for constant families.

Every relation ``gamma * beta = q^i`` between an eigenvalue ``gamma`` of a
power of E and an eigenvalue ``beta`` of a base curve is decided without
building composite fields: ``q^i / gamma`` is an explicit element of the CM
field, and its minimal polynomial is divided out of ``P1(C)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .algebra import IntPoly, RatSeries, composed_product, primitive_minpoly, root_multiplicity
from .curves import CurveDescriptor, EllipticCurveData, closed_point_counts, point_count
from .errors import DegreeOutOfRange, NotOrdinary
from .motive import kunneth, summand_charpoly, summand_eigenvalues
from .quadfield import QuadElement

__all__ = [
    "RankReport",
    "LFunction",
    "EulerCheck",
    "tate_report",
    "tate_class_dim",
    "picard_number",
    "picard_decomposition",
    "hom_rank",
    "l_cohomological",
    "bb_rank",
    "l_euler_check",
]


@dataclass
class RankReport:
    E: EllipticCurveData
    g: int
    codim: int
    base: CurveDescriptor | None
    tate_dim: int | None = None
    predicted_chow_dim: int | None = None
    bb_rank: int | None = None
    prediction_only: bool = False
    witnesses: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "g": str(self.g),
            "codim": str(self.codim),
            "prediction_only": self.prediction_only,
            "witnesses": list(self.witnesses),
        }
        for key in ("tate_dim", "predicted_chow_dim", "bb_rank"):
            value = getattr(self, key)
            if value is not None:
                out[key] = str(value)
        return out


def _require_ordinary(E: EllipticCurveData) -> None:
    if not E.ordinary:
        raise NotOrdinary(f"trace {E.trace} is divisible by {E.p}")


def _fmt(z: QuadElement) -> str:
    if z.is_rational():
        return str(z.x)
    return f"{z.x}{'+' if z.y >= 0 else '-'}{abs(z.y)}*sqrt({z.F.m})"


def _minpoly(beta: QuadElement) -> IntPoly:
    if beta.is_rational():
        return primitive_minpoly(beta.x, None)
    return primitive_minpoly(beta.trace(), beta.norm())


def _pairing_count(P1: IntPoly, target: int, gamma: QuadElement) -> int:
    """Multiplicity of ``target / gamma`` as an eigenvalue of ``P1``."""
    beta = QuadElement(gamma.F, Fraction(target)) / gamma
    return root_multiplicity(P1, _minpoly(beta))


def tate_report(E: EllipticCurveData, g: int, i: int, base: CurveDescriptor | None) -> RankReport:
    _require_ordinary(E)
    d = g + (1 if base is not None else 0)
    if not 0 <= i <= d:
        raise DegreeOutOfRange(f"codimension {i} outside [0, {d}]")
    report = RankReport(E, g, i, base)
    target = E.q**i
    total = 0
    for s, mult in kunneth(g, 2 * i, base):
        eigs = summand_eigenvalues(s, E.alpha)
        if s.base:
            count = sum(_pairing_count(base.P1, target, gamma) for gamma in eigs)
            if count:
                report.witnesses.append(
                    f"{s.label()} x{mult}: q^{i}/gamma is a root of P1(C) for gamma in "
                    f"{{{', '.join(_fmt(z) for z in eigs)}}}, {count} per copy"
                )
        else:
            count = sum(1 for gamma in eigs if gamma == QuadElement(gamma.F, Fraction(target)))
            if count:
                report.witnesses.append(f"{s.label()} x{mult}: eigenvalue q^{i}, {count} per copy")
        total += count * mult
    report.tate_dim = total
    report.predicted_chow_dim = total
    return report


def tate_class_dim(E: EllipticCurveData, g: int, i: int, base: CurveDescriptor | None = None) -> int:
    """Multiplicity of the eigenvalue ``q^i`` on ``H^{2i}`` of ``E^g`` (times C)."""
    return tate_report(E, g, i, base).tate_dim


def hom_rank(C: CurveDescriptor, E: EllipticCurveData) -> int:
    """Number of pairings ``alpha' * beta = q`` with ``alpha'`` in ``{alpha, conj(alpha)}``."""
    _require_ordinary(E)
    a = E.alpha.value
    return sum(_pairing_count(C.P1, E.q, gamma) for gamma in (a, a.conj()))


def picard_decomposition(E: EllipticCurveData, g: int, base: CurveDescriptor | None = None) -> dict:
    """Neron-Severi rank split as ``NS(E^g) + NS(C) + Hom(E^g, Jac C)``."""
    _require_ordinary(E)
    terms = {"factors": g, "endomorphism_pairs": 2 * comb(g, 2)}
    if base is not None:
        terms["base"] = 1
        terms["hom"] = g * hom_rank(base, E)
    return terms


def picard_number(E: EllipticCurveData, g: int, base: CurveDescriptor | None = None) -> int:
    """Tate-class count on ``H^2``, checked against the product decomposition."""
    rho = tate_class_dim(E, g, 1, base)
    closed = sum(picard_decomposition(E, g, base).values())
    if rho != closed:
        raise AssertionError(f"Tate count {rho} disagrees with the product decomposition {closed}")
    return rho


@dataclass(frozen=True)
class LFunction:
    """``numerator / denominator`` in ``t = q^-s``."""

    numerator: IntPoly
    denominator: IntPoly
    codim: int
    q: int

    def series(self, N: int) -> RatSeries:
        num = RatSeries.from_poly(self.numerator, N + 1)
        den = RatSeries.from_poly(self.denominator, N + 1)
        return num * den.inverse()

    def to_json(self) -> dict:
        return {
            "numerator": [str(c) for c in self.numerator.coeffs],
            "denominator": [str(c) for c in self.denominator.coeffs],
        }


def _middle_eigenvalues(E: EllipticCurveData, g: int, i: int) -> list[tuple[QuadElement, int]]:
    return [(z, k) for s, k in kunneth(g, 2 * i - 1) for z in summand_eigenvalues(s, E.alpha)]


def _check_l_range(E: EllipticCurveData, g: int, i: int) -> None:
    _require_ordinary(E)
    if not 1 <= i <= g:
        raise DegreeOutOfRange(f"codimension {i} outside [1, {g}]")


def l_cohomological(E: EllipticCurveData, g: int, i: int, C: CurveDescriptor) -> LFunction:
    """L-function of ``H^{2i-1}(E^g)`` over the function field of C, as a rational function.

    Numerator ``det(1 - Frob t | H1(C) (x) V)``, denominator ``chi_V(t) chi_V(qt)``.
    """
    _check_l_range(E, g, i)
    chi = IntPoly.one()
    for s, k in kunneth(g, 2 * i - 1):
        chi = chi * summand_charpoly(s, E) ** k
    numerator = composed_product(C.P1, chi)
    denominator = chi * chi.scale_variable(E.q)
    # weights 2i-1 and 2i+1 never meet q^i
    for z, _ in _middle_eigenvalues(E, g, i):
        if z.norm() != E.q ** (2 * i - 1):
            raise AssertionError(f"eigenvalue {z!r} has the wrong weight")
    if denominator(Fraction(1, E.q**i)) == 0:
        raise AssertionError("denominator vanishes at t = q^-i")
    return LFunction(numerator, denominator, i, E.q)


def bb_rank(E: EllipticCurveData, g: int, i: int, C: CurveDescriptor) -> RankReport:
    """Order of vanishing of the L-function at ``t = q^-i``.

    Counted as pairings ``beta = q^i / gamma`` over the eigenvalues ``gamma`` of
    ``H^{2i-1}(E^g)``, and re-checked as the multiplicity of ``1 - q^i t`` in
    the numerator.
    """
    L = l_cohomological(E, g, i, C)
    report = RankReport(E, g, i, C, prediction_only=(g >= 2 and i >= 2))
    target = E.q**i
    total = 0
    seen: dict[QuadElement, int] = {}
    for z, k in _middle_eigenvalues(E, g, i):
        seen[z] = seen.get(z, 0) + k
    for z, k in sorted(seen.items(), key=lambda zk: (zk[0].x, zk[0].y)):
        c = _pairing_count(C.P1, target, z)
        if c:
            report.witnesses.append(
                f"gamma = {_fmt(z)} (mult {k}): q^{i}/gamma = {_fmt(QuadElement(z.F, Fraction(target)) / z)} "
                f"is a root of P1(C) of multiplicity {c}"
            )
        total += c * k
    direct = root_multiplicity(L.numerator, IntPoly.linear(target))
    if direct != total:
        raise AssertionError(f"pairing count {total} != order of vanishing {direct}")
    report.bb_rank = total
    return report


@dataclass
class EulerCheck:
    passed: bool
    order: int
    first_mismatch: int | None = None
    euler: list[Fraction] = field(default_factory=list)
    cohomological: list[Fraction] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "passed": self.passed,
            "order": str(self.order),
            "euler": [str(c) for c in self.euler],
            "cohomological": [str(c) for c in self.cohomological],
        }
        if self.first_mismatch is not None:
            out["first_mismatch"] = str(self.first_mismatch)
        return out


def _power_charpoly(chi: IntPoly, d: int) -> IntPoly:
    """``det(1 - Frob^d u | V)`` from the power sums of ``chi``."""
    n = chi.degree
    sums = chi.power_sums(n * d)
    return IntPoly.from_power_sums([sums[d * k - 1] for k in range(1, n + 1)], n)


def l_euler_check(
    E: EllipticCurveData,
    g: int,
    i: int,
    C: CurveDescriptor,
    N: int,
    counts: Sequence[int] | None = None,
) -> EulerCheck:
    """Compare the Euler product over closed points of C with :func:`l_cohomological`.

    The Euler side multiplies ``det(1 - Frob^d t^d | V)^(-b_d)`` over degrees
    ``d <= N``, where ``b_d`` counts closed points of degree d. The point
    counts of C come from ``counts`` if given, otherwise from enumeration
    (elliptic C) or the zeta numerator (abstract C).
    """
    if N > 12:
        raise ValueError("order above 12 is outside the supported range")
    _check_l_range(E, g, i)
    if counts is None and C.elliptic is not None:
        counts = [point_count(C.elliptic, n) for n in range(1, N + 1)]
    b = closed_point_counts(C, N, counts)
    chi = IntPoly.one()
    for s, k in kunneth(g, 2 * i - 1):
        chi = chi * summand_charpoly(s, E) ** k
    euler = RatSeries.one(N + 1)
    for d in range(1, N + 1):
        if b[d - 1] == 0:
            continue
        local = RatSeries.from_poly(_power_charpoly(chi, d), N + 1).substitute_power(d)
        euler = euler * local ** (-b[d - 1])
    coh = l_cohomological(E, g, i, C).series(N)
    mismatch = next((k for k in range(N + 1) if euler[k] != coh[k]), None)
    return EulerCheck(mismatch is None, N, mismatch, list(euler.coeffs), list(coh.coeffs))
