"""Elliptic curves over small finite fields and abstract base curves.

An elliptic curve is given by a short Weierstrass model ``y^2 = x^3 + Ax + B``
over ``F_{p^e}`` with ``p >= 5``; ``A`` and ``B`` are stored in the integer
encoding of :mod:`cmkit.gf`. An abstract curve is only a pair ``(q, P1)``,
the numerator of its zeta function.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import MutableMapping, Sequence

import sympy as sp

from .algebra import IntPoly
from .errors import (
    BadSpec,
    BadZetaNumerator,
    Char2Or3Unsupported,
    NegativeClosedPointCount,
    Singular,
)
from .gf import ENUMERATION_BOUND, PrimePowerField, count_points_naive, embed, gf_make
from .quadfield import QuadElement, QuadField, WeilNumber, prime_power_base

__all__ = [
    "EllipticCurveData",
    "CMData",
    "CurveDescriptor",
    "elliptic_curve",
    "abstract_curve",
    "curve_validate",
    "descriptor",
    "projective_line",
    "point_count",
    "trace_sequence",
    "classify",
    "frobenius_alpha",
    "base_change",
    "closed_point_counts",
    "curve_points_from_zeta",
]


@dataclass(frozen=True)
class CMData:
    """Squarefree part, field discriminant and conductor of ``a^2 - 4q = f^2 * disc``."""

    m: int
    field_disc: int
    conductor: int
    cm_disc: int


@dataclass(frozen=True)
class EllipticCurveData:
    field: PrimePowerField
    A: int
    B: int
    trace: int
    classification: str
    cm_disc: int
    alpha: WeilNumber | None
    cm: CMData | None

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def ordinary(self) -> bool:
        return self.classification == "ordinary"

    @property
    def P1(self) -> IntPoly:
        return IntPoly((1, -self.trace, self.q))

    def normalized_spec(self) -> dict:
        return {
            "p": str(self.field.p),
            "e": str(self.field.e),
            "model": "short-weierstrass",
            "A": str(self.A),
            "B": str(self.B),
        }

    @property
    def curve_id(self) -> str:
        blob = json.dumps(self.normalized_spec(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


@dataclass(frozen=True)
class CurveDescriptor:
    """A base curve known through ``q`` and the numerator ``P1`` of its zeta function."""

    q: int
    P1: IntPoly
    elliptic: EllipticCurveData | None = None

    @property
    def genus(self) -> int:
        return max(self.P1.degree, 0) // 2

    @property
    def kind(self) -> str:
        return "elliptic" if self.elliptic is not None else "abstract"

    def normalized_spec(self) -> dict:
        if self.elliptic is not None:
            return self.elliptic.normalized_spec()
        return {"q": str(self.q), "zeta_numerator": [str(c) for c in self.P1.coeffs]}


def trace_sequence(a: int, q: int, n: int) -> list[int]:
    """``a_0..a_n`` with ``a_0 = 2``, ``a_1 = a``, ``a_{k+1} = a a_k - q a_{k-1}``."""
    seq = [2, a]
    while len(seq) <= n:
        seq.append(a * seq[-1] - q * seq[-2])
    return seq[: n + 1]


def frobenius_alpha(a: int, q: int) -> WeilNumber:
    """Root of ``x^2 - a x + q`` with positive coefficient of ``sqrt(m)``."""
    D = a * a - 4 * q
    if D >= 0:
        raise ValueError(f"a^2 - 4q = {D} is not negative")
    m, c = _squarefree_decomposition(D)
    F = QuadField(m)
    return WeilNumber(QuadElement(F, Fraction(a, 2), Fraction(c, 2)), q, 1)


def _squarefree_decomposition(D: int) -> tuple[int, int]:
    """``D = c^2 * m`` with ``m`` squarefree and of the sign of D, ``c > 0``."""
    m, c = (1 if D > 0 else -1), 1
    for prime, k in sp.factorint(abs(D)).items():
        c *= prime ** (k // 2)
        if k % 2:
            m *= prime
    return m, c


def _cm_data(a: int, q: int) -> CMData:
    D = a * a - 4 * q
    m, c = _squarefree_decomposition(D)
    field_disc = QuadField(m).disc
    f = isqrt(D // field_disc)
    if f * f * field_disc != D:
        raise AssertionError(f"{D} is not a square times {field_disc}")
    return CMData(m=m, field_disc=field_disc, conductor=f, cm_disc=D)


def _make_elliptic(field: PrimePowerField, A: int, B: int) -> EllipticCurveData:
    a_el, b_el = field.element(A), field.element(B)
    if (a_el**3 * 4 + b_el**2 * 27).is_zero():
        raise Singular(f"y^2 = x^3 + {A}x + {B} is singular over {field!r}")
    count = count_points_naive(field, a_el, b_el)
    a = field.q + 1 - count
    if a * a > 4 * field.q:
        raise AssertionError(f"Hasse bound violated: a = {a}, q = {field.q}")
    ordinary = a % field.p != 0
    return EllipticCurveData(
        field=field,
        A=A,
        B=B,
        trace=a,
        classification="ordinary" if ordinary else "supersingular",
        cm_disc=a * a - 4 * field.q,
        alpha=frobenius_alpha(a, field.q) if ordinary else None,
        cm=_cm_data(a, field.q) if ordinary else None,
    )


def elliptic_curve(p: int, e: int, A: int, B: int) -> EllipticCurveData:
    """Validate ``y^2 = x^3 + Ax + B`` over ``F_{p^e}`` and compute its Frobenius data.

    For ``e = 1`` the coefficients are reduced mod p; otherwise they must be
    encodings in ``[0, p^e)``.
    """
    if p in (2, 3):
        raise Char2Or3Unsupported("short Weierstrass models need characteristic at least 5")
    field = gf_make(p, e)
    if e == 1:
        A, B = A % p, B % p
    elif not (0 <= A < field.q and 0 <= B < field.q):
        raise BadSpec(f"coefficients must be encodings in [0, {field.q})")
    return _make_elliptic(field, A, B)


def _real_weil_polynomial(P1: IntPoly, q: int) -> list[Fraction]:
    """``h`` with ``T^(2g) P1(1/T) = T^g h(T + q/T)``, coefficients constant first."""
    g = P1.degree // 2
    # Laurent coefficients of T^-g * L(T); L(T) has coefficient P1[2g-k] at T^k.
    laurent = {k - g: Fraction(P1[2 * g - k]) for k in range(2 * g + 1)}
    h = [Fraction(0)] * (g + 1)
    for j in range(g, -1, -1):
        c = laurent.get(j, Fraction(0))
        h[j] = c
        if c == 0:
            continue
        # subtract c * (T + q/T)^j
        for i in range(j + 1):
            k = j - 2 * i
            laurent[k] = laurent.get(k, Fraction(0)) - c * sp.binomial(j, i) * q**i
    return h


def _check_zeta_numerator(q: int, P1: IntPoly) -> None:
    if P1[0] != 1:
        raise BadZetaNumerator("P1 must have constant term 1")
    if P1.degree % 2:
        raise BadZetaNumerator("P1 must have even degree")
    g = P1.degree // 2
    for k in range(g + 1):
        if P1[2 * g - k] != q ** (g - k) * P1[k]:
            raise BadZetaNumerator(f"functional equation fails at coefficient {2 * g - k}")
    if g == 0:
        return
    h = _real_weil_polynomial(P1, q)
    x, y = sp.symbols("x y")
    hs = sp.Poly(list(reversed(h)), x, domain="QQ").sqf_part()
    if hs.count_roots() != hs.degree():
        raise BadZetaNumerator("some inverse root does not have absolute value sqrt(q)")
    # Roots x of h lie in [-2 sqrt q, 2 sqrt q] iff y = x^2 lies in [0, 4q].
    H = sp.Poly(sp.expand(hs.as_expr() * hs.as_expr().subs(x, -x)), x)
    Hy = sp.Poly(sum(c * y ** (k[0] // 2) for k, c in H.terms()), y).sqf_part()
    if Hy.count_roots(0, 4 * q) != Hy.count_roots():
        raise BadZetaNumerator("some inverse root does not have absolute value sqrt(q)")


def abstract_curve(q: int, P1: IntPoly | Sequence[int]) -> CurveDescriptor:
    """Validate an abstract base curve from ``q`` and its zeta numerator."""
    try:
        prime_power_base(q)
    except ValueError as exc:
        raise BadSpec(str(exc)) from None
    P1 = P1 if isinstance(P1, IntPoly) else IntPoly(tuple(P1))
    _check_zeta_numerator(q, P1)
    return CurveDescriptor(q=q, P1=P1)


def projective_line(q: int) -> CurveDescriptor:
    return abstract_curve(q, IntPoly.one())


def descriptor(E: EllipticCurveData) -> CurveDescriptor:
    return CurveDescriptor(q=E.q, P1=E.P1, elliptic=E)


_ELLIPTIC_KEYS = {"p", "e", "model", "A", "B"}
_ABSTRACT_KEYS = {"q", "zeta_numerator"}


def _parse_int(value, key: str) -> int:
    if isinstance(value, bool):
        raise BadSpec(f"{key} must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            pass
    raise BadSpec(f"{key} must be a decimal integer string, got {value!r}")


def curve_validate(spec: dict) -> EllipticCurveData | CurveDescriptor:
    """Parse and validate a curve specification (the JSON object of a curve file)."""
    if not isinstance(spec, dict):
        raise BadSpec("curve specification must be a JSON object")
    keys = set(spec)
    if "zeta_numerator" in keys or "q" in keys:
        if keys != _ABSTRACT_KEYS:
            raise BadSpec(f"abstract curve keys must be {sorted(_ABSTRACT_KEYS)}, got {sorted(keys)}")
        coeffs = spec["zeta_numerator"]
        if not isinstance(coeffs, list):
            raise BadSpec("zeta_numerator must be a list")
        P1 = IntPoly(tuple(_parse_int(c, "zeta_numerator") for c in coeffs))
        return abstract_curve(_parse_int(spec["q"], "q"), P1)
    unknown = keys - _ELLIPTIC_KEYS
    if unknown or keys < {"p", "A", "B"}:
        raise BadSpec(f"unexpected or missing keys: {sorted(unknown or _ELLIPTIC_KEYS - keys)}")
    if spec.get("model", "short-weierstrass") != "short-weierstrass":
        raise BadSpec(f"unsupported model {spec['model']!r}")
    p = _parse_int(spec["p"], "p")
    e = _parse_int(spec.get("e", 1), "e")
    return elliptic_curve(p, e, _parse_int(spec["A"], "A"), _parse_int(spec["B"], "B"))


# Point counts

_POINT_CACHE: dict[tuple[str, int], int] = {}


def _naive_available(E: EllipticCurveData, n: int) -> bool:
    return E.field.q**n <= ENUMERATION_BOUND


def _count_naive(E: EllipticCurveData, n: int) -> int:
    big = gf_make(E.field.p, E.field.e * n)
    A = embed(E.field.element(E.A), big)
    B = embed(E.field.element(E.B), big)
    return count_points_naive(big, A, B)


def point_count(
    E: EllipticCurveData,
    n: int,
    method: str = "auto",
    cache: MutableMapping[tuple[str, int], int] | None = None,
) -> int:
    """``|E(F_{q^n})|``.

    ``method`` is ``"naive"`` (enumerate every pair over ``F_{q^n}``),
    ``"recurrence"`` (``q^n + 1 - a_n``), or ``"auto"``, which enumerates when
    ``q^n`` is within the enumeration bound, cross-checks against the
    recurrence, and otherwise uses the recurrence alone.
    """
    if n < 1:
        raise ValueError("extension degree n must be at least 1")
    recurrence = E.q**n + 1 - trace_sequence(E.trace, E.q, n)[n]
    if method == "recurrence":
        return recurrence
    if method == "naive":
        return _count_naive(E, n)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    store = _POINT_CACHE if cache is None else cache
    key = (E.curve_id, n)
    if key in store:
        return store[key]
    if _naive_available(E, n):
        count = _count_naive(E, n)
        if count != recurrence:
            raise AssertionError(f"naive count {count} != recurrence count {recurrence}")
    else:
        count = recurrence
    store[key] = count
    return count


def classify(E: EllipticCurveData) -> dict:
    """Ordinary/supersingular status and, when ordinary, the CM field data."""
    out = {
        "ordinary": E.ordinary,
        "trace": E.trace,
        "q": E.q,
        "cm_disc": E.cm_disc,
    }
    if E.ordinary:
        out.update(
            m=E.cm.m,
            field_disc=E.cm.field_disc,
            conductor=E.cm.conductor,
            alpha=E.alpha,
        )
    return out


def base_change(E: EllipticCurveData, n: int) -> EllipticCurveData:
    """The same model over ``F_{q^n}``, with its Frobenius data recomputed."""
    big = gf_make(E.field.p, E.field.e * n)
    A = int(embed(E.field.element(E.A), big))
    B = int(embed(E.field.element(E.B), big))
    return _make_elliptic(big, A, B)


# Closed points


def curve_points_from_zeta(C: CurveDescriptor, N: int) -> list[int]:
    """``|C(F_{q^n})| = q^n + 1 - p_n(P1)`` for ``n = 1..N``."""
    sums = C.P1.power_sums(N)
    out = []
    for n, s in enumerate(sums, start=1):
        if s.denominator != 1:
            raise AssertionError("non-integral power sum from an integer zeta numerator")
        out.append(C.q**n + 1 - int(s))
    return out


def closed_point_counts(C: CurveDescriptor, N: int, counts: Sequence[int] | None = None) -> list[int]:
    """Number ``b_n`` of closed points of degree ``n`` for ``n = 1..N``.

    ``counts`` optionally supplies ``|C(F_{q^n})|`` from another source; by
    default they are read off the zeta numerator. Inversion of
    ``sum_{d | n} d b_d = |C(F_{q^n})|``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    counts = list(counts) if counts is not None else curve_points_from_zeta(C, N)
    b: list[int] = []
    for n in range(1, N + 1):
        rest = counts[n - 1] - sum(d * b[d - 1] for d in range(1, n) if n % d == 0)
        if rest % n or rest < 0:
            raise NegativeClosedPointCount(f"degree-{n} closed point count {Fraction(rest, n)} is invalid")
        b.append(rest // n)
    return b
