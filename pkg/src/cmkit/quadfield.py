"""Imaginary quadratic fields, Weil integers and p-adic valuations.

An element ``x + y*sqrt(m)`` is held as two exact rationals. Valuations at
the primes above a split ``p`` are read off after embedding into ``Z/p^N``
with a Hensel-lifted square root of ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from sympy import factorint, isprime

from .errors import DivisionByZero, NotOrdinary, NotSplit, ZeroElement

__all__ = [
    "QuadField",
    "QuadElement",
    "WeilNumber",
    "qf_ops",
    "splitting_type",
    "padic_valuations",
    "weil_enumerate",
    "verify_lemma62",
    "NonPowerReport",
    "sqrt_mod_prime",
    "hensel_sqrt",
    "prime_power_base",
    "ordinary_weil_integer",
]


def _squarefree(n: int) -> bool:
    return all(k == 1 for k in factorint(abs(n)).values())


def prime_power_base(q: int) -> tuple[int, int]:
    """``(p, e)`` with ``q = p^e``; ValueError if q is not a prime power."""
    f = factorint(q)
    if q < 2 or len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, e),) = f.items()
    return p, e


@dataclass(frozen=True)
class QuadField:
    m: int

    def __post_init__(self):
        if self.m >= 0 or not _squarefree(self.m):
            raise ValueError(f"m = {self.m} is not a negative squarefree integer")

    @property
    def disc(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m

    def __call__(self, x, y=0) -> QuadElement:
        return QuadElement(self, Fraction(x), Fraction(y))

    def __repr__(self) -> str:
        return f"Q(sqrt({self.m}))"


@dataclass(frozen=True)
class QuadElement:
    F: QuadField
    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __repr__(self) -> str:
        return f"{self.x} + {self.y}*sqrt({self.F.m})"

    def _coerce(self, other) -> QuadElement:
        if isinstance(other, QuadElement):
            if other.F != self.F:
                raise ValueError(f"elements of {self.F!r} and {other.F!r}")
            return other
        return QuadElement(self.F, Fraction(other))

    def __add__(self, other) -> QuadElement:
        o = self._coerce(other)
        return QuadElement(self.F, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self) -> QuadElement:
        return QuadElement(self.F, -self.x, -self.y)

    def __sub__(self, other) -> QuadElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> QuadElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> QuadElement:
        o = self._coerce(other)
        m = self.F.m
        return QuadElement(self.F, self.x * o.x + m * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def conj(self) -> QuadElement:
        return QuadElement(self.F, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.F.m * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_rational(self) -> bool:
        return self.y == 0

    def inv(self) -> QuadElement:
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero")
        c = self.conj()
        return QuadElement(self.F, c.x / n, c.y / n)

    def __truediv__(self, other) -> QuadElement:
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other) -> QuadElement:
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int) -> QuadElement:
        base = self if n >= 0 else self.inv()
        n = abs(n)
        result = QuadElement(self.F, Fraction(1))
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_integral(self) -> bool:
        """Algebraic integer iff trace and norm are rational integers."""
        return self.trace().denominator == 1 and self.norm().denominator == 1


@dataclass(frozen=True)
class WeilNumber:
    """An algebraic integer ``value`` with ``value * conj(value) = q^weight``."""

    value: QuadElement
    q: int
    weight: int

    def __post_init__(self):
        if self.weight < 0:
            raise ValueError("weight must be nonnegative")
        if self.value.norm() != self.q**self.weight:
            raise ValueError(f"{self.value!r} has norm {self.value.norm()}, not {self.q}^{self.weight}")
        if not self.value.is_integral():
            raise ValueError(f"{self.value!r} is not an algebraic integer")

    @property
    def F(self) -> QuadField:
        return self.value.F

    def conj(self) -> WeilNumber:
        return WeilNumber(self.value.conj(), self.q, self.weight)

    def __pow__(self, n: int) -> WeilNumber:
        return WeilNumber(self.value**n, self.q, self.weight * n)

    def __mul__(self, other: WeilNumber) -> WeilNumber:
        if other.q != self.q:
            raise ValueError("Weil numbers for different q")
        return WeilNumber(self.value * other.value, self.q, self.weight + other.weight)


def qf_ops(a: QuadElement, b: QuadElement | None, op: str):
    """Dispatch a field operation by name; unary ops ignore ``b``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "conj":
        return a.conj()
    if op == "norm":
        return a.norm()
    if op == "trace":
        return a.trace()
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown operation {op!r}")


def _kronecker(d: int, p: int) -> int:
    if p == 2:
        if d % 2 == 0:
            return 0
        return 1 if d % 8 in (1, 7) else -1
    r = pow(d % p, (p - 1) // 2, p)
    return 0 if r == 0 else (1 if r == 1 else -1)


def splitting_type(F: QuadField, p: int) -> str:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if F.disc % p == 0:
        return "ramified"
    return "split" if _kronecker(F.disc, p) == 1 else "inert"


def sqrt_mod_prime(a: int, p: int) -> int:
    """Least nonnegative square root of ``a`` modulo an odd prime (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def hensel_sqrt(a: int, p: int, N: int, s0: int | None = None) -> int:
    """Square root of ``a`` modulo ``p^N`` lifting ``s0`` (default the least root mod p)."""
    s = sqrt_mod_prime(a, p) if s0 is None else s0 % p
    if s == 0:
        raise ValueError("cannot lift a root of multiplicity two")
    mod = p
    while mod < p**N:
        mod = min(mod * mod, p**N)
        s = (s - (s * s - a) * pow(2 * s, -1, mod)) % mod
    return s % p**N


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise ZeroElement("valuation of zero")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _as_element(alpha) -> QuadElement:
    return alpha.value if isinstance(alpha, WeilNumber) else alpha


def padic_valuations(alpha: WeilNumber | QuadElement, p: int) -> tuple[int, int]:
    """Valuations of ``alpha`` at the two primes of ``O_F`` over a split ``p``.

    The first prime is the one singled out by the least nonnegative square
    root of ``m`` mod ``p`` (for odd ``p``), or by the root 0 of
    ``w^2 - w - (m-1)/4`` mod 2 (for ``p = 2``). The two valuations add up to
    ``v_p(norm(alpha))``.
    """
    a = _as_element(alpha)
    F = a.F
    if splitting_type(F, p) != "split":
        raise NotSplit(f"{p} does not split in {F!r}")
    if a.is_zero():
        raise ZeroElement("valuations of zero")
    den = a.x.denominator * a.y.denominator
    dv = _vp(den, p)
    X, Y = int(a.x * den), int(a.y * den)
    # a = (X + Y sqrt(m)) / den with X + Y sqrt(m) in Z[sqrt(m)].
    nv = _vp(X * X - F.m * Y * Y, p)
    N = nv + 2
    mod = p**N
    if p == 2:
        # sqrt(m) = 2w - 1 with w the lifted root of w^2 - w - (m-1)/4.
        s = (2 * _hensel_omega_root(F.m, N + 1) - 1) % mod
    else:
        s = hensel_sqrt(F.m, p, N)
    # Both images are nonzero mod p^N since each valuation is at most nv < N.
    v1 = _vp((X + Y * s) % mod, p)
    v2 = _vp((X - Y * s) % mod, p)
    if v1 + v2 != nv:
        raise AssertionError(f"valuations {v1}+{v2} disagree with v_p(norm) = {nv}")
    return v1 - dv, v2 - dv


def _hensel_omega_root(m: int, N: int) -> int:
    """Root of ``w^2 - w - (m-1)/4`` modulo ``2^N`` lifting the root 0 mod 2."""
    c = (m - 1) // 4
    r, mod = 0, 2
    while mod < 2**N:
        mod = min(mod * mod, 2**N)
        r = (r - (r * r - r - c) * pow(2 * r - 1, -1, mod)) % mod
    return r


def weil_enumerate(F: QuadField, q: int, w: int) -> list[WeilNumber]:
    """All integers of ``O_F`` of norm ``q^w``, ordered by ``y`` then ``x``.

    When ``m = 1 mod 4`` the half-integer lattice is covered by working with
    doubled coordinates ``x'^2 - m y'^2 = 4 q^w`` with ``x' = y' mod 2``.
    """
    if w < 0:
        raise ValueError("weight must be nonnegative")
    target = q**w
    half = F.m % 4 == 1
    scale = 2 if half else 1
    T = target * scale * scale
    ymax = isqrt(T // -F.m)
    out = []
    for y in range(-ymax, ymax + 1):
        rest = T + F.m * y * y
        if rest < 0:
            continue
        x = isqrt(rest)
        if x * x != rest:
            continue
        for xx in sorted({-x, x}):
            if half and (xx - y) % 2:
                continue
            out.append(WeilNumber(QuadElement(F, Fraction(xx, scale), Fraction(y, scale)), q, w))
    return out


@dataclass
class NonPowerReport:
    passed: bool
    checks: int = 0
    witnesses: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": str(self.checks), "witnesses": list(self.witnesses)}


def _is_power_of_q(z: QuadElement, q: int) -> bool:
    if not z.is_rational() or z.x.denominator != 1 or z.x < 1:
        return False
    n = int(z.x)
    while n % q == 0:
        n //= q
    return n == 1


def verify_lemma62(alpha: WeilNumber, R: int, S: int) -> NonPowerReport:
    """Exhaustive check of the non-power relations for an ordinary Frobenius ``alpha``.

    1. ``alpha^r * beta`` is never a power of q, for ``1 <= r <= R`` and every
       Weil q-integer ``beta`` of weight ``w < r`` in F (this includes the
       rational ones, ``+-q^(w/2)``).
    2. ``q^s / alpha^(2s-1)`` is not integral for ``2 <= s <= S``; decided from
       the valuations at the primes over p and confirmed by exact division.
    3. ``alpha^r * beta != q^s`` for weight-one ``beta`` other than ``alpha`` and
       its conjugate, ``|r| <= R``, ``|s| <= S``.
    """
    q, F = alpha.q, alpha.F
    p, e = prime_power_base(q)
    a = alpha.value
    if alpha.weight != 1:
        raise ValueError("alpha must have weight one")
    if a.trace().denominator != 1 or int(a.trace()) % p == 0:
        raise NotOrdinary(f"trace {a.trace()} is divisible by {p}")
    if R < 1 or S < 1:
        raise ValueError("bounds must be at least 1")
    report = NonPowerReport(passed=True)

    def fail(msg: str):
        report.passed = False
        report.witnesses.append(msg)

    betas_by_weight = {w: weil_enumerate(F, q, w) for w in range(R)}
    for r in range(1, R + 1):
        ar = a**r
        for w in range(r):
            for beta in betas_by_weight[w]:
                report.checks += 1
                if _is_power_of_q(ar * beta.value, q):
                    fail(f"alpha^{r} * ({beta.value!r}) is a power of {q}")

    for s in range(2, S + 1):
        report.checks += 1
        power = a ** (2 * s - 1)
        v_alpha = padic_valuations(power, p)
        v_q = (s * e, s * e)
        by_valuation = all(vq >= va for vq, va in zip(v_q, v_alpha))
        quotient = QuadElement(F, Fraction(q**s)) / power
        if by_valuation or quotient.is_integral():
            fail(f"q^{s}/alpha^{2 * s - 1} = {quotient!r} is integral")

    others = [b for b in weil_enumerate(F, q, 1) if b.value not in (a, a.conj())]
    for beta in others:
        for r in range(-R, R + 1):
            ar_beta = a**r * beta.value
            for s in range(-S, S + 1):
                report.checks += 1
                if ar_beta == QuadElement(F, Fraction(q) ** s):
                    fail(f"alpha^{r} * ({beta.value!r}) = q^{s}")
    return report


def ordinary_weil_integer(F: QuadField, q: int) -> WeilNumber:
    """Canonical ordinary weight-one Weil q-integer of F.

    Among the elements of norm ``q`` with trace prime to ``p``, the first in
    enumeration order having positive trace and positive ``sqrt(m)``
    coefficient. Raises NotOrdinary if F has none.
    """
    p, _ = prime_power_base(q)
    for w in weil_enumerate(F, q, 1):
        t = w.value.trace()
        if w.value.y > 0 and t > 0 and int(t) % p:
            return w
    raise NotOrdinary(f"{F!r} has no ordinary Weil {q}-integer of weight one")
