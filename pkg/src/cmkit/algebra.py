"""Exact integer polynomials, composed products and truncated power series.

Polynomials are stored constant term first and are read in the
reciprocal-root convention: the factor ``1 - g*t`` has eigenvalue ``g``.
A characteristic polynomial ``det(1 - Frob*t | V)`` is therefore an
``IntPoly`` whose eigenvalues are the Frobenius eigenvalues on ``V``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NonDivisible, ZeroConstantTerm

__all__ = [
    "IntPoly",
    "RatSeries",
    "poly_arith",
    "composed_product",
    "resultant",
    "series_log_zeta",
    "root_multiplicity",
    "primitive_minpoly",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Univariate polynomial with arbitrary-precision integer coefficients."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        trimmed = _trim(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", trimmed)

    @classmethod
    def one(cls) -> IntPoly:
        return cls((1,))

    @classmethod
    def linear(cls, eigenvalue: int) -> IntPoly:
        """The factor ``1 - eigenvalue*t``."""
        return cls((1, -eigenvalue))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other: IntPoly) -> IntPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[k] + other[k] for k in range(n))

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = IntPoly.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod_exact(self, other: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Long division over Z; raises NonDivisible if a step leaves Z."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db, lead = other.degree, other.coeffs[-1]
        quot = [0] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            if c % lead:
                raise NonDivisible(f"{self} is not divisible by {other} over Z")
            f = c // lead
            quot[k] = f
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= f * b
        return IntPoly(quot), IntPoly(rem)

    def exact_div(self, other: IntPoly) -> IntPoly:
        quot, rem = self.divmod_exact(other)
        if not rem.is_zero():
            raise NonDivisible(f"{self} is not divisible by {other}: remainder {rem}")
        return quot

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def scale_variable(self, c: int) -> IntPoly:
        """``P(c*t)``; multiplies every eigenvalue by ``c``."""
        return IntPoly(a * c**k for k, a in enumerate(self.coeffs))

    def reversed(self, degree: int | None = None) -> IntPoly:
        d = self.degree if degree is None else degree
        return IntPoly(self[d - k] for k in range(d + 1))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPoly:
        """Divide out the content; the sign is fixed by a positive first nonzero coefficient."""
        g = self.content()
        if g == 0:
            return self
        first = next(c for c in self.coeffs if c)
        if first < 0:
            g = -g
        return IntPoly(c // g for c in self.coeffs)

    def power_sums(self, n: int) -> list[Fraction]:
        """Eigenvalue power sums ``p_1..p_n`` via Newton's identities.

        A constant term other than 1 is divided out first, so the sums may
        be rational.
        """
        c0 = self[0]
        if c0 == 0:
            raise ZeroConstantTerm("power sums need a nonzero constant term")
        c = [Fraction(self[k], c0) for k in range(n + 1)]
        p: list[Fraction] = []
        for k in range(1, n + 1):
            s = -k * c[k]
            for j in range(1, k):
                s -= c[j] * p[k - j - 1]
            p.append(s)
        return p

    @classmethod
    def from_power_sums(cls, sums: Sequence[int | Fraction], degree: int) -> IntPoly:
        """Inverse of :meth:`power_sums` for a polynomial with constant term 1."""
        c = [Fraction(1)]
        for k in range(1, degree + 1):
            s = Fraction(sums[k - 1])
            for j in range(1, k):
                s += c[j] * sums[k - j - 1]
            c.append(-s / k)
        if any(x.denominator != 1 for x in c):
            raise ValueError("power sums do not come from an integer polynomial")
        return cls(int(x) for x in c)


def poly_arith(a: IntPoly, b: IntPoly, op: str) -> IntPoly:
    """Dispatch ``add``, ``mul`` or ``exact_div`` on two polynomials."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return a.exact_div(b)
    raise ValueError(f"unknown polynomial operation {op!r}")


# Determinants and resultants over Z[x]


def _bareiss_det(matrix: list[list[IntPoly]]) -> IntPoly:
    """Fraction-free Gaussian elimination; every division is exact in Z[x]."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return IntPoly.one()
    sign = 1
    prev = IntPoly.one()
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return IntPoly()
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
        prev = pivot
    return m[n - 1][n - 1] * sign


def resultant(f: Sequence[IntPoly], g: Sequence[IntPoly]) -> IntPoly:
    """Resultant in y of ``f(y) = sum f[i] y^i`` and ``g(y) = sum g[j] y^j``.

    Coefficients are polynomials in a second variable x; the Sylvester
    determinant is evaluated with Bareiss elimination over Z[x].
    """
    f = list(_trim_polys(f))
    g = list(_trim_polys(g))
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return IntPoly()
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    zero = IntPoly()
    rows = []
    for r in range(n):
        row = [zero] * size
        for i, c in enumerate(reversed(f)):
            row[r + i] = c
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for j, c in enumerate(reversed(g)):
            row[r + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def _trim_polys(cs: Sequence[IntPoly]) -> list[IntPoly]:
    cs = list(cs)
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _companion_resultant(monic: IntPoly, g: Sequence[IntPoly]) -> IntPoly:
    """``Res_y(monic, g) = det g(x, C)`` with ``C`` the companion matrix of ``monic``."""
    m = monic.degree
    # C acts on the basis 1, y, ..., y^(m-1) of Z[y]/(monic) by multiplication by y.
    comp = [[0] * m for _ in range(m)]
    for r in range(1, m):
        comp[r][r - 1] = 1
    for r in range(m):
        comp[r][m - 1] = -monic[r]
    power = [[int(r == c) for c in range(m)] for r in range(m)]
    acc: list[list[IntPoly]] = [[IntPoly() for _ in range(m)] for _ in range(m)]
    for k, coeff in enumerate(g):
        if not coeff.is_zero():
            for r in range(m):
                for c in range(m):
                    if power[r][c]:
                        acc[r][c] = acc[r][c] + coeff * power[r][c]
        power = [[sum(power[r][i] * comp[i][c] for i in range(m)) for c in range(m)] for r in range(m)]
    return _bareiss_det(acc)


def composed_product(P: IntPoly, Q: IntPoly) -> IntPoly:
    """Polynomial whose eigenvalues are all products ``g*d`` of eigenvalues of P and Q.

    With ``P = c_P * prod(1 - g t)`` and ``Q = c_Q * prod(1 - d t)`` the result is
    ``c_P^deg(Q) * c_Q^deg(P) * prod(1 - g d t)``, of degree ``deg P * deg Q``.
    It is the reversal of ``Res_y(P*(y), y^n Q*(x/y))`` where ``*`` denotes
    reversal.
    """
    if P[0] == 0 or Q[0] == 0:
        raise ZeroConstantTerm("composed_product needs nonzero constant terms")
    if abs(Q[0]) == 1 and abs(P[0]) != 1:
        P, Q = Q, P
    m, n = P.degree, Q.degree
    if m == 0 or n == 0:
        return IntPoly((P[0] ** n * Q[0] ** m,))
    p_rev = P.reversed()
    # g(x, y) = sum_k b_k x^(n-k) y^k, as a polynomial in y with Z[x] coefficients.
    g = [IntPoly([0] * (n - k) + [Q[k]]) for k in range(n + 1)]
    if abs(P[0]) == 1:
        res = _companion_resultant(p_rev * P[0], g)
        if P[0] == -1 and n % 2:
            res = -res
    else:
        res = resultant([IntPoly((c,)) for c in p_rev.coeffs], g)
    return res.reversed(m * n)


# Truncated power series


@dataclass(frozen=True)
class RatSeries:
    """Power series with rational coefficients, truncated at ``order`` terms."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_poly(cls, poly: IntPoly, order: int) -> RatSeries:
        return cls(tuple(poly[k] for k in range(order)))

    @classmethod
    def one(cls, order: int) -> RatSeries:
        return cls(tuple(int(k == 0) for k in range(order)))

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def _check(self, other: RatSeries) -> int:
        if self.order != other.order:
            raise ValueError("series of different truncation orders")
        return self.order

    def __add__(self, other: RatSeries) -> RatSeries:
        self._check(other)
        return RatSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> RatSeries:
        return RatSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other: RatSeries) -> RatSeries:
        return self + (-other)

    def __mul__(self, other: RatSeries) -> RatSeries:
        n = self._check(other)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.coeffs[j]
        return RatSeries(tuple(out))

    def inverse(self) -> RatSeries:
        a = self.coeffs
        if not a or a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [1 / a[0]]
        for k in range(1, self.order):
            s = sum(a[j] * out[k - j] for j in range(1, k + 1))
            out.append(-s / a[0])
        return RatSeries(tuple(out))

    def __pow__(self, n: int) -> RatSeries:
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = RatSeries.one(self.order)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_power(self, d: int) -> RatSeries:
        """``f(t^d)`` truncated to the same order."""
        out = [Fraction(0)] * self.order
        for k, c in enumerate(self.coeffs):
            if k * d >= self.order:
                break
            out[k * d] = c
        return RatSeries(tuple(out))

    def log_derivative(self) -> RatSeries:
        """``t f'(t) / f(t)``."""
        deriv = RatSeries(tuple(k * c for k, c in enumerate(self.coeffs)))
        return deriv * self.inverse()

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integral coefficients")
        return [int(c) for c in self.coeffs]


def series_log_zeta(Z: Sequence[tuple[IntPoly, int]], N: int) -> RatSeries:
    """``t d/dt log`` of ``prod P^e`` over ``(P, e)`` pairs, through ``t^N``.

    For a zeta function ``prod_n P_n^((-1)^(n+1))`` the coefficient of ``t^n``
    is the number of ``F_{q^n}``-points. The exponent ``e`` is +1 for a
    numerator factor and -1 for a denominator factor.
    """
    total = RatSeries(tuple([0] * (N + 1)))
    for poly, exponent in Z:
        if poly[0] != 1:
            raise ValueError(f"zeta factor {poly} does not have constant term 1")
        total = total + RatSeries.from_poly(poly, N + 1).log_derivative() * _scalar(exponent, N + 1)
    return total


def _scalar(c: int, order: int) -> RatSeries:
    return RatSeries(tuple([c] + [0] * (order - 1)))


def root_multiplicity(P: IntPoly, mu: IntPoly) -> int:
    """Largest k with ``mu^k`` dividing ``P`` over Q.

    ``mu`` is reduced to its primitive part, so by Gauss's lemma divisibility
    over Q coincides with exact division over Z.
    """
    if P.is_zero():
        raise ValueError("multiplicity in the zero polynomial is unbounded")
    mu = mu.primitive()
    if mu.degree < 1:
        return 0
    k = 0
    while True:
        try:
            P = P.exact_div(mu)
        except NonDivisible:
            return k
        k += 1


def primitive_minpoly(trace: Fraction, norm: Fraction | None) -> IntPoly:
    """Primitive integer form of ``(1 - b t)(1 - b' t)`` from trace and norm of ``b``.

    With ``norm=None`` the element is rational and equal to ``trace``; the
    result is then the primitive form of ``1 - trace*t``.
    """
    if norm is None:
        b = Fraction(trace)
        return IntPoly((b.denominator, -b.numerator)).primitive()
    t, n = Fraction(trace), Fraction(norm)
    den = _lcm(t.denominator, n.denominator)
    return IntPoly((den, -int(t * den), int(n * den))).primitive()


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
