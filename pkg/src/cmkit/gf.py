"""Small finite fields ``F_{p^e}``.

Elements are coordinate vectors over ``F_p`` in the power basis of a fixed
modulus; they also have an integer encoding ``sum c_k p^k`` which is what
the curve module stores. The vectorised helpers at the bottom operate on
whole fields at once (arrays of shape ``(e, N)``) and back the brute-force
point counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
from sympy import isprime

from .errors import EvenCharacteristic, NotPrime, TooLarge

ENUMERATION_BOUND = 2**22

__all__ = [
    "ENUMERATION_BOUND",
    "PrimePowerField",
    "GFElement",
    "gf_make",
    "quad_character",
    "is_irreducible",
    "embed",
    "count_points_naive",
]


# Polynomials over F_p as coefficient lists, constant term first.


def _norm(f: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _norm(out, p)


def _pmod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _norm(a, p)
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for k, fk in enumerate(f):
            a[shift + k] = (a[shift + k] - c * fk) % p
        a = _norm(a, p)
    return a


def _ppowmod(a: list[int], n: int, f: list[int], p: int) -> list[int]:
    result, base = [1], _pmod(a, f, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        n >>= 1
    return result


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _norm(a, p), _norm(b, p)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: ``gcd(x^(p^i) - x, f) = 1`` for ``i <= deg f / 2``."""
    f = _norm(list(f), p)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(d // 2):
        h = _ppowmod(h, p, f, p)
        n = max(len(h), 2)
        diff = _norm([(h[k] if k < len(h) else 0) - (x[k] if k < 2 else 0) for k in range(n)], p)
        if len(_pgcd(diff, f, p)) > 1:
            return False
    return True


def _least_irreducible(p: int, e: int) -> tuple[int, ...]:
    # Monic degree-e candidates ordered lexicographically on (c_0, ..., c_{e-1});
    # for e >= 2 the leading block with c_0 = 0 is divisible by t.
    start = p ** (e - 1) if e >= 2 else 0
    for n in range(start, p**e):
        low = []
        for _ in range(e):
            n, r = divmod(n, p)
            low.append(r)
        # low[0] is the least significant digit, but lex order compares c_0 first.
        coeffs = list(reversed(low))
        if is_irreducible(coeffs + [1], p):
            return tuple(coeffs + [1])
    raise AssertionError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class PrimePowerField:
    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})"

    def element(self, value: int | Sequence[int]) -> GFElement:
        """Element from an integer encoding (base-p digits) or a coordinate vector."""
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if not 0 <= value < self.q:
                raise ValueError(f"encoding {value} out of range for {self!r}")
            coords = []
            for _ in range(self.e):
                value, r = divmod(value, self.p)
                coords.append(r)
            return GFElement(self, tuple(coords))
        coords = [int(c) % self.p for c in value]
        if len(coords) > self.e:
            coords = _pmod(coords, list(self.modulus), self.p)
        coords += [0] * (self.e - len(coords))
        return GFElement(self, tuple(coords))

    def zero(self) -> GFElement:
        return GFElement(self, (0,) * self.e)

    def one(self) -> GFElement:
        return self.element(1)

    def elements(self) -> Iterator[GFElement]:
        for n in range(self.q):
            yield self.element(n)


@dataclass(frozen=True)
class GFElement:
    field: PrimePowerField
    coords: tuple[int, ...]

    def __int__(self) -> int:
        p = self.field.p
        return sum(c * p**k for k, c in enumerate(self.coords))

    def __repr__(self) -> str:
        return f"GFElement({list(self.coords)} in {self.field!r})"

    def _coerce(self, other) -> GFElement:
        if isinstance(other, GFElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return self.field.element([int(other)])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other) -> GFElement:
        o = self._coerce(other)
        p = self.field.p
        return GFElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self) -> GFElement:
        p = self.field.p
        return GFElement(self.field, tuple(-a % p for a in self.coords))

    def __sub__(self, other) -> GFElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> GFElement:
        return self._coerce(other) - self

    def __mul__(self, other) -> GFElement:
        o = self._coerce(other)
        f = self.field
        prod = _pmod(_pmul(list(self.coords), list(o.coords), f.p), list(f.modulus), f.p)
        return f.element(prod) if prod else f.zero()

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GFElement:
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> GFElement:
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other) -> GFElement:
        return self * self._coerce(other).inverse()


@lru_cache(maxsize=None)
def gf_make(p: int, e: int = 1) -> PrimePowerField:
    """``F_{p^e}`` with the lexicographically least monic irreducible modulus."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be at least 1")
    if p**e > ENUMERATION_BOUND:
        raise TooLarge(f"{p}^{e} exceeds the enumeration bound {ENUMERATION_BOUND}")
    return PrimePowerField(p, e, _least_irreducible(p, e))


def quad_character(x: GFElement) -> int:
    """Quadratic character via Euler's criterion ``x^((q-1)/2)``."""
    f = x.field
    if f.p == 2:
        raise EvenCharacteristic("the quadratic character needs odd characteristic")
    if x.is_zero():
        return 0
    r = x ** ((f.q - 1) // 2)
    return 1 if r == f.one() else -1


# Whole-field vectorised arithmetic


def _vec_all(field: PrimePowerField) -> np.ndarray:
    idx = np.arange(field.q, dtype=np.int64)
    rows = []
    for _ in range(field.e):
        idx, r = np.divmod(idx, field.p)
        rows.append(r)
    return np.stack(rows)


def _vec_const(x: GFElement, n: int) -> np.ndarray:
    return np.repeat(np.array(x.coords, dtype=np.int64)[:, None], n, axis=1)


def _vec_add(field: PrimePowerField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a + b) % field.p


def _vec_mul(field: PrimePowerField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    p, e = field.p, field.e
    n = a.shape[1]
    # entries stay below e * p^2, far inside int64 for fields under the bound
    prod = np.zeros((2 * e - 1, n), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            prod[i + j] += a[i] * b[j]
    prod %= p
    mod = field.modulus
    for k in range(2 * e - 2, e - 1, -1):
        top = prod[k]
        for j in range(e):
            if mod[j]:
                prod[k - e + j] -= top * mod[j]
        prod[k - e : k] %= p
    return prod[:e] % p


def _vec_encode(field: PrimePowerField, a: np.ndarray) -> np.ndarray:
    out = np.zeros(a.shape[1], dtype=np.int64)
    for k in range(field.e - 1, -1, -1):
        out = out * field.p + a[k]
    return out


@lru_cache(maxsize=None)
def _embedding_root(small: PrimePowerField, big: PrimePowerField) -> GFElement:
    """Least-encoded root in ``big`` of the modulus of ``small``."""
    if small.p != big.p or big.e % small.e:
        raise ValueError(f"{small!r} does not embed in {big!r}")
    xs = _vec_all(big)
    acc = np.zeros_like(xs)
    for c in reversed(small.modulus):
        acc = _vec_mul(big, acc, xs)
        acc[0] = (acc[0] + c) % big.p
    roots = np.flatnonzero(~acc.any(axis=0))
    return big.element(int(roots[0]))


def embed(x: GFElement, big: PrimePowerField) -> GFElement:
    """Image of ``x`` under the embedding sending the generator to the least root."""
    if x.field == big:
        return x
    theta = _embedding_root(x.field, big)
    acc = big.zero()
    for c in reversed(x.coords):
        acc = acc * theta + c
    return acc


def count_points_naive(field: PrimePowerField, A: GFElement, B: GFElement) -> int:
    """Projective points on ``y^2 = x^3 + A x + B`` by counting all pairs.

    Every square root class is tallied from the full list of ``y^2`` values,
    then matched against every ``x^3 + A x + B``.
    """
    xs = _vec_all(field)
    n = field.q
    x2 = _vec_mul(field, xs, xs)
    tally = np.bincount(_vec_encode(field, x2), minlength=n)
    rhs = _vec_add(field, _vec_mul(field, x2, xs), _vec_mul(field, _vec_const(A, n), xs))
    rhs = _vec_add(field, rhs, _vec_const(B, n))
    return int(tally[_vec_encode(field, rhs)].sum()) + 1
