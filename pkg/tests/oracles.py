"""Brute-force reference computations, written without touching cmkit internals.

Everything here is deliberately naive: explicit loops over field elements,
Gaussian-integer tuples, Newton identities on plain lists.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction


# Point counts


def count_fp(p, A, B):
    """Projective points on y^2 = x^3 + Ax + B over F_p, double loop."""
    total = 1
    for x in range(p):
        rhs = (x * x * x + A * x + B) % p
        total += sum(1 for y in range(p) if y * y % p == rhs)
    return total


def _nonresidue(p):
    return next(d for d in range(2, p) if pow(d, (p - 1) // 2, p) == p - 1)


def count_fp2_from_fp(p, A, B):
    """Points over F_{p^2} = F_p[sqrt(d)] for a curve defined over F_p."""
    d = _nonresidue(p)

    def mul(u, v):
        return ((u[0] * v[0] + d * u[1] * v[1]) % p, (u[0] * v[1] + u[1] * v[0]) % p)

    elems = [(a, b) for a in range(p) for b in range(p)]
    squares = Counter(mul(y, y) for y in elems)
    total = 1
    for x in elems:
        x3 = mul(mul(x, x), x)
        rhs = ((x3[0] + A * x[0] + B) % p, (x3[1] + A * x[1]) % p)
        total += squares[rhs]
    return total


def trace_recurrence(a, q, n):
    seq = [2, a]
    while len(seq) <= n:
        seq.append(a * seq[-1] - q * seq[-2])
    return seq[n]


# Gaussian integers / general quadratic integers as (x, y) with sqrt(m)


def qmul(u, v, m):
    return (u[0] * v[0] + m * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def qpow(u, n, m):
    out = (1, 0)
    for _ in range(n):
        out = qmul(out, u, m)
    return out


def conj_pair_poly(z, m):
    """(1 - z t)(1 - conj(z) t) for z = x + y sqrt(m) with rational x, y."""
    x, y = z
    return [1, -2 * x, x * x - m * y * y]


# Polynomials as lists, constant term first


def power_sums(P, n):
    """s_k = sum of reciprocal roots^k for P = 1 + c1 t + ..."""
    c = [Fraction(x) for x in P] + [Fraction(0)] * (n + 1)
    s = []
    for k in range(1, n + 1):
        val = -k * c[k] - sum(c[i] * s[k - i - 1] for i in range(1, k))
        s.append(val)
    return s


def from_power_sums(s, d):
    """Inverse of power_sums for a degree-d polynomial with constant term 1."""
    c = [Fraction(1)]
    for k in range(1, d + 1):
        c.append(-(s[k - 1] + sum(c[i] * s[k - i - 1] for i in range(1, k))) / k)
    return c


def composed_product_newton(P, Q):
    dp, dq = len(P) - 1, len(Q) - 1
    d = dp * dq
    if d == 0:
        return [1]
    sp, sq = power_sums(P, d), power_sums(Q, d)
    out = from_power_sums([a * b for a, b in zip(sp, sq)], d)
    assert all(x.denominator == 1 for x in out)
    return [int(x) for x in out]


# Symbolic eigenvalues


def word_expansion(g):
    """All 2^g words in {alpha, conj alpha}, reduced by alpha*conj = q, as (k, a)."""
    out = Counter()
    for word in itertools.product((1, -1), repeat=g):
        a = word.count(1)
        b = g - a
        out[(min(a, b), a - b)] += 1
    return out


def cohomology_eigenvalues(g, n):
    """Eigenvalues on H^n(E^g) as (k, a): choose per factor H^0, H^1 or H^2."""
    out = Counter()
    choices = [[(0, 0)], [(0, 1), (0, -1)], [(1, 0)]]
    for degs in itertools.product(range(3), repeat=g):
        if sum(degs) != n:
            continue
        for pick in itertools.product(*(choices[d] for d in degs)):
            a = sum(x[1] for x in pick if x[1] > 0)
            b = -sum(x[1] for x in pick if x[1] < 0)
            k = sum(x[0] for x in pick) + min(a, b)
            out[(k, a - b)] += 1
    return out


# Closed points


def mobius(n):
    res, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            res = -res
        k += 1
    return -res if n > 1 else res


def closed_points(counts):
    N = len(counts)
    return [
        sum(mobius(n // d) * counts[d - 1] for d in range(1, n + 1) if n % d == 0) // n
        for n in range(1, N + 1)
    ]


# Lattice scan for Weil numbers


def lattice_scan(m, q, w):
    """Count x + y sqrt(m) (with half-integers when m = 1 mod 4) of norm q^w."""
    target = q**w
    half = m % 4 == 1
    scale = 2 if half else 1
    N = target * scale * scale
    bound = int(N**0.5) + 2
    count = 0
    for X in range(-bound, bound + 1):
        for Y in range(-bound, bound + 1):
            if X * X - m * Y * Y == N and (not half or (X - Y) % 2 == 0):
                count += 1
    return count


def symbolic_mul(u, v):
    """Product of q^k alpha^a eigenvalues, canonicalised by alpha * conj = q."""
    A = u[0] + max(u[1], 0) + v[0] + max(v[1], 0)
    B = u[0] + max(-u[1], 0) + v[0] + max(-v[1], 0)
    return (min(A, B), A - B)


def pairing_count(g, i, base_eigs):
    """Pairs (gamma, beta) with gamma on H^{2i-1}(E^g), beta a base eigenvalue, gamma*beta = q^i."""
    total = 0
    for gamma, c in cohomology_eigenvalues(g, 2 * i - 1).items():
        total += c * sum(1 for beta in base_eigs if symbolic_mul(gamma, beta) == (i, 0))
    return total
