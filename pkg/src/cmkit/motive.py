"""Symbolic motivic decompositions for powers of an ordinary CM elliptic curve.

Summands are tracked by their Frobenius eigenvalues. Symbolically an
eigenvalue is a pair ``(k, a)`` standing for ``q^k * alpha^a`` where a
negative ``a`` means ``conj(alpha)^|a|``; the relation ``alpha * conj(alpha) = q``
makes this representation canonical. Concretely, for a given curve the same
eigenvalues are elements of the CM field.

Levels: at the ``F`` level a summand is a motive with coefficients in the
CM field ``F`` (so conjugate summands are distinct and ``1_F`` is one
object); at the ``Q`` level conjugates are identified and ``1_F(-j)`` counts
as two copies of ``1(-j)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .algebra import IntPoly, composed_product, series_log_zeta
from .curves import CurveDescriptor, EllipticCurveData
from .errors import DegreeOutOfRange, MissingBase, NoMatch, NotOrdinary
from .quadfield import QuadElement, WeilNumber, prime_power_base

__all__ = [
    "Kind",
    "MotiveSummand",
    "SummandMultiset",
    "ZetaFunction",
    "cm_tensor_decompose",
    "printed_recurrence",
    "decomposition_report",
    "kunneth",
    "summand_charpoly",
    "summand_eigenvalues",
    "assemble_zeta",
    "frobenius_polynomial",
    "match_decompositions",
]


class Kind(IntEnum):
    LEFSCHETZ = 0
    UNIT_F = 1
    TENSOR = 2


@dataclass(frozen=True, order=True)
class MotiveSummand:
    """``1(-j)``, ``1_F(-j)`` or ``(tensor_F^i h1(E))(-j)`` (possibly conjugated),
    optionally tensored with ``h1(C)`` of a base curve."""

    kind: Kind
    i: int = 0
    j: int = 0
    conj: bool = False
    base: bool = False

    def __post_init__(self):
        if self.i < 0 or self.j < 0:
            raise ValueError("summand indices must be nonnegative")
        if (self.kind == Kind.TENSOR) != (self.i >= 1):
            raise ValueError("TENSOR summands need i >= 1, the others i = 0")
        if self.conj and self.kind != Kind.TENSOR:
            raise ValueError("only TENSOR summands carry a conjugation flag")

    @classmethod
    def lefschetz(cls, j: int = 0, base: bool = False) -> MotiveSummand:
        return cls(Kind.LEFSCHETZ, 0, j, False, base)

    @classmethod
    def unit_f(cls, j: int = 0) -> MotiveSummand:
        return cls(Kind.UNIT_F, 0, j)

    @classmethod
    def tensor(cls, i: int, j: int = 0, conj: bool = False, base: bool = False) -> MotiveSummand:
        return cls(Kind.TENSOR, i, j, conj, base)

    @property
    def weight(self) -> int:
        return self.i + 2 * self.j + int(self.base)

    def twist(self, k: int) -> MotiveSummand:
        return MotiveSummand(self.kind, self.i, self.j + k, self.conj, self.base)

    def with_base(self) -> MotiveSummand:
        if self.base:
            raise ValueError("summand already carries h1(C)")
        return MotiveSummand(self.kind, self.i, self.j, self.conj, True)

    def forget(self) -> MotiveSummand:
        return MotiveSummand(self.kind, self.i, self.j, False, self.base)

    def swap_conj(self) -> MotiveSummand:
        if self.kind != Kind.TENSOR:
            return self
        return MotiveSummand(self.kind, self.i, self.j, not self.conj, self.base)

    def q_eigenvalues(self) -> list[tuple[int, int]]:
        """Symbolic eigenvalues of the underlying Q-motive (without the base factor)."""
        if self.kind == Kind.LEFSCHETZ:
            return [(self.j, 0)]
        if self.kind == Kind.UNIT_F:
            return [(self.j, 0), (self.j, 0)]
        return [(self.j, self.i), (self.j, -self.i)]

    def f_eigenvalue(self) -> tuple[int, int]:
        """Eigenvalue on the component where F acts through its given embedding."""
        if self.kind == Kind.TENSOR:
            return (self.j, -self.i if self.conj else self.i)
        return (self.j, 0)

    def label(self) -> str:
        if self.kind == Kind.LEFSCHETZ:
            core = f"1(-{self.j})"
        elif self.kind == Kind.UNIT_F:
            core = f"1_F(-{self.j})"
        else:
            bar = "conj " if self.conj else ""
            core = f"{bar}(h1(E)^{self.i})(-{self.j})"
        return core + (" x h1(C)" if self.base else "")

    def to_json(self) -> dict:
        return {
            "kind": self.kind.name,
            "i": str(self.i),
            "j": str(self.j),
            "conj": self.conj,
            "base": self.base,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> MotiveSummand:
        return cls(Kind[obj["kind"]], int(obj["i"]), int(obj["j"]), bool(obj["conj"]), bool(obj["base"]))


@dataclass(frozen=True)
class SummandMultiset:
    entries: tuple[tuple[MotiveSummand, int], ...]
    level: str = "Q"

    def __post_init__(self):
        if self.level not in ("F", "Q"):
            raise ValueError(f"level must be 'F' or 'Q', not {self.level!r}")
        merged: Counter = Counter()
        for s, k in self.entries:
            if k < 0:
                raise ValueError("negative multiplicity")
            merged[s] += k
        canon = tuple(sorted((s, k) for s, k in merged.items() if k))
        object.__setattr__(self, "entries", canon)

    @classmethod
    def of(cls, mapping: Mapping[MotiveSummand, int] | Iterable[tuple[MotiveSummand, int]], level: str = "Q"):
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(tuple(items), level)

    def as_dict(self) -> dict[MotiveSummand, int]:
        return dict(self.entries)

    def __getitem__(self, s: MotiveSummand) -> int:
        return self.as_dict().get(s, 0)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: SummandMultiset) -> SummandMultiset:
        if other.level != self.level:
            raise ValueError("cannot add multisets of different levels")
        return SummandMultiset(self.entries + other.entries, self.level)

    def scaled(self, c: int) -> SummandMultiset:
        return SummandMultiset(tuple((s, k * c) for s, k in self.entries), self.level)

    def twisted(self, k: int) -> SummandMultiset:
        return SummandMultiset(tuple((s.twist(k), m) for s, m in self.entries), self.level)

    def with_base(self) -> SummandMultiset:
        return SummandMultiset(tuple((s.with_base(), m) for s, m in self.entries), self.level)

    def forget(self) -> SummandMultiset:
        """Pass from F-level to Q-level."""
        if self.level == "Q":
            return self
        out: list[tuple[MotiveSummand, int]] = []
        for s, k in self.entries:
            if s.kind == Kind.UNIT_F:
                out.append((MotiveSummand.lefschetz(s.j, s.base), 2 * k))
            else:
                out.append((s.forget(), k))
        return SummandMultiset(tuple(out), "Q")

    def swap_conj(self) -> SummandMultiset:
        return SummandMultiset(tuple((s.swap_conj(), k) for s, k in self.entries), self.level)

    def total(self) -> int:
        return sum(k for _, k in self.entries)

    def eigen_count(self, base_genus: int = 0) -> int:
        """Number of Q_l-eigenvalues (cohomological dimension)."""
        n = 0
        for s, k in self.entries:
            d = len(s.q_eigenvalues())
            n += k * d * (2 * base_genus if s.base else 1)
        return n

    def q_eigenvalues(self) -> Counter:
        """Symbolic eigenvalue multiset of the summands without a base factor."""
        c: Counter = Counter()
        for s, k in self.entries:
            if not s.base:
                for ev in s.q_eigenvalues():
                    c[ev] += k
        return c

    def f_eigenvalues(self) -> Counter:
        if self.level != "F":
            raise ValueError("F-eigenvalues need an F-level multiset")
        c: Counter = Counter()
        for s, k in self.entries:
            c[s.f_eigenvalue()] += k
        return c

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "summands": [
                {"summand": s.to_json(), "multiplicity": str(k), "label": s.label()} for s, k in self.entries
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> SummandMultiset:
        return cls(
            tuple((MotiveSummand.from_json(e["summand"]), int(e["multiplicity"])) for e in obj["summands"]),
            obj["level"],
        )


def _tensor_with_h1(ms: SummandMultiset) -> SummandMultiset:
    out: list[tuple[MotiveSummand, int]] = []
    for s, k in ms.entries:
        if s.kind == Kind.UNIT_F:
            out.append((MotiveSummand.tensor(1, s.j, False), k))
            out.append((MotiveSummand.tensor(1, s.j, True), k))
        elif s.kind == Kind.TENSOR:
            out.append((MotiveSummand.tensor(s.i + 1, s.j, s.conj), k))
            if s.i == 1:
                out.append((MotiveSummand.unit_f(s.j + 1), k))
            else:
                out.append((MotiveSummand.tensor(s.i - 1, s.j + 1, s.conj), k))
        else:
            raise AssertionError("Lefschetz summands do not occur in tensor powers of h1")
    return SummandMultiset(tuple(out), "F")


def cm_tensor_decompose(g: int, level: str = "F") -> SummandMultiset:
    """Decompose the g-fold tensor power of ``h1(E)`` over Q into F-summands.

    Built by tensoring with ``h1(E)`` one factor at a time, splitting
    ``M (x)_Q h1 = M (x)_F h1 + M (x)_F conj(h1)`` and using
    ``h1 (x)_F conj(h1) = 1_F(-1)``.
    """
    if g < 0:
        raise ValueError("g must be nonnegative")
    if level not in ("F", "Q"):
        raise ValueError(f"level must be 'F' or 'Q', not {level!r}")
    if g == 0:
        return SummandMultiset(((MotiveSummand.lefschetz(0), 1),), level)
    ms = SummandMultiset(((MotiveSummand.tensor(1), 1),), "F")
    for _ in range(g - 1):
        ms = _tensor_with_h1(ms)
    return ms if level == "F" else ms.forget()


def printed_recurrence(g: int) -> dict[tuple[int, int], int]:
    """``a_{i,j}`` for ``i + 2j = g`` from ``a_{i,0} = 1``, ``a_{i,j} = a_{i-1,j} + a_{i+1,j-1}``."""
    memo: dict[tuple[int, int], int] = {}

    def a(i: int, j: int) -> int:
        if i < 0 or j < 0:
            return 0
        if j == 0:
            return 1
        if (i, j) not in memo:
            memo[(i, j)] = a(i - 1, j) + a(i + 1, j - 1)
        return memo[(i, j)]

    return {(g - 2 * j, j): a(g - 2 * j, j) for j in range(g // 2 + 1)}


def decomposition_report(g: int) -> dict:
    """F- and Q-level decompositions next to the printed recurrence counts.

    The printed recurrence is compared against both the F-level count of
    plain summands and the Q-level multiplicity; disagreements are listed,
    not resolved.
    """
    f_level = cm_tensor_decompose(g, "F")
    q_level = f_level.forget() if g else cm_tensor_decompose(0, "Q")
    fd, qd = f_level.as_dict(), q_level.as_dict()
    rows = []
    discrepancies = []
    for (i, j), rec in sorted(printed_recurrence(g).items()) if g else []:
        if i >= 1:
            plain = fd.get(MotiveSummand.tensor(i, j, False), 0)
            conj = fd.get(MotiveSummand.tensor(i, j, True), 0)
            q_mult = qd.get(MotiveSummand.tensor(i, j), 0)
        else:
            plain = fd.get(MotiveSummand.unit_f(j), 0)
            conj = 0
            q_mult = qd.get(MotiveSummand.lefschetz(j), 0)
        rows.append(
            {
                "i": str(i),
                "j": str(j),
                "printed_recurrence": str(rec),
                "f_plain": str(plain),
                "f_conj": str(conj),
                "q_multiplicity": str(q_mult),
            }
        )
        if rec != plain or rec != q_mult:
            discrepancies.append(
                f"a_{{{i},{j}}}: printed recurrence {rec}, F-level plain {plain}, Q-level {q_mult}"
            )
    return {
        "g": str(g),
        "f_level": f_level.to_json(),
        "q_level": q_level.to_json(),
        "counts": rows,
        "discrepancies": discrepancies,
    }


def kunneth(g: int, n: int, base: CurveDescriptor | None = None) -> SummandMultiset:
    """Q-level decomposition of ``h^n(E^g)`` or ``h^n(E^g x C)``.

    Each of the g elliptic factors contributes ``h0``, ``h1`` or ``h2 = 1(-1)``;
    the ``h1`` block is decomposed with :func:`cm_tensor_decompose`. With a
    base curve, ``h(C) = 1 + h1(C) + 1(-1)`` is distributed on top.
    """
    top = 2 * g + (2 if base is not None else 0)
    if not 0 <= n <= top:
        raise DegreeOutOfRange(f"degree {n} outside [0, {top}]")
    if base is not None:
        ms = SummandMultiset((), "Q")
        if n <= 2 * g:
            ms = ms + kunneth(g, n)
        if 0 <= n - 1 <= 2 * g:
            ms = ms + kunneth(g, n - 1).with_base()
        if 0 <= n - 2 <= 2 * g:
            ms = ms + kunneth(g, n - 2).twisted(1)
        expected = sum(comb(2 * g, n - k) * c for k, c in ((0, 1), (1, 2 * base.genus), (2, 1)) if 0 <= n - k <= 2 * g)
        if ms.eigen_count(base.genus) != expected:
            raise AssertionError(f"dimension {ms.eigen_count(base.genus)} != {expected}")
        return ms
    ms = SummandMultiset((), "Q")
    for n2 in range(0, n // 2 + 1):
        n1 = n - 2 * n2
        n0 = g - n1 - n2
        if n0 < 0:
            continue
        ways = factorial(g) // (factorial(n0) * factorial(n1) * factorial(n2))
        block = cm_tensor_decompose(n1, "Q").twisted(n2)
        ms = ms + block.scaled(ways)
    if ms.eigen_count() != comb(2 * g, n):
        raise AssertionError(f"dimension {ms.eigen_count()} != binom({2 * g}, {n})")
    return ms


def summand_eigenvalues(s: MotiveSummand, alpha: WeilNumber) -> list[QuadElement]:
    """Concrete eigenvalues in the CM field (ignoring any base factor)."""
    q = alpha.q
    out = []
    for k, a in s.q_eigenvalues():
        z = alpha.value ** a if a >= 0 else alpha.value.conj() ** (-a)
        out.append(z * q**k)
    return out


def summand_charpoly(s: MotiveSummand, E: EllipticCurveData, base: CurveDescriptor | None = None) -> IntPoly:
    """``det(1 - Frob t)`` on the realization of one summand."""
    q = E.q
    if s.kind == Kind.LEFSCHETZ:
        poly = IntPoly.linear(q**s.j)
    elif s.kind == Kind.UNIT_F:
        poly = IntPoly.linear(q**s.j) ** 2
    else:
        if not E.ordinary:
            raise NotOrdinary("TENSOR summands need an ordinary curve")
        ai = E.alpha.value**s.i
        tr, nm = ai.trace(), ai.norm()
        poly = IntPoly((1, -int(tr) * q**s.j, int(nm) * q ** (2 * s.j)))
    if s.base:
        if base is None:
            raise MissingBase(f"{s.label()} needs a base curve")
        poly = composed_product(poly, base.P1)
    return poly


@dataclass(frozen=True)
class ZetaFunction:
    parts: tuple[IntPoly, ...]
    dimension: int

    def factors(self) -> list[tuple[IntPoly, int]]:
        """``(P_n, (-1)^(n+1))`` pairs for :func:`cmkit.algebra.series_log_zeta`."""
        return [(P, -1 if n % 2 == 0 else 1) for n, P in enumerate(self.parts)]

    def point_counts(self, N: int) -> list[int]:
        return series_log_zeta(self.factors(), N).as_ints()[1:]

    def to_json(self) -> dict:
        return {
            "dimension": str(self.dimension),
            "parts": [[str(c) for c in P.coeffs] for P in self.parts],
        }


def assemble_zeta(E: EllipticCurveData, g: int, base: CurveDescriptor | None = None) -> ZetaFunction:
    """``P_n = prod summand_charpoly`` over the Kunneth decomposition of each degree."""
    if not E.ordinary and g > 0:
        raise NotOrdinary("decompositions are implemented for ordinary curves only")
    d = g + (1 if base is not None else 0)
    parts = []
    for n in range(2 * d + 1):
        P = IntPoly.one()
        for s, k in kunneth(g, n, base):
            P = P * summand_charpoly(s, E, base) ** k
        parts.append(P)
    genus = base.genus if base is not None else 0
    for n, P in enumerate(parts):
        expected = kunneth(g, n, base).eigen_count(genus)
        if P.degree != expected or P[0] != 1:
            raise AssertionError(f"P_{n} has degree {P.degree}, expected {expected}")
        if P.degree != parts[2 * d - n].degree:
            raise AssertionError("degree symmetry fails")
    return ZetaFunction(tuple(parts), d)


# Matching of decompositions over a finite field

Entry = tuple[int, int, int]


def frobenius_polynomial(entry: Entry, q: int, alphas: Mapping[int, WeilNumber]) -> tuple[Fraction, Fraction, Fraction]:
    """``(1 - q^-s alpha^r t)(1 - q^-s conj(alpha)^r t)`` for an entry ``(m, r, s)``."""
    m, r, s = entry
    if r < 0:
        raise ValueError("r must be nonnegative")
    scale = Fraction(q) ** (-s)
    if r == 0:
        return (Fraction(1), -2 * scale, scale * scale)
    ar = alphas[m].value ** r
    return (Fraction(1), -scale * ar.trace(), scale * scale * ar.norm())


def match_decompositions(
    left: Sequence[Entry],
    right: Sequence[Entry],
    q: int,
    alphas: Mapping[int, WeilNumber],
) -> list[int]:
    """Pair summands ``(tensor_F^r h1)(s)`` of two decompositions by Frobenius polynomial.

    Returns ``sigma`` with ``right[sigma[i]]`` matching ``left[i]``; raises
    NoMatch with the first unpaired polynomial otherwise. After pairing, the
    parameters of each pair are compared directly: equal ``(r, s)`` and, for
    ``r >= 1``, the same field.
    """
    p, _ = prime_power_base(q)
    for entry in list(left) + list(right):
        m, r, _s = entry
        if r >= 1:
            alpha = alphas[m]
            if alpha.q != q or alpha.weight != 1 or alpha.F.m != m:
                raise ValueError(f"no weight-one Frobenius over {q} for field {m}")
            if int(alpha.value.trace()) % p == 0:
                raise NotOrdinary(f"Frobenius {alpha.value!r} of field {m} is not ordinary")
    if len(left) != len(right):
        raise NoMatch(f"decompositions have {len(left)} and {len(right)} summands")
    right_polys = [frobenius_polynomial(e, q, alphas) for e in right]
    used = [False] * len(right)
    sigma: list[int] = []
    for i, entry in enumerate(left):
        poly = frobenius_polynomial(entry, q, alphas)
        if entry[1] >= 1:
            tr, nm = -poly[1], poly[2]
            # nonreal roots, hence irreducible over Q
            if tr * tr - 4 * nm >= 0:
                raise AssertionError(f"Frobenius polynomial of {entry} is reducible over Q")
        for j, other in enumerate(right_polys):
            if not used[j] and other == poly:
                used[j] = True
                sigma.append(j)
                break
        else:
            raise NoMatch(f"no partner for left entry {i} = {entry}", polynomial=poly, index=i)
    for i, j in enumerate(sigma):
        (m1, r1, s1), (m2, r2, s2) = left[i], right[j]
        if (r1, s1) != (r2, s2) or (r1 >= 1 and m1 != m2):
            raise AssertionError(f"equal Frobenius polynomials for {left[i]} and {right[j]}")
    return sigma
