import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmkit.algebra import IntPoly
from cmkit.curves import (
    abstract_curve,
    base_change,
    classify,
    closed_point_counts,
    curve_points_from_zeta,
    curve_validate,
    descriptor,
    elliptic_curve,
    point_count,
    projective_line,
    trace_sequence,
)
from cmkit.errors import BadSpec, BadZetaNumerator, Char2Or3Unsupported, NegativeClosedPointCount, Singular
from cmkit.gf import ENUMERATION_BOUND

from corpus import ordinary_corpus
from oracles import closed_points, count_fp, count_fp2_from_fp, trace_recurrence

E0_SPEC = {"p": "5", "e": "1", "model": "short-weierstrass", "A": "1", "B": "0"}


@pytest.fixture(scope="module")
def E0():
    return curve_validate(E0_SPEC)


class TestValidate:
    def test_e0(self, E0):
        assert E0.trace == 2 and E0.q == 5

    def test_singular(self):
        with pytest.raises(Singular):
            curve_validate({"p": 5, "e": 1, "A": 0, "B": 0})

    @pytest.mark.parametrize("p", [2, 3])
    def test_small_characteristic(self, p):
        with pytest.raises(Char2Or3Unsupported):
            curve_validate({"p": p, "A": 1, "B": 1})

    def test_unknown_key(self):
        with pytest.raises(BadSpec):
            curve_validate({**E0_SPEC, "color": "red"})

    def test_bad_model(self):
        with pytest.raises(BadSpec):
            curve_validate({**E0_SPEC, "model": "edwards"})

    def test_encoding_range_over_extension(self):
        with pytest.raises(BadSpec):
            curve_validate({"p": "5", "e": "2", "A": "25", "B": "1"})

    def test_abstract_genus_one(self):
        C = curve_validate({"q": "5", "zeta_numerator": ["1", "-2", "5"]})
        assert C.genus == 1 and C.kind == "abstract"

    @pytest.mark.parametrize(
        "coeffs",
        [
            [1, -2, 6],  # symmetry
            [2, -2, 5],  # constant term
            [1, 5, 5],  # a root of absolute value != sqrt(q)
            [1, 0, 20, 0, 25],  # symmetric, but h(x) = x^2 + 10 has no real roots
            [1, 9, 41, 45, 25],  # symmetric, h(x) = x^2 + 9x + 31 has a root below -2 sqrt q
            [1, 3],
        ],
    )
    def test_abstract_rejections(self, coeffs):
        with pytest.raises(BadZetaNumerator):
            abstract_curve(5, coeffs)

    def test_abstract_genus_two_product(self):
        C = abstract_curve(5, (IntPoly((1, 0, 5)) ** 2).coeffs)
        assert C.genus == 2

    def test_abstract_counts_nonnegative(self):
        C = abstract_curve(5, [1, 4, 5])
        assert curve_points_from_zeta(C, 3) == [5**n + 1 - trace_recurrence(-4, 5, n) for n in (1, 2, 3)]


class TestPointCount:
    @pytest.mark.parametrize("n, expected", [(1, 4), (2, 32), (3, 148), (4, 640), (5, 3044), (6, 15392)])
    def test_e0(self, E0, n, expected):
        assert point_count(E0, n) == expected
        assert point_count(E0, n, method="recurrence") == expected

    def test_e0_oracles(self, E0):
        assert point_count(E0, 1, method="naive") == count_fp(5, 1, 0)
        assert point_count(E0, 2, method="naive") == count_fp2_from_fp(5, 1, 0)

    def test_degree_zero(self, E0):
        with pytest.raises(ValueError):
            point_count(E0, 0)

    def test_beyond_bound_uses_recurrence(self, E0):
        assert 5**10 > ENUMERATION_BOUND
        assert point_count(E0, 10) == 5**10 + 1 - trace_recurrence(2, 5, 10)

    def test_cache_mapping(self, E0):
        store = {}
        assert point_count(E0, 3, cache=store) == 148
        assert store == {(E0.curve_id, 3): 148}
        store[(E0.curve_id, 3)] = 1
        assert point_count(E0, 3, cache=store) == 1

    def test_naive_agrees_with_recurrence_on_random_sample(self):
        rng = random.Random(20261019)
        done = 0
        while done < 12:
            p, e = rng.choice([(5, 1), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2), (17, 1)])
            q = p**e
            A, B = rng.randrange(q), rng.randrange(q)
            try:
                E = elliptic_curve(p, e, A, B)
            except Singular:
                continue
            n = 1
            while q ** (n + 1) <= min(ENUMERATION_BOUND, 10**6):
                n += 1
            for k in range(1, n + 1):
                assert point_count(E, k, method="naive") == point_count(E, k, method="recurrence")
            done += 1

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([5, 7, 11, 13, 17, 19, 23]), st.integers(0, 500), st.integers(0, 500))
    def test_hasse_and_prime_count(self, p, A, B):
        try:
            E = elliptic_curve(p, 1, A, B)
        except Singular:
            return
        assert E.trace**2 <= 4 * E.q
        assert p + 1 - E.trace == count_fp(p, A % p, B % p)


class TestClassify:
    def test_e0(self, E0):
        info = classify(E0)
        assert info["ordinary"] and info["m"] == -1 and info["cm_disc"] == -16
        assert info["conductor"] == 2 and info["field_disc"] == -4
        assert (info["alpha"].value.x, info["alpha"].value.y) == (1, 2)

    def test_supersingular_over_f49(self):
        curves = [elliptic_curve(7, 2, A, B) for A, B in [(1, 0), (0, 1), (3, 0)]]
        for E in curves:
            assert classify(E)["ordinary"] == (E.trace % 7 != 0)
        assert any(not E.ordinary for E in curves)

    def test_supersingular_traces_over_f49(self):
        # over F_49 (7 = 1 mod 3) a supersingular trace is 0 or +-14, never +-7
        traces = set()
        for A in range(49):
            for B in range(49):
                try:
                    E = elliptic_curve(7, 2, A, B)
                except Singular:
                    continue
                if not classify(E)["ordinary"]:
                    traces.add(E.trace)
                    assert E.alpha is None
        assert traces <= {0, 14, -14} and traces

    @pytest.mark.parametrize("p, A, B", [(7, 1, 0), (11, 0, 1), (5, 0, 1), (13, 1, 0)])
    def test_supersingular_traces_divisible(self, p, A, B):
        E = elliptic_curve(p, 1, A, B)
        if not E.ordinary:
            for a_n in trace_sequence(E.trace, E.q, 8)[1:]:
                assert a_n % p == 0

    def test_base_change(self, E0):
        E2 = base_change(E0, 2)
        assert E2.trace == -6 and E2.ordinary
        assert (E2.alpha.value.x, E2.alpha.value.y) in {(-3, 4), (-3, -4)}

    @pytest.mark.parametrize("E", ordinary_corpus(), ids=lambda E: f"p{E.p}A{E.A}B{E.B}")
    def test_corpus_cm_data(self, E):
        d = E.trace**2 - 4 * E.q
        assert d == E.cm_disc < 0
        assert d == E.cm.conductor**2 * E.cm.field_disc
        assert E.alpha.value.trace() == E.trace and E.alpha.value.norm() == E.q


class TestClosedPoints:
    def test_projective_line(self):
        assert closed_point_counts(projective_line(5), 2) == [6, 10]

    def test_e0(self, E0):
        assert closed_point_counts(descriptor(E0), 2) == [4, 14]

    def test_base_case(self, E0):
        assert closed_point_counts(descriptor(E0), 1) == [point_count(E0, 1)]

    @pytest.mark.parametrize("E", ordinary_corpus()[:8], ids=lambda E: f"p{E.p}A{E.A}B{E.B}")
    def test_mobius_roundtrip(self, E):
        N = 8
        counts = [point_count(E, n, method="recurrence") for n in range(1, N + 1)]
        b = closed_point_counts(descriptor(E), N)
        assert b == closed_points(counts)
        for n in range(1, N + 1):
            assert sum(d * b[d - 1] for d in range(1, n + 1) if n % d == 0) == counts[n - 1]

    def test_negative(self):
        with pytest.raises(NegativeClosedPointCount):
            closed_point_counts(projective_line(5), 2, counts=[6, 2])

    def test_explicit_counts(self, E0):
        assert closed_point_counts(projective_line(5), 2, counts=[4, 32]) == [4, 14]
