import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from suspmix.exact import QVector, RealBasis
from suspmix.roofs import (
    EvaluableRoof,
    LocallyConstantRoof,
    WeightedShift,
    birkhoff_sum,
    example_roof_harmonic,
    roof_as_edge_weights,
    walters_norm,
)
from suspmix.shift import (
    Alphabet,
    EventuallyPeriodicPoint,
    Word,
    admissible_words,
    cycles_up_to,
    full_shift,
    sft_from_forbidden_words,
)

BINARY = Alphabet.of_size(2)
RATIONAL = RealBasis.rational()


def rational_roof_two_three():
    """2 on [0], 3 on [1]: the running locally constant example."""
    return LocallyConstantRoof.from_symbols(
        {0: RATIONAL.from_rational(2), 1: RATIONAL.from_rational(3)}
    )


class TestLocallyConstantRoof:
    def test_rejects_nonpositive_values(self):
        with pytest.raises(ValueError):
            LocallyConstantRoof.from_symbols(
                {0: RATIONAL.from_rational(0), 1: RATIONAL.from_rational(1)}
            )

    def test_value_at(self):
        r = rational_roof_two_three()
        p = EventuallyPeriodicPoint.periodic(Word.parse("01"))
        assert r.value_at(p, 0) == RATIONAL.from_rational(2)
        assert r.value_at(p, 1) == RATIONAL.from_rational(3)

    def test_min_max(self):
        r = rational_roof_two_three()
        assert r.min_value() == RATIONAL.from_rational(2)
        assert r.max_value() == RATIONAL.from_rational(3)

    def test_from_function_window(self):
        shift = full_shift(BINARY)
        r = LocallyConstantRoof.from_function(
            0, 1, lambda w: RATIONAL.from_rational(1 + w[0] + 2 * w[1]), shift
        )
        p = EventuallyPeriodicPoint.periodic(Word.parse("01"))
        assert r.value_at(p, 0) == RATIONAL.from_rational(3)  # window 01
        assert r.value_at(p, 1) == RATIONAL.from_rational(2)  # window 10


class TestBirkhoffSum:
    def test_running_example(self):
        r = rational_roof_two_three()
        p = EventuallyPeriodicPoint.periodic(Word.parse("01"))
        assert birkhoff_sum(r, p, 2) == RATIONAL.from_rational(5)

    def test_constant_roof(self):
        c = RATIONAL.from_rational(Fraction(7, 3))
        r = LocallyConstantRoof.constant(c, BINARY)
        p = EventuallyPeriodicPoint.periodic(Word.parse("0"))
        assert birkhoff_sum(r, p, 6) == c.scale(6)

    def test_harmonic_witness_formula(self):
        """Sums over ...u 1 0^m 1^n v^inf match the closed-form harmonic total."""
        roof = example_roof_harmonic()
        u, v = Word.parse("01"), Word.parse("10")
        for m in range(1, 8):
            for n in range(1, 6):
                core = u + Word.parse("1") + Word([0]) * m + Word([1]) * n
                x = EventuallyPeriodicPoint.from_parts(v, core, v, 0)
                omega_u1 = birkhoff_sum(roof, x, len(u) + 1)
                expected = omega_u1 + m + n + sum(1.0 / j for j in range(2, m + 2))
                got = birkhoff_sum(roof, x, len(u) + 1 + m + n)
                assert abs(got - expected) < 1e-9

    @given(st.integers(0, 6), st.integers(0, 6))
    def test_cocycle_identity(self, a, b):
        r = rational_roof_two_three()
        p = EventuallyPeriodicPoint.periodic(Word.parse("011"))
        total = birkhoff_sum(r, p, a + b)
        assert total == birkhoff_sum(r, p, a) + birkhoff_sum(r, p.shifted(a), b)

    def test_periodic_multiples(self):
        r = rational_roof_two_three()
        p = EventuallyPeriodicPoint.periodic(Word.parse("011"))
        one = birkhoff_sum(r, p, 3)
        for k in range(1, 5):
            assert birkhoff_sum(r, p, 3 * k) == one.scale(k)


class TestEdgeWeights:
    def test_depth_one_on_full_shift(self):
        r = rational_roof_two_three()
        weighted = roof_as_edge_weights(r, full_shift(BINARY))
        by_label = {e.label: weighted.weights[i] for i, e in enumerate(weighted.shift.edges)}
        assert by_label[0] == RATIONAL.from_rational(2)
        assert by_label[1] == RATIONAL.from_rational(3)

    def test_constant_roof(self):
        c = RATIONAL.from_rational(5)
        r = LocallyConstantRoof.constant(c, BINARY)
        weighted = roof_as_edge_weights(r, full_shift(BINARY))
        assert all(w == c for w in weighted.weights)

    def test_cycle_sums_match_birkhoff(self):
        shift = full_shift(BINARY)
        r = LocallyConstantRoof.from_function(
            0, 1, lambda w: RATIONAL.from_rational(1 + 2 * w[0] + w[1]), shift
        )
        weighted = roof_as_edge_weights(r, shift)
        for cyc in cycles_up_to(weighted.shift, 4):
            labels = Word(weighted.shift.edges[i].label for i in cyc)
            p = EventuallyPeriodicPoint.periodic(labels)
            path_sum = RATIONAL.zero()
            for i in cyc:
                path_sum = path_sum + weighted.weights[i]
            assert path_sum == birkhoff_sum(r, p, len(cyc))

    def test_golden_mean_cycle_sums(self):
        shift = sft_from_forbidden_words(BINARY, [Word.parse("11")])
        r = LocallyConstantRoof.from_function(
            1, 1, lambda w: RATIONAL.from_rational(1 + w[0] + w[1] + w[2]), shift
        )
        weighted = roof_as_edge_weights(r, shift)
        for cyc in cycles_up_to(weighted.shift, 5):
            labels = Word(weighted.shift.edges[i].label for i in cyc)
            p = EventuallyPeriodicPoint.periodic(labels)
            path_sum = RATIONAL.zero()
            for i in cyc:
                path_sum = path_sum + weighted.weights[i]
            assert path_sum == birkhoff_sum(r, p, len(cyc))


class TestWaltersNorm:
    def test_constant(self):
        c = RATIONAL.from_rational(Fraction(5, 2))
        r = LocallyConstantRoof.constant(c, BINARY)
        assert walters_norm(r) == c.scale(2)

    def test_depth_one_is_twice_sup(self):
        # windows of a depth-one roof always sit inside the agreement zone
        r = rational_roof_two_three()
        assert walters_norm(r) == RATIONAL.from_rational(6)

    def test_constant_in_disguise(self):
        r = LocallyConstantRoof.from_symbols(
            {0: RATIONAL.from_rational(1), 1: RATIONAL.from_rational(1)}
        )
        assert walters_norm(r) == RATIONAL.from_rational(2)

    def test_past_window_contributes(self):
        # r(x) depends on x_{-2}: points agreeing on [-1, 1] can differ there
        shift = full_shift(BINARY)
        r = LocallyConstantRoof.from_function(
            2, 0, lambda w: RATIONAL.from_rational(1 + 2 * w[0]), shift
        )
        assert walters_norm(r) == RATIONAL.from_rational(8)


class TestHarmonicRoof:
    def test_values(self):
        roof = example_roof_harmonic()
        x = EventuallyPeriodicPoint.from_parts(
            Word.parse("1"), Word.parse("0001"), Word.parse("1"), 0
        )
        assert abs(roof.value_at(x) - 1.25) < 1e-12
        assert roof.value_at(EventuallyPeriodicPoint.periodic(Word.parse("1"))) == 1.0
        assert roof.value_at(EventuallyPeriodicPoint.periodic(Word.parse("0"))) == 1.0

    def test_vectorized_agrees_with_evaluator(self):
        roof = example_roof_harmonic()
        rng = np.random.default_rng(7)
        symbols = rng.integers(0, 2, size=50)
        symbols[-1] = 1  # pin the tail so scalar and vector paths agree
        vals = roof.vectorized(symbols)
        x = EventuallyPeriodicPoint.from_parts(
            Word.parse("1"), Word(symbols.tolist()), Word.parse("1"), 0
        )
        for j in range(len(symbols) - 1):
            assert abs(vals[j] - roof.value_at(x, j)) < 1e-12

    def test_modulus_nonincreasing(self):
        roof = example_roof_harmonic()
        mods = [roof.walters_modulus(k) for k in range(1, 30)]
        assert all(a >= b for a, b in zip(mods, mods[1:]))


def test_locally_constant_walters_property():
    """Once windows resolve, Birkhoff sums of agreeing points are equal."""
    shift = sft_from_forbidden_words(BINARY, [Word.parse("11")])
    r = LocallyConstantRoof.from_function(
        1, 1, lambda w: RATIONAL.from_rational(1 + w[0] + 3 * w[1] + w[2]), shift
    )
    k = r.past + r.future
    n = 5
    words = admissible_words(shift, n + 2 * k + 2)
    p_words = [w for w in words]
    for w in p_words[:10]:
        # two points sharing the central block x_{[-k, n+k]}
        x = EventuallyPeriodicPoint.from_parts(Word.parse("0"), w, Word.parse("0"), k + 1)
        y = EventuallyPeriodicPoint.from_parts(Word.parse("00"), w, Word.parse("0"), k + 1)
        assert birkhoff_sum(r, x, n) == birkhoff_sum(r, y, n)
