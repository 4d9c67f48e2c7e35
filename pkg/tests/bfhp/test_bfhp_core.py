"""
Unit tests for the BFHP core.

Tests:
- eval_g and the general solution line
- t-interval arithmetic
- solutions_in_box against the brute-force oracle and its cap
- Planted instances and their validation
- Collision experiment and box-count survey
"""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from pydantic import ValidationError

from packages.bfhp.bfhp_core import (
    BfhpInstance,
    SolutionLine,
    TRange,
    box_count_survey,
    brute_force_box,
    collision_experiment,
    eval_g,
    expected_t_width,
    general_solution,
    solutions_in_box,
    t_interval,
)
from packages.bfhp.errors import DomainError, SearchSpaceTooLarge


class TestEvalG:
    """Tests for eval_g."""

    def test_examples(self):
        assert eval_g(13, 11, 40, 50) == 1070
        assert eval_g(13, 11, 0, 0) == 0
        assert eval_g(17, 19, 1, 1) == 36

    def test_rejects_common_factor(self):
        with pytest.raises(DomainError):
            eval_g(6, 9, 1, 1)

    def test_rejects_negative_unknowns(self):
        with pytest.raises(DomainError):
            eval_g(13, 11, -1, 1)


class TestGeneralSolution:
    """Tests for general_solution and SolutionLine."""

    def test_worked_example(self):
        line = general_solution(13, 11, 1070)
        assert (line.u0, line.v0) == (7, 89)
        assert (line.A1, line.A2, line.G) == (13, 11, 1070)

    def test_zero_right_hand_side(self):
        line = general_solution(1, 2, 0)
        assert (line.u0, line.v0) == (0, 0)

    def test_g_equal_to_a1(self):
        line = general_solution(13, 11, 13)
        assert (line.u0, line.v0) == (1, 0)

    def test_v0_may_be_negative(self):
        line = general_solution(13, 11, 5)
        assert line.v0 < 0
        assert 13 * line.u0 + 11 * line.v0 == 5

    def test_rejects_common_factor(self):
        with pytest.raises(DomainError):
            general_solution(4, 6, 10)

    def test_rejects_zero_coefficient(self):
        # gcd(1, 0) = 1, but there is no solution line to build
        for a1, a2 in ((1, 0), (0, 1)):
            with pytest.raises(DomainError):
                general_solution(a1, a2, 5)

    def test_line_requires_normalized_u0(self):
        with pytest.raises(ValidationError):
            SolutionLine(u0=11, v0=0, step_u=11, step_v=13)

    @given(
        st.integers(min_value=2, max_value=1 << 64),
        st.integers(min_value=2, max_value=1 << 64),
        st.integers(min_value=0, max_value=1 << 128),
        st.integers(min_value=-(1 << 64), max_value=1 << 64),
    )
    def test_telescoping_identity(self, a1, a2, g, t):
        assume(math.gcd(a1, a2) == 1)
        line = general_solution(a1, a2, g)
        u, v = line.at(t)
        assert a1 * u + a2 * v == g
        assert 0 <= line.u0 < a2


class TestTInterval:
    """Tests for t_interval."""

    def test_worked_example(self):
        ranges = t_interval(general_solution(13, 11, 1070), 32, 63)
        assert (ranges.u.lo, ranges.u.hi) == (3, 5)
        assert (ranges.v.lo, ranges.v.hi) == (3, 4)
        assert (ranges.joint.lo, ranges.joint.hi) == (3, 4)
        assert ranges.joint.size == 2

    def test_empty_range_has_zero_size(self):
        assert TRange(lo=5, hi=4).size == 0
        assert TRange(lo=0, hi=9).intersect(TRange(lo=20, hi=30)).size == 0


class TestSolutionsInBox:
    """Tests for solutions_in_box and brute_force_box."""

    def test_worked_example(self):
        assert solutions_in_box(13, 11, 1070, 32, 63) == [(40, 50), (51, 37)]

    def test_both_coordinates_must_be_inside(self):
        # (51, 37) is on the line but v falls below the sub-box
        assert solutions_in_box(13, 11, 1070, 48, 63) == []
        assert brute_force_box(13, 11, 1070, 48, 63) == []

    def test_no_solution_is_empty(self):
        assert solutions_in_box(13, 11, 5, 32, 63) == []

    def test_rejects_inverted_box(self):
        with pytest.raises(DomainError):
            solutions_in_box(13, 11, 1070, 63, 32)

    def test_refuses_beyond_cap(self, rng):
        inst = BfhpInstance.plant(16, 64, rng)
        lo, hi = inst.box
        with pytest.raises(SearchSpaceTooLarge) as exc_info:
            solutions_in_box(inst.A1, inst.A2, inst.G, lo, hi, cap=1000)
        assert exc_info.value.cap == 1000
        assert exc_info.value.size > 1000

    def test_brute_force_refuses_wide_box(self):
        with pytest.raises(SearchSpaceTooLarge):
            brute_force_box(13, 11, 1070, 0, 1 << 30, cap=1 << 10)

    def test_matches_brute_force_on_planted_instances(self, rng):
        for n, m in [(3, 5), (4, 7), (5, 8), (6, 8)]:
            for _ in range(40):
                inst = BfhpInstance.plant(n, m, rng)
                lo, hi = inst.box
                found = solutions_in_box(inst.A1, inst.A2, inst.G, lo, hi)
                assert found == brute_force_box(inst.A1, inst.A2, inst.G, lo, hi)
                assert (inst.u, inst.v) in found
                for u, v in found:
                    assert inst.A1 * u + inst.A2 * v == inst.G
                    assert lo < u < hi and lo < v < hi


class TestBfhpInstance:
    """Tests for BfhpInstance validation and planting."""

    def test_plant_is_consistent(self, rng):
        inst = BfhpInstance.plant(32, 96, rng)
        lo, hi = inst.box
        assert lo < inst.u < hi and lo < inst.v < hi
        assert inst.A1 * inst.u + inst.A2 * inst.v == inst.G

    def test_rejects_common_factor(self):
        with pytest.raises(ValidationError):
            BfhpInstance(A1=18, A2=20, m=8, n=5, G=0)

    def test_rejects_wrong_planted_pair(self):
        with pytest.raises(ValidationError):
            BfhpInstance(A1=17, A2=19, m=8, n=5, G=1, u=200, v=200)

    def test_unplanted_instance(self):
        inst = BfhpInstance(A1=17, A2=19, m=8, n=5, G=7000)
        assert inst.u is None and inst.v is None


class TestExpectedTWidth:
    """Tests for expected_t_width."""

    def test_examples(self):
        assert expected_t_width(6, 4) == 1
        assert expected_t_width(16, 6) == 256
        assert expected_t_width(1024 + 130, 1024) == 1 << 128

    def test_rejects_narrow_gap(self):
        with pytest.raises(DomainError):
            expected_t_width(5, 4)


class TestCollisionExperiment:
    """Tests for collision_experiment."""

    def test_single_trial_is_bernoulli(self, rng):
        estimate = collision_experiment(3, 10, 1, rng)
        assert estimate.fraction in (Fraction(0), Fraction(1))

    def test_rate_near_divisibility_rate(self):
        estimate = collision_experiment(3, 13, 4000, random.Random(3))
        assert estimate.trials == 4000
        assert estimate.fraction == Fraction(estimate.hits, 4000)
        assert abs(estimate.z_score) < 5
        assert estimate.claimed_rate == Fraction(1, 8)
        assert Fraction(1, 16) < estimate.fraction < Fraction(1, 4)

    def test_rejects_bad_arguments(self, rng):
        with pytest.raises(DomainError):
            collision_experiment(2, 10, 10, rng)
        with pytest.raises(DomainError):
            collision_experiment(6, 6, 10, rng)
        with pytest.raises(DomainError):
            collision_experiment(6, 10, 0, rng)


class TestBoxCountSurvey:
    """Tests for box_count_survey."""

    @pytest.mark.parametrize("gap", [3, 5, 8])
    def test_mean_count_tracks_estimate(self, gap):
        survey = box_count_survey(6, 6 + gap, 60, random.Random(gap))
        assert survey.always_contains_planted
        assert survey.expected_width == 1 << (gap - 2)
        assert Fraction(survey.expected_width, 4) <= survey.mean_count <= 4 * survey.expected_width
