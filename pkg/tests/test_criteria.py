import pytest

from harbourne.criteria import (
    REASON_BUDGET_EXHAUSTED,
    REASON_FEW_POINTS,
    REASON_NONE,
    REASON_TWO_PENCIL_COARSE,
    REASON_TWO_PENCIL_REFINED,
    ExclusionOutcome,
    few_points,
    greedy_common_line_points,
    refined_inequality_alone,
    two_pencil,
)
from harbourne.pipeline import enumerate_profiles
from harbourne.profiles import Profile


def test_outcome_consistency_assert():
    with pytest.raises(AssertionError):
        ExclusionOutcome(True, REASON_NONE)
    with pytest.raises(AssertionError):
        ExclusionOutcome(False, REASON_FEW_POINTS)


def test_few_points():
    out = few_points(Profile.from_counts(7, {4: 3, 2: 3}))
    assert out.excluded and out.reason == REASON_FEW_POINTS
    assert out.detail == "s=6 < d=7"
    assert not few_points(Profile.from_counts(7, {3: 7})).excluded
    assert not few_points(Profile.from_counts(7, {7: 1})).excluded  # pencil


def test_two_pencil_refined_worked_example():
    """d=10 with seven triple and four quadruple points: the common line
    of the three lines missing both pencils needs a = 3 points, and
    (4-1)(4-1) + 3 = 12 > s = 11 kills the profile."""
    out = two_pencil(Profile.from_counts(10, {3: 7, 4: 4}))
    assert out.excluded and out.reason == REASON_TWO_PENCIL_REFINED
    assert out.detail == "a=3; 9+3 > 11"


def test_two_pencil_coarse():
    out = two_pencil(Profile.from_counts(10, {3: 5, 4: 5}))
    assert out.excluded and out.reason == REASON_TWO_PENCIL_COARSE
    assert out.detail == "(4-1)(4-1)+2 = 11 > s = 10"


def test_two_pencil_passes():
    # absent-line branch stays open: m1*m2 + 2 = 11 <= s = 31
    out = two_pencil(Profile.from_counts(10, {2: 24, 3: 7}))
    assert not out.excluded
    # greedy branch but the refined inequality holds: 4 + 3 <= 7
    out = two_pencil(Profile.from_counts(7, {3: 7}))
    assert not out.excluded
    assert out.detail == "a=3; 4+3 <= 7"


def test_greedy_common_line_points():
    assert greedy_common_line_points(Profile.from_counts(7, {3: 7})) == 3
    assert greedy_common_line_points(Profile.from_counts(10, {3: 7, 4: 4})) == 3
    assert greedy_common_line_points(Profile.from_counts(43, {7: 43})) == 7
    with pytest.raises(ValueError):
        greedy_common_line_points(Profile.from_counts(7, {7: 1}))


def test_budget_exhaustion_unreachable_on_valid_profiles():
    """Every valid profile satisfies sum (m_i - 1) >= d, because each
    term m(m-1) <= M(m-1) bounds the pair identity by M * sum (m_i - 1)
    with M <= d - 1 off the pencil.  The greedy absorber therefore never
    runs out, and the budget-exhausted branch stays defensive."""
    for d in range(4, 9):
        for p in enumerate_profiles(d, extra_pruning=False):
            out = two_pencil(p)
            assert out.reason != REASON_BUDGET_EXHAUSTED
            assert p.sum_m - p.s >= d


def test_refined_inequality_alone():
    # two_pencil passes the Fano profile outright, and even the refined
    # inequality on its own would not have excluded it
    assert refined_inequality_alone(Profile.from_counts(7, {3: 7})) is False
    assert refined_inequality_alone(Profile.from_counts(10, {3: 9, 4: 3})) is False


def test_two_pencil_needs_two_points():
    with pytest.raises(ValueError):
        two_pencil(Profile.from_counts(5, {5: 1}))
