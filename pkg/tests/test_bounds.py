from fractions import Fraction

import pytest

from harbourne.bounds import (
    AUDIT_KNOWN_DISCREPANCY,
    AUDIT_MATCH,
    AUDIT_OUT_OF_DOMAIN,
    KNOWN_H,
    ConjectureOutOfDomain,
    audit_conjecture,
    best_known_upper,
    conjecture_data,
    conjectured_h,
    generic_profile,
    is_prime_power,
    lower_bound_compare,
    lower_bound_holds,
    naive_upper_bound,
    pencil_tradeoff,
    prime_power,
    q_of,
    r_of,
    removal_pattern_counts,
)
from harbourne.profiles import Profile, combinatorial_quotient


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(6) is None
    assert prime_power(1) is None
    assert prime_power(12) is None
    assert is_prime_power(49) and not is_prime_power(10)


def test_q_of():
    """q(d) jumps exactly at d = q^2 + q + 2 and skips non prime powers."""
    assert q_of(2) == 2
    assert q_of(7) == 2
    assert q_of(8) == 3
    assert q_of(13) == 3
    assert q_of(14) == 4
    assert q_of(21) == 4
    assert q_of(22) == 5
    assert q_of(31) == 5
    assert q_of(32) == 7  # no plane of order 6
    assert q_of(43) == 7
    assert q_of(57) == 7
    assert q_of(58) == 8
    with pytest.raises(ValueError):
        q_of(1)


def test_r_of():
    assert r_of(7) == 2
    assert r_of(12) == 2
    assert r_of(13) == 3
    assert r_of(21) == 4
    assert r_of(30) == 4
    assert r_of(31) == 5
    assert r_of(42) == 5
    assert r_of(43) == 5  # 43 = 6^2 + 6 + 1 but 6 is not a prime power
    assert r_of(57) == 7
    with pytest.raises(ValueError):
        r_of(6)


def test_removal_pattern_domain():
    with pytest.raises(ConjectureOutOfDomain):
        removal_pattern_counts(3, 6)
    with pytest.raises(ConjectureOutOfDomain):
        removal_pattern_counts(3, -1)


def test_removal_pattern_weight():
    """Deleting i of q^2+q+1 lines keeps the pair identity on the raw
    pattern, counting the sub-singular residuals as honest points."""
    from math import comb

    for q in (2, 3, 4, 5, 6, 7):
        for i in range(2 * q):
            raw = removal_pattern_counts(q, i)
            d = q * q + q + 1 - i
            assert sum(cnt * comb(mult, 2) for mult, cnt in raw if cnt) == comb(d, 2)
            assert all(cnt >= 0 for _, cnt in raw)
            assert all(mult >= 0 for mult, cnt in raw if cnt)


def test_conjecture_data_worked():
    data = conjecture_data(10)
    assert (data.q, data.i) == (3, 3)
    assert data.h == Fraction(-29, 12)
    assert data.profile == Profile.from_counts(10, {3: 9, 4: 3})
    assert not data.flagged

    data = conjecture_data(26)
    assert (data.q, data.i) == (5, 5)
    assert data.h == Fraction(-43, 10)

    value, witness = conjectured_h(13)
    assert value == Fraction(-3)
    assert witness.profile == Profile.from_counts(13, {4: 13})


def test_conjecture_flagged_d4():
    """The d = 4 deletion leaves a residual simple point: the formula says
    -6/5 over 5 points while the profile of actual singular points gives
    -5/4, and neither is the true H(4) = -4/3."""
    data = conjecture_data(4)
    assert data.flagged
    assert data.h == Fraction(-6, 5)
    assert combinatorial_quotient(data.profile) == Fraction(-5, 4)
    assert KNOWN_H[4] == Fraction(-4, 3)


def test_conjecture_out_of_domain():
    for d in (2, 3, 32, 43):
        with pytest.raises(ConjectureOutOfDomain):
            conjecture_data(d)


def test_lower_bound_exact_comparison():
    # the bound is attained exactly by the full planes: 4d-3 is a perfect
    # square at d = q^2+q+1 and (1-sqrt(4d-3))/2 = -q
    for q, d in ((2, 7), (3, 13), (4, 21), (5, 31)):
        assert lower_bound_compare(Fraction(-q), d) == 0
        assert lower_bound_compare(Fraction(-q) + Fraction(1, 10**9), d) == 1
        assert lower_bound_compare(Fraction(-q) - Fraction(1, 10**9), d) == -1
        assert lower_bound_holds(Fraction(-q), d)
    assert lower_bound_compare(Fraction(1), 10) == 1
    with pytest.raises(ValueError):
        lower_bound_compare(Fraction(-2), 5)


def test_known_values_respect_lower_bound():
    touching = []
    for d in range(6, 32):
        cmp = lower_bound_compare(KNOWN_H[d], d)
        assert cmp >= 0
        if cmp == 0:
            touching.append(d)
    assert touching == [7, 13, 21, 31]


def test_generic_profile():
    value, witness = generic_profile(2)
    assert value == 0
    assert witness.profile == Profile.from_counts(2, {2: 1})
    value, witness = generic_profile(5)
    assert value == Fraction(-3, 2)
    assert combinatorial_quotient(witness.profile) == value
    with pytest.raises(ValueError):
        generic_profile(1)


def test_naive_upper_bound():
    value, witness = naive_upper_bound(10)
    assert value == Fraction(-59, 31)
    assert witness.profile == Profile.from_counts(10, {2: 24, 3: 7})
    with pytest.raises(ValueError):
        naive_upper_bound(6)


def test_naive_closed_form_matches_profile():
    for d in range(7, 41):
        value, witness = naive_upper_bound(d)
        assert value == combinatorial_quotient(witness.profile)


def test_best_known_upper_reproduces_table():
    for d in range(2, 32):
        value, witness = best_known_upper(d)
        assert value == KNOWN_H[d], f"d={d}"
        assert combinatorial_quotient(witness.profile) == value


def test_best_known_upper_provenance():
    assert best_known_upper(2)[1].provenance == "generic"
    assert best_known_upper(4)[1].provenance == "generic"  # flagged formula skipped
    assert best_known_upper(10)[1].provenance == "conjecture"


def test_audit():
    rows = {row.d: row for row in audit_conjecture(2, 31)}
    assert rows[2].status == AUDIT_OUT_OF_DOMAIN
    assert rows[3].status == AUDIT_OUT_OF_DOMAIN
    assert rows[4].status == AUDIT_KNOWN_DISCREPANCY
    for d in range(5, 32):
        assert rows[d].status == AUDIT_MATCH, f"d={d}"
        assert rows[d].formula == KNOWN_H[d]


def test_pencil_tradeoff():
    from harbourne.pipeline import enumerate_profiles

    assert pencil_tradeoff(10, 1) == pytest.approx(0.0)  # the pencil itself
    # the curve lower-bounds the quotient of every profile with s points
    for p in enumerate_profiles(10):
        assert float(combinatorial_quotient(p)) >= pencil_tradeoff(10, p.s) - 1e-9
    # ... and the generic profile sits exactly on it at s = C(d,2)
    assert pencil_tradeoff(10, 45) == pytest.approx(-16 / 9)
    with pytest.raises(ValueError):
        pencil_tradeoff(10, 0)


def test_known_table_is_complete():
    assert sorted(KNOWN_H) == list(range(2, 32))
    assert all(isinstance(v, Fraction) for v in KNOWN_H.values())
