"""Cheap combinatorial exclusion criteria for multiplicity profiles.

Each criterion inspects a profile and either proves that no arrangement
of lines realizes it (excluded, with the deciding inequality recorded)
or passes it on.  Both criteria here are counting arguments:

few points
    Apart from the pencil, d lines determine at least d intersection
    points, so any non-pencil profile with s < d is impossible.

two pencils
    Take two points P1, P2 of the highest multiplicities m1 >= m2.  Lines
    through neither point must each carry an extra singular point on the
    line P1P2 side of the count, which forces

        (m1 - 1)(m2 - 1) + a <= s

    where a >= 2 counts the points needed on one common line absorbing
    the zp = d - m1 - m2 + 1 lines missing both pencils.  A realizable
    profile must satisfy that inequality or keep m1*m2 + 2 <= s (the case
    P1P2 not among the lines).  The branch constant a is lower bounded
    greedily from the remaining multiplicities; when the whole multiset
    cannot absorb the zp lines the profile dies outright.
"""

from __future__ import annotations

from dataclasses import dataclass

from .profiles import Profile

REASON_NONE = "none"
REASON_FEW_POINTS = "few-points"
REASON_TWO_PENCIL_COARSE = "two-pencil-coarse"
REASON_TWO_PENCIL_REFINED = "two-pencil-refined"
REASON_BUDGET_EXHAUSTED = "budget-exhausted"
REASON_FEASIBILITY = "feasibility"
REASON_SURVIVOR = "survivor"


@dataclass(frozen=True)
class ExclusionOutcome:
    """Verdict of one criterion on one profile.

    detail carries the numbers substituted into the deciding inequality,
    so a reader can recheck the arithmetic without rerunning anything.
    """

    excluded: bool
    reason: str
    detail: str = ""

    def __post_init__(self) -> None:
        assert self.excluded == (self.reason != REASON_NONE)


def _not_excluded(detail: str = "") -> ExclusionOutcome:
    return ExclusionOutcome(False, REASON_NONE, detail)


def few_points(p: Profile) -> ExclusionOutcome:
    """Exclude non-pencil profiles with fewer than d points."""
    if p.is_pencil:
        return _not_excluded("pencil")
    if p.s < p.d:
        return ExclusionOutcome(
            True, REASON_FEW_POINTS, f"s={p.s} < d={p.d}"
        )
    return _not_excluded(f"s={p.s} >= d={p.d}")


def _descending_multiplicities(p: Profile) -> list[int]:
    out: list[int] = []
    for k, t in reversed(p.counts):
        out.extend([k] * t)
    return out


def greedy_common_line_points(p: Profile) -> int | None:
    """Lower bound a, the number of singular points on a common line of the
    zp = d - m1 - m2 + 1 lines avoiding both top pencils.

    The two largest multiplicities are removed from the multiset (two
    copies of the same t_k budget when m1 = m2), then points are drawn
    largest first, each absorbing m - 1 of the zp lines.  Returns the
    bound a >= 2, or None when the multiset runs out before all zp lines
    are absorbed, which already refutes the profile.
    """
    mults = _descending_multiplicities(p)
    if len(mults) < 2:
        raise ValueError("need at least two singular points")
    m1 = mults.pop(0)
    m2 = mults.pop(0)
    zp = p.d - m1 - m2 + 1
    a = 2
    while zp > 0:
        if not mults:
            return None
        m = mults.pop(0)
        zp -= m - 1
        a += 1
    return a


def two_pencil(p: Profile) -> ExclusionOutcome:
    """Apply the two-pencil counting argument to a profile with s >= 2."""
    if p.s < 2:
        raise ValueError("two-pencil criterion needs at least two points")
    mults = _descending_multiplicities(p)
    m1, m2 = mults[0], mults[1]
    s = p.s
    coarse = (m1 - 1) * (m2 - 1) + 2
    if coarse > s:
        return ExclusionOutcome(
            True, REASON_TWO_PENCIL_COARSE,
            f"({m1}-1)({m2}-1)+2 = {coarse} > s = {s}",
        )
    if m1 * m2 + 2 <= s:
        # the line P1P2 may be absent: both branches of the dichotomy survive
        return _not_excluded(f"m1*m2+2 = {m1 * m2 + 2} <= s = {s}")
    a = greedy_common_line_points(p)
    if a is None:
        zp = p.d - m1 - m2 + 1
        return ExclusionOutcome(
            True, REASON_BUDGET_EXHAUSTED,
            f"multiset exhausted absorbing zp = {zp} lines off both pencils",
        )
    refined = (m1 - 1) * (m2 - 1)
    if refined + a > s:
        return ExclusionOutcome(
            True, REASON_TWO_PENCIL_REFINED,
            f"a={a}; {refined}+{a} > {s}",
        )
    return _not_excluded(f"a={a}; {refined}+{a} <= {s}")


def refined_inequality_alone(p: Profile) -> bool:
    """True when (m1-1)(m2-1) + a > s holds even though two_pencil passed
    the profile (because m1*m2 + 2 <= s kept the absent-line branch open).

    A survivor with this property is exactly where the shortcut of testing
    only the refined inequality would flip a verdict; the pipeline notes
    it in the survivor record.
    """
    mults = _descending_multiplicities(p)
    m1, m2 = mults[0], mults[1]
    a = greedy_common_line_points(p)
    if a is None:
        return True
    return (m1 - 1) * (m2 - 1) + a > p.s
