"""Exact data model for line-arrangement multiplicity profiles.

A configuration of d mutually distinct lines in a projective plane has a
finite singular set: the points where at least two of the lines cross.
Writing t_k for the number of points lying on exactly k of the lines,
double counting the C(d,2) pairs of lines gives the pair-count identity

    C(d,2) = sum_{k=2}^{d} t_k * C(k,2).

The linear Harbourne constant of the configuration is

    H = (d^2 - sum_i m_i^2) / s

where m_1, ..., m_s are the multiplicities of the s singular points.  The
same expression evaluated on a bare count vector T = (t_2, ..., t_d),
realizable by an arrangement or not, is the combinatorial quotient q(T).
Whenever the pair-count identity holds it agrees with (d - sum_i m_i)/s,
and the implementation asserts that equivalence.

All verdict-affecting arithmetic in this package is exact: counts are
Python integers and quotients are fractions.Fraction values.  Floating
point appears only in display formatting and figures.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/[1-9]\d*)?")
_PROFILE_RE = re.compile(r"d=(\d+);\s*(.*)")
_ENTRY_RE = re.compile(r"t(\d+)=(\d+)")


class ProfileError(ValueError):
    """Raised when integer data cannot form a valid multiplicity profile."""


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as 'p' or 'p/q'.  Decimals are rejected."""
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise ValueError(
            f"not an exact rational: {text!r} (write -29/12 or -3, not a decimal)"
        )
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    """Canonical text for an exact rational: 'p/q' in lowest terms, or 'p'."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Profile:
    """Multiplicity profile of a configuration of d lines.

    counts holds (k, t_k) pairs with t_k > 0, ascending in k.  Construction
    validates the pair-count identity, so every Profile in existence is
    combinatorially consistent.  Use from_counts or validate_profile rather
    than the bare constructor unless the pairs are already normalized.
    """

    d: int
    counts: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        d = self.d
        if not isinstance(d, int) or d < 2:
            raise ProfileError(f"need at least two lines, got d={d!r}")
        prev = 1
        weight = 0
        for k, t in self.counts:
            if k <= prev:
                raise ProfileError("multiplicities must be ascending and unique")
            if k > d:
                raise ProfileError(f"multiplicity {k} exceeds the line count {d}")
            if t <= 0:
                raise ProfileError(f"count t_{k}={t} must be positive")
            prev = k
            weight += t * comb(k, 2)
        if not self.counts:
            raise ProfileError("empty singular set: some t_k must be positive")
        if weight != comb(d, 2):
            raise ProfileError(
                f"pair-count identity violated: C({d},2)={comb(d, 2)} "
                f"but sum t_k*C(k,2)={weight}"
            )

    @classmethod
    def from_counts(cls, d: int, counts: Mapping[int, int]) -> "Profile":
        """Build a profile from a {multiplicity: count} mapping, dropping zeros."""
        items = tuple(sorted((k, t) for k, t in counts.items() if t != 0))
        return cls(d, items)

    @cached_property
    def s(self) -> int:
        """Number of singular points."""
        return sum(t for _, t in self.counts)

    @cached_property
    def sum_m(self) -> int:
        """Sum of all point multiplicities."""
        return sum(k * t for k, t in self.counts)

    @cached_property
    def sum_m_sq(self) -> int:
        """Sum of squared point multiplicities."""
        return sum(k * k * t for k, t in self.counts)

    @property
    def is_pencil(self) -> bool:
        """True for the single-point profile t_d = 1 (all lines concurrent)."""
        return self.counts == ((self.d, 1),)

    def count(self, k: int) -> int:
        for kk, t in self.counts:
            if kk == k:
                return t
        return 0

    def max_multiplicity(self) -> int:
        return self.counts[-1][0]

    def to_multiset(self) -> "MultiplicityMultiset":
        return MultiplicityMultiset.from_profile(self)

    def canonical(self) -> str:
        """Canonical textual form, e.g. 'd=10; t3=7,t4=4'."""
        entries = ",".join(f"t{k}={t}" for k, t in self.counts)
        return f"d={self.d}; {entries}"

    def __str__(self) -> str:
        return self.canonical()


def validate_profile(d: int, t: Sequence[int]) -> Profile:
    """Validate a dense count vector indexed by multiplicity k = 2..d.

    Shorter sequences are padded with zeros on the right.  Raises
    ProfileError when the data cannot be a profile of d lines.
    """
    if len(t) > d - 1:
        raise ProfileError(f"count vector has entries beyond multiplicity d={d}")
    counts: dict[int, int] = {}
    for offset, value in enumerate(t):
        if value < 0:
            raise ProfileError(f"negative count t_{offset + 2}={value}")
        if value:
            counts[offset + 2] = value
    return Profile.from_counts(d, counts)


def parse_profile(text: str) -> Profile:
    """Parse the canonical textual form produced by Profile.canonical()."""
    m = _PROFILE_RE.fullmatch(text.strip())
    if not m:
        raise ProfileError(f"malformed profile text: {text!r}")
    d = int(m.group(1))
    counts: dict[int, int] = {}
    for part in m.group(2).split(","):
        e = _ENTRY_RE.fullmatch(part.strip())
        if not e:
            raise ProfileError(f"malformed profile entry: {part!r}")
        k = int(e.group(1))
        if k in counts:
            raise ProfileError(f"duplicate entry for multiplicity {k}")
        counts[k] = int(e.group(2))
    return Profile.from_counts(d, counts)


@dataclass(frozen=True)
class MultiplicityMultiset:
    """Multiset of singular point multiplicities, stored descending.

    Unlike Profile this carries no line count and no identity constraint,
    so it can describe point sets that no arrangement of any given d
    realizes.  Conversion to Profile is total; conversion back to a
    Profile (for a given d) succeeds only when the pair-count identity
    holds.
    """

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ProfileError("empty multiplicity multiset")
        prev = None
        for m in self.entries:
            if m < 2:
                raise ProfileError(f"multiplicity {m} below 2 is not singular")
            if prev is not None and m > prev:
                raise ProfileError("multiset entries must be non-increasing")
            prev = m

    @classmethod
    def of(cls, values: Iterable[int]) -> "MultiplicityMultiset":
        return cls(tuple(sorted(values, reverse=True)))

    @classmethod
    def from_profile(cls, p: Profile) -> "MultiplicityMultiset":
        out: list[int] = []
        for k, t in reversed(p.counts):
            out.extend([k] * t)
        return cls(tuple(out))

    def to_profile(self, d: int) -> Profile:
        counts: dict[int, int] = {}
        for m in self.entries:
            counts[m] = counts.get(m, 0) + 1
        return Profile.from_counts(d, counts)

    @property
    def s(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)


def combinatorial_quotient(p: Profile) -> Fraction:
    """q(T) = (d^2 - sum t_k k^2) / s, exactly.

    For a valid profile the pair-count identity makes this equal to
    (d - sum t_k k) / s, checked here on every call.
    """
    q = Fraction(p.d * p.d - p.sum_m_sq, p.s)
    assert q == Fraction(p.d - p.sum_m, p.s)
    return q


def harbourne_of_multiset(d: int, m: MultiplicityMultiset) -> Fraction:
    """Harbourne constant (d^2 - sum m_i^2)/s of a raw multiplicity multiset.

    No pair-count identity is required; when it does hold the result is
    asserted to agree with the linear form (d - sum m_i)/s.
    """
    if d < 2:
        raise ProfileError(f"need at least two lines, got d={d}")
    s = m.s
    total = sum(m.entries)
    total_sq = sum(v * v for v in m.entries)
    value = Fraction(d * d - total_sq, s)
    if sum(comb(v, 2) for v in m.entries) == comb(d, 2):
        assert value == Fraction(d - total, s)
    return value
