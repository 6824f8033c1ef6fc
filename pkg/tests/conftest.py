"""Shared fixtures: the geometric constructions used across test modules.

Building PG(2,q) arrangements is the slowest setup step, so the full
planes and the deletion family are built once per session.  REMOVALS
lists every (q, i) pair the deletion construction supports for q <= 5.
"""

import pytest
from hypothesis import strategies as st

from harbourne.geometry import full_plane_arrangement, removal_construction
from harbourne.profiles import Profile

PLANE_ORDERS = (2, 3, 4, 5, 7)

REMOVALS = tuple(
    (q, i) for q in (2, 3, 4, 5) for i in range(2 * q)
)


@pytest.fixture(scope="session")
def full_planes():
    return {q: full_plane_arrangement(q) for q in PLANE_ORDERS}


@pytest.fixture(scope="session")
def removal_family():
    return {(q, i): removal_construction(q, i) for q, i in REMOVALS}


@st.composite
def valid_profiles(draw, min_d: int = 5, max_d: int = 9):
    """A random valid multiplicity profile: draw counts for k = d-1 down
    to 3 within the remaining pair weight, then let t_2 absorb the rest.
    Never produces the pencil (t_d stays 0)."""
    from math import comb

    d = draw(st.integers(min_d, max_d))
    rem = comb(d, 2)
    counts = {}
    for k in range(d - 1, 2, -1):
        cap = rem // comb(k, 2)
        if cap == 0:
            continue
        t = draw(st.integers(0, cap))
        if t:
            counts[k] = t
            rem -= t * comb(k, 2)
    if rem:
        counts[2] = rem
    return Profile.from_counts(d, counts)
