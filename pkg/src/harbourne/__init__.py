"""Exact Harbourne constants of line arrangements.

H(d) is the minimum, over all arrangements of d lines over all fields,
of (d^2 - sum of squared point multiplicities) divided by the number of
intersection points.  This package computes H(d) exactly: upper bounds
come from explicit constructions in finite projective planes, lower
bounds from an exhaustive exclusion of every combinatorial multiplicity
profile below the candidate value.  All verdict arithmetic is exact
rational arithmetic.

Entry points: compute_H certifies a single d, check proves one bound,
and the `harbourne` command line exposes both plus the constructions.
"""

from .bounds import (
    KNOWN_H,
    ConjectureOutOfDomain,
    audit_conjecture,
    best_known_upper,
    conjecture_data,
    conjectured_h,
    generic_profile,
    lower_bound_compare,
    lower_bound_holds,
    naive_upper_bound,
    q_of,
    r_of,
)
from .criteria import few_points, two_pencil
from .feasibility import (
    FeasibilitySystem,
    LineType,
    build_system,
    emit_lp,
    enumerate_line_types,
    solve,
)
from .geometry import (
    Arrangement,
    FiniteField,
    full_plane_arrangement,
    make_field,
    pg2,
    removal_construction,
)
from .pipeline import (
    CertifiedValue,
    CheckInterrupted,
    Counters,
    ExclusionRecord,
    SUCCESS_LINE,
    Verdict,
    check,
    compute_H,
    count_profiles,
    enumerate_profiles,
    exclude,
)
from .profiles import (
    MultiplicityMultiset,
    Profile,
    ProfileError,
    combinatorial_quotient,
    format_rational,
    harbourne_of_multiset,
    parse_profile,
    parse_rational,
    validate_profile,
)

__version__ = "0.1.0"

__all__ = [
    "KNOWN_H",
    "Arrangement",
    "CertifiedValue",
    "CheckInterrupted",
    "ConjectureOutOfDomain",
    "Counters",
    "ExclusionRecord",
    "FeasibilitySystem",
    "FiniteField",
    "LineType",
    "MultiplicityMultiset",
    "Profile",
    "ProfileError",
    "SUCCESS_LINE",
    "Verdict",
    "audit_conjecture",
    "best_known_upper",
    "build_system",
    "check",
    "combinatorial_quotient",
    "compute_H",
    "conjecture_data",
    "conjectured_h",
    "count_profiles",
    "emit_lp",
    "enumerate_line_types",
    "enumerate_profiles",
    "exclude",
    "few_points",
    "format_rational",
    "full_plane_arrangement",
    "generic_profile",
    "harbourne_of_multiset",
    "lower_bound_compare",
    "lower_bound_holds",
    "make_field",
    "naive_upper_bound",
    "parse_profile",
    "parse_rational",
    "pg2",
    "q_of",
    "r_of",
    "removal_construction",
    "solve",
    "two_pencil",
    "validate_profile",
    "__version__",
]
