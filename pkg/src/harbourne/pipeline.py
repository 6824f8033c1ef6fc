"""Exhaustive profile screening: enumerate, exclude, certify.

For d lines every nonnegative vector (t_2, ..., t_d) satisfying the
pair-count identity is a candidate multiplicity profile.  check(d, h)
walks all of them in a fixed canonical order and, for each profile whose
combinatorial quotient falls strictly below the tested bound h, runs the
exclusion chain

    few points  ->  two pencils  ->  integer incidence system.

If every tested profile is excluded then no arrangement of d lines has
Harbourne constant below h, so H(d) >= h; together with a construction
attaining h this pins H(d) exactly, which is what compute_H automates.

Canonical order and pruning.  Profiles are ordered by the count vector
(t_{d-1}, ..., t_3) ascending lexicographically with the highest index
most significant; t_2 absorbs the remaining pair weight and t_d stays 0
(the pencil is the only profile using t_d and is handled separately).
The stream starts with the all-double-points profile, then groups by the
highest multiplicity K present.  Two sound rules prune impossible
branches: points of multiplicities a, b at distinct points need
a + b <= d + 1 lines, and two points of equal multiplicity a need
2a - 1 <= d.  The second rule can be switched off (extra_pruning=False),
which only enlarges the seen counts, never changes a certified verdict.

Skipping.  The walker never visits untested profiles one by one: at any
branch node an exact integer bound (best single-ratio completion of the
remaining pair weight) decides whether the subtree can contain a tested
profile at all, and if not the subtree is counted in closed form by a
small dynamic program and skipped.  Counters, records, and verdicts are
identical to those of a plain walk, only faster.

Checkpoints.  Long runs write a cursor (the last profile accounted for,
in canonical text) plus all counters, atomically, every `cadence` seen
profiles and on interruption.  Resuming walks strictly after the cursor
and ends with the same counters and verdict as an uninterrupted run.
With jobs > 1 the partition blocks (by highest multiplicity) run in
separate processes and merge in canonical order, so the output stream is
byte-identical to the sequential one; checkpoints then happen at
partition boundaries.
"""

from __future__ import annotations

import json
import os
import shutil
import tempfile
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Callable, Iterator

from .bounds import (
    ConjectureOutOfDomain,
    SyntheticProfile,
    best_known_upper,
    generic_profile,
    removal_pattern_counts,
)
from .criteria import (
    REASON_BUDGET_EXHAUSTED,
    REASON_FEASIBILITY,
    REASON_FEW_POINTS,
    REASON_SURVIVOR,
    REASON_TWO_PENCIL_COARSE,
    REASON_TWO_PENCIL_REFINED,
    few_points,
    refined_inequality_alone,
    two_pencil,
)
from .feasibility import build_system, enumerate_line_types, solve
from .profiles import (
    Profile,
    combinatorial_quotient,
    format_rational,
    parse_profile,
    parse_rational,
)

REASON_ORDER = (
    REASON_FEW_POINTS,
    REASON_TWO_PENCIL_COARSE,
    REASON_TWO_PENCIL_REFINED,
    REASON_BUDGET_EXHAUSTED,
    REASON_FEASIBILITY,
    REASON_SURVIVOR,
)

SUCCESS_LINE = "All configurations have been excluded."

CHECKPOINT_MAGIC = "harbourne-checkpoint v1"


class CheckInterrupted(RuntimeError):
    """A walk stopped early at a clean cursor (checkpoint written if asked)."""


@dataclass
class Counters:
    """Profile bookkeeping: stream size, tested subset, per-reason tallies."""

    seen: int = 0
    tested: int = 0
    reasons: dict[str, int] = field(
        default_factory=lambda: dict.fromkeys(REASON_ORDER, 0)
    )

    def copy(self) -> "Counters":
        return Counters(self.seen, self.tested, dict(self.reasons))

    def merge(self, other: "Counters") -> None:
        self.seen += other.seen
        self.tested += other.tested
        for key, value in other.reasons.items():
            self.reasons[key] += value

    def summary_text(self) -> str:
        parts = [f"seen={self.seen}", f"tested={self.tested}"]
        parts.extend(f"{r}={self.reasons[r]}" for r in REASON_ORDER)
        return " ".join(parts)


@dataclass(frozen=True)
class ExclusionRecord:
    """One tested profile: its quotient, the verdict, and the arithmetic."""

    profile: Profile
    quotient: Fraction
    reason: str
    detail: str


@dataclass(frozen=True)
class Verdict:
    d: int
    bound: Fraction
    all_excluded: bool
    survivors: tuple[ExclusionRecord, ...]
    counters: Counters
    records: tuple[ExclusionRecord, ...] | None = None


@dataclass(frozen=True)
class EnumerationCursor:
    """Resumable position: the last profile accounted for plus counters."""

    d: int
    bound: Fraction
    extra_pruning: bool
    last: Profile | None
    counters: Counters


def _fake_plane_note(p: Profile) -> str | None:
    """Label survivors matching a deletion pattern of the order-6 plane.

    No projective plane of order 6 exists, but the counting pattern of
    deleting i lines from one still produces consistent profiles for
    32 <= d <= 43 (i = 43 - d).  Anything the excluders cannot kill in
    that band deserves the annotation, most prominently t_7 = 43.
    """
    d = p.d
    if not 32 <= d <= 43:
        return None
    i = 43 - d
    try:
        raw = removal_pattern_counts(6, i)
    except ConjectureOutOfDomain:
        return None
    counts: dict[int, int] = {}
    for mult, cnt in raw:
        if cnt and mult >= 2:
            counts[mult] = counts.get(mult, 0) + cnt
    if counts == dict(p.counts):
        return f"matches the deletion pattern of a hypothetical order-6 plane (i={i})"
    return None


def exclude(p: Profile) -> ExclusionRecord:
    """Run the full exclusion chain on one profile.

    Order: few points, two pencils, then the integer incidence system.
    A profile passing everything is a survivor; its record carries an
    integer solution as the witness, a note when the refined two-pencil
    inequality alone would have excluded it (the exact spot where the
    shortcut of skipping the absent-line branch would flip a verdict),
    and the order-6 annotation near d = 43.
    """
    q = combinatorial_quotient(p)
    if p.is_pencil:
        return ExclusionRecord(p, q, REASON_SURVIVOR, "pencil, realizable over any field")
    out = few_points(p)
    if out.excluded:
        return ExclusionRecord(p, q, out.reason, out.detail)
    out = two_pencil(p)
    if out.excluded:
        return ExclusionRecord(p, q, out.reason, out.detail)
    types = enumerate_line_types(p)
    if not types:
        return ExclusionRecord(p, q, REASON_FEASIBILITY, "no admissible line types")
    system = build_system(p)
    solutions = solve(system, "first")
    if not solutions:
        detail = (
            f"integer system infeasible: {len(types)} types, "
            f"{len(system.eq_rows)} equalities, {len(system.ineq_rows)} inequalities"
        )
        return ExclusionRecord(p, q, REASON_FEASIBILITY, detail)
    detail = f"solution x={solutions[0]}"
    notes = []
    if refined_inequality_alone(p):
        notes.append("refined two-pencil inequality alone would exclude this survivor")
    fake = _fake_plane_note(p)
    if fake:
        notes.append(fake)
    if notes:
        detail += "; " + "; ".join(notes)
    return ExclusionRecord(p, q, REASON_SURVIVOR, detail)


class _Engine:
    """The bound-aware walker over one value of d.

    g[k] = hd*k^2 + hn encodes the tested predicate: a profile is tested
    exactly when sum_k t_k * g[k] > hd * d^2 where h = hn/hd, which is an
    all-integer restatement of q(T) < h.  A subtree at level k with rem
    pair weight left satisfies max achievable sum <= acc + rem * max_j
    g[j]/C(j,2) over the multiplicities j still allowed below, so when
    that bound stays at or under hd*d^2 the subtree is skipped and its
    size added to the seen counter via dpcount.
    """

    def __init__(self, d: int, bound: Fraction, extra_pruning: bool = True):
        self.d = d
        self.bound = bound
        self.extra = extra_pruning
        self.total = comb(d, 2)
        self.C2 = [comb(k, 2) for k in range(d + 1)]
        hn, hd = bound.numerator, bound.denominator
        self.g = [hd * k * k + hn for k in range(d + 1)]
        self.need = hd * d * d

    def _cap(self, k: int, rem: int, K: int) -> int:
        """Largest admissible t_k below a top multiplicity K."""
        if k < K and k + K > self.d + 1:
            return 0
        cap = rem // self.C2[k]
        if self.extra and 2 * k - 1 > self.d:
            cap = min(cap, 1)
        return cap

    def _ratio_tables(self, K: int) -> tuple[list[int], list[int]]:
        """Best g[j]/C(j,2) over allowed j <= k, as exact num/den arrays."""
        num = [0] * (K + 1)
        den = [1] * (K + 1)
        best_n, best_d = self.g[2], 1
        for k in range(3, K + 1):
            if k + K <= self.d + 1:
                if self.g[k] * best_d > best_n * self.C2[k]:
                    best_n, best_d = self.g[k], self.C2[k]
            num[k] = best_n
            den[k] = best_d
        if K >= 2:
            num[2] = self.g[2]
            den[2] = 1
        return num, den

    def _greedy_fill(self, K: int, k: int, rem: int, base: dict[int, int]) -> Profile:
        """Last profile (canonical order) of the subtree rooted at level k."""
        out = dict(base)
        for j in range(k, 2, -1):
            cap = self._cap(j, rem, K)
            if cap:
                out[j] = cap
                rem -= cap * self.C2[j]
        if rem:
            out[2] = rem
        return Profile.from_counts(self.d, out)

    def partition_last_profile(self, K: int) -> Profile:
        """Last profile of partition K (highest multiplicity exactly K)."""
        if K == 2:
            return Profile.from_counts(self.d, {2: self.total})
        cap = self._cap(K, self.total, K)
        assert cap >= 1
        return self._greedy_fill(
            K, K - 1, self.total - cap * self.C2[K], {K: cap}
        )

    def count_partition(self, K: int) -> int:
        """Number of profiles in partition K, in closed form."""
        if K == 2:
            return 1
        memo: dict[tuple[int, int], int] = {}
        C2 = self.C2

        def dp(k: int, rem: int) -> int:
            if k == 2:
                return 1
            key = (k, rem)
            val = memo.get(key)
            if val is None:
                val = sum(
                    dp(k - 1, rem - v * C2[k])
                    for v in range(self._cap(k, rem, K) + 1)
                )
                memo[key] = val
            return val

        top = self._cap(K, self.total, K)
        return sum(dp(K - 1, self.total - v * C2[K]) for v in range(1, top + 1))

    def walk(
        self,
        K: int,
        counters: Counters,
        *,
        start_after: dict[int, int] | None = None,
        on_record: Callable[[ExclusionRecord], None] | None = None,
        cadence: int | None = None,
        checkpoint_cb: Callable[[Profile], None] | None = None,
        should_stop: Callable[[], bool] | None = None,
    ) -> list[ExclusionRecord]:
        """Walk partition K in canonical order, updating counters in place.

        start_after is a sparse {multiplicity: count} cursor (entries with
        k >= 3) whose highest key must be K; only strictly later profiles
        are processed.  Returns the survivor records found.
        """
        d, total = self.d, self.total
        C2, g, need, extra = self.C2, self.g, self.need, self.extra
        g2 = g[2]
        survivors: list[ExclusionRecord] = []
        vec: dict[int, int] = {}

        next_mark: int | None = None
        if cadence:
            next_mark = (counters.seen // cadence + 1) * cadence
        stop_every = 4096
        stop_countdown = stop_every

        def position(t2: int) -> Profile:
            counts = dict(vec)
            if t2:
                counts[2] = t2
            return Profile.from_counts(d, counts)

        def slow_tick(make_position: Callable[[], Profile]) -> None:
            # reached every stop_every leaves/skips and at cadence marks
            nonlocal next_mark, stop_countdown
            hit_mark = next_mark is not None and counters.seen >= next_mark
            stopping = bool(should_stop and should_stop())
            stop_countdown = stop_every
            if (hit_mark or stopping) and checkpoint_cb is not None:
                checkpoint_cb(make_position())
            if next_mark is not None:
                while next_mark <= counters.seen:
                    next_mark += cadence  # type: ignore[operator]
            if stopping:
                raise CheckInterrupted(f"stopped inside partition K={K}")

        def leaf(t2: int, acc: int) -> None:
            nonlocal stop_countdown
            counters.seen += 1
            if acc + t2 * g2 > need:
                counters.tested += 1
                record = exclude(position(t2))
                counters.reasons[record.reason] += 1
                if record.reason == REASON_SURVIVOR:
                    survivors.append(record)
                if on_record is not None:
                    on_record(record)
            stop_countdown -= 1
            if stop_countdown <= 0 or (
                next_mark is not None and counters.seen >= next_mark
            ):
                slow_tick(lambda: position(t2))

        if K == 2:
            if start_after is None:
                leaf(total, 0)
            return survivors

        memo: dict[tuple[int, int], int] = {}

        def dpcount(k: int, rem: int) -> int:
            if k == 2:
                return 1
            key = (k, rem)
            val = memo.get(key)
            if val is None:
                val = sum(
                    dpcount(k - 1, rem - v * C2[k])
                    for v in range(self._cap(k, rem, K) + 1)
                )
                memo[key] = val
            return val

        ratio_num, ratio_den = self._ratio_tables(K)

        def rec(k: int, rem: int, acc: int, tail: dict[int, int] | None) -> None:
            nonlocal stop_countdown
            if k == 2:
                if tail is not None:
                    return  # exactly the cursor profile, already accounted
                leaf(rem, acc)
                return
            if tail is None and rem * ratio_num[k] <= (need - acc) * ratio_den[k]:
                counters.seen += dpcount(k, rem)
                stop_countdown -= 1
                if stop_countdown <= 0 or (
                    next_mark is not None and counters.seen >= next_mark
                ):
                    slow_tick(lambda: self._greedy_fill(K, k, rem, vec))
                return
            cap = self._cap(k, rem, K)
            lo = 0
            if tail is not None:
                lo = tail.get(k, 0)
                if lo > cap:
                    raise ValueError(
                        f"cursor value t_{k}={lo} is outside the enumeration "
                        f"(cap {cap}); checkpoint does not fit this run"
                    )
            gk, ck = g[k], C2[k]
            for v in range(lo, cap + 1):
                if v:
                    vec[k] = v
                rec(
                    k - 1,
                    rem - v * ck,
                    acc + v * gk,
                    tail if (tail is not None and v == lo) else None,
                )
                if v:
                    del vec[k]

        cap_top = self._cap(K, total, K)
        lo_top = 1
        tail_top: dict[int, int] | None = None
        if start_after is not None:
            if not start_after or max(start_after) != K:
                raise ValueError(f"cursor does not belong to partition K={K}")
            tail_top = start_after
            lo_top = start_after[K]
            if lo_top > cap_top:
                raise ValueError(
                    f"cursor value t_{K}={lo_top} is outside the enumeration"
                )
        for v in range(lo_top, cap_top + 1):
            vec[K] = v
            rec(
                K - 1,
                total - v * C2[K],
                v * g[K],
                tail_top if (tail_top is not None and v == lo_top) else None,
            )
            del vec[K]
        return survivors


def enumerate_profiles(
    d: int,
    *,
    extra_pruning: bool = True,
    start_after: Profile | None = None,
) -> Iterator[Profile]:
    """Yield every candidate profile of d lines in canonical order.

    The stream omits the pencil (t_d = 1), starts with the all-double
    profile, then ascends through partitions by highest multiplicity.
    With start_after only strictly later profiles are yielded.  This
    generator is the plain reference enumeration; check() walks the same
    stream with subtree skipping and must agree with it profile for
    profile, which the test suite verifies.
    """
    if d < 3:
        raise ValueError(f"enumeration needs d >= 3, got {d}")
    total = comb(d, 2)
    tail_all: dict[int, int] | None = None
    if start_after is not None:
        if start_after.d != d:
            raise ValueError("start_after profile has a different d")
        tail_all = {k: t for k, t in start_after.counts if k >= 3}
    if start_after is None:
        yield Profile.from_counts(d, {2: total})
    k_start = 3
    if tail_all:
        k_start = max(tail_all)

    def cap_at(k: int, rem: int, K: int) -> int:
        if k < K and k + K > d + 1:
            return 0
        cap = rem // comb(k, 2)
        if extra_pruning and 2 * k - 1 > d:
            cap = min(cap, 1)
        return cap

    vec: dict[int, int] = {}

    def rec(K: int, k: int, rem: int, tail: dict[int, int] | None) -> Iterator[Profile]:
        if k == 2:
            if tail is None:
                counts = dict(vec)
                if rem:
                    counts[2] = rem
                yield Profile.from_counts(d, counts)
            return
        lo = tail.get(k, 0) if tail is not None else 0
        for v in range(lo, cap_at(k, rem, K) + 1):
            if v:
                vec[k] = v
            yield from rec(
                K, k - 1, rem - v * comb(k, 2),
                tail if (tail is not None and v == lo) else None,
            )
            if v:
                del vec[k]

    for K in range(k_start, d):
        tail = tail_all if (tail_all and K == k_start) else None
        lo = tail[K] if tail else 1
        for v in range(lo, cap_at(K, total, K) + 1):
            vec[K] = v
            yield from rec(
                K, K - 1, total - v * comb(K, 2),
                tail if (tail is not None and v == lo) else None,
            )
            del vec[K]


def count_profiles(d: int, *, extra_pruning: bool = True) -> int:
    """Size of the canonical profile stream, in closed form."""
    if d < 3:
        raise ValueError(f"enumeration needs d >= 3, got {d}")
    engine = _Engine(d, Fraction(0), extra_pruning)
    return 1 + sum(engine.count_partition(K) for K in range(3, d))


def format_record_line(rec: ExclusionRecord, fmt: str = "text") -> str:
    if fmt == "text":
        q = rec.quotient
        return f"{rec.profile.canonical()}\t{q.numerator}/{q.denominator}\t{rec.reason}\t{rec.detail}"
    return json.dumps(
        {
            "type": "record",
            "profile": rec.profile.canonical(),
            "q": f"{rec.quotient.numerator}/{rec.quotient.denominator}",
            "reason": rec.reason,
            "detail": rec.detail,
        }
    )


class ReportWriter:
    """Streams one line per event; text and structured modes match 1:1."""

    def __init__(self, stream, fmt: str = "text"):
        if fmt not in ("text", "structured"):
            raise ValueError(f"unknown report format {fmt!r}")
        self.stream = stream
        self.fmt = fmt

    def header(self, d: int, bound: Fraction, extra_pruning: bool) -> None:
        # no run metadata beyond the problem itself: the stream must be
        # byte-identical whatever the jobs count or checkpoint cadence
        if self.fmt == "text":
            self.stream.write(
                f"# check d={d} bound={format_rational(bound)} "
                f"extra-pruning={'on' if extra_pruning else 'off'}\n"
            )
        else:
            self.stream.write(
                json.dumps(
                    {
                        "type": "header",
                        "d": d,
                        "bound": format_rational(bound),
                        "extra_pruning": extra_pruning,
                    }
                )
                + "\n"
            )

    def record(self, rec: ExclusionRecord) -> None:
        self.stream.write(format_record_line(rec, self.fmt) + "\n")

    def summary(self, counters: Counters) -> None:
        if self.fmt == "text":
            self.stream.write(f"# {counters.summary_text()}\n")
        else:
            self.stream.write(
                json.dumps(
                    {
                        "type": "summary",
                        "seen": counters.seen,
                        "tested": counters.tested,
                        "reasons": {r: counters.reasons[r] for r in REASON_ORDER},
                    }
                )
                + "\n"
            )

    def verdict(self, all_excluded: bool, nsurvivors: int) -> None:
        message = (
            SUCCESS_LINE
            if all_excluded
            else f"Survivors remain: {nsurvivors} configuration(s) not excluded."
        )
        if self.fmt == "text":
            self.stream.write(message + "\n")
        else:
            self.stream.write(
                json.dumps(
                    {"type": "verdict", "all_excluded": all_excluded, "message": message}
                )
                + "\n"
            )


def write_checkpoint(path: str | Path, cursor: EnumerationCursor) -> None:
    """Atomically persist a cursor (write to a sibling temp file, rename)."""
    path = Path(path)
    lines = [
        CHECKPOINT_MAGIC,
        f"d={cursor.d}",
        f"bound={format_rational(cursor.bound)}",
        f"extra-pruning={'on' if cursor.extra_pruning else 'off'}",
        f"cursor={cursor.last.canonical() if cursor.last is not None else '-'}",
        f"seen={cursor.counters.seen}",
        f"tested={cursor.counters.tested}",
    ]
    lines.extend(f"reason.{r}={cursor.counters.reasons[r]}" for r in REASON_ORDER)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_checkpoint(path: str | Path) -> EnumerationCursor:
    text = Path(path).read_text().splitlines()
    if not text or text[0] != CHECKPOINT_MAGIC:
        raise ValueError(f"{path}: not a checkpoint file")
    fields: dict[str, str] = {}
    for line in text[1:]:
        if not line.strip():
            continue
        key, _, value = line.partition("=")
        fields[key] = value
    try:
        d = int(fields["d"])
        bound = parse_rational(fields["bound"])
        extra = fields["extra-pruning"] == "on"
        last = None if fields["cursor"] == "-" else parse_profile(fields["cursor"])
        counters = Counters(
            seen=int(fields["seen"]),
            tested=int(fields["tested"]),
            reasons={r: int(fields.get(f"reason.{r}", "0")) for r in REASON_ORDER},
        )
    except KeyError as missing:
        raise ValueError(f"{path}: checkpoint missing field {missing}") from None
    return EnumerationCursor(d, bound, extra, last, counters)


def _partition_worker(args) -> tuple[int, Counters, list[ExclusionRecord], str | None]:
    d, bound_text, extra, K, start_items, fmt = args
    engine = _Engine(d, Fraction(bound_text), extra)
    counters = Counters()
    start_after = dict(start_items) if start_items is not None else None
    lines_path = None
    on_record = None
    handle = None
    if fmt is not None:
        fd, lines_path = tempfile.mkstemp(prefix=f"harbourne-K{K}-", suffix=".part")
        handle = os.fdopen(fd, "w")
        on_record = lambda rec: handle.write(format_record_line(rec, fmt) + "\n")
    try:
        survivors = engine.walk(
            K, counters, start_after=start_after, on_record=on_record
        )
    finally:
        if handle is not None:
            handle.close()
    return K, counters, survivors, lines_path


def check(
    d: int,
    bound: Fraction | int | str,
    *,
    extra_pruning: bool = True,
    jobs: int = 1,
    report: str | Path | None = None,
    report_format: str = "text",
    checkpoint: str | Path | None = None,
    cadence: int = 1_000_000,
    resume: str | Path | EnumerationCursor | None = None,
    should_stop: Callable[[], bool] | None = None,
    collect_records: bool = False,
) -> Verdict:
    """Certify (or refute) the lower bound H(d) >= bound.

    Walks the whole profile stream for d, testing every profile whose
    quotient is strictly below the bound.  Returns a Verdict whose
    all_excluded decides the certification; survivors carry the witness
    records of whatever could not be excluded.  Raises CheckInterrupted
    when should_stop() turns true, after writing a checkpoint if a path
    was given.
    """
    if d < 3:
        raise ValueError("check needs d >= 3; d=2 has the single double point")
    if isinstance(bound, float):
        raise TypeError("bound must be exact (Fraction, int, or 'p/q' text), not float")
    bound = parse_rational(bound) if isinstance(bound, str) else Fraction(bound)
    if cadence <= 0:
        raise ValueError(f"cadence must be positive, got {cadence}")
    if jobs < 1:
        raise ValueError(f"jobs must be positive, got {jobs}")
    if collect_records and jobs > 1:
        raise ValueError("collect_records is only available with jobs=1")

    cursor: EnumerationCursor | None = None
    if resume is not None:
        cursor = (
            resume
            if isinstance(resume, EnumerationCursor)
            else read_checkpoint(resume)
        )
        if cursor.d != d:
            raise ValueError(f"checkpoint is for d={cursor.d}, not d={d}")
        if cursor.bound != bound:
            raise ValueError(
                f"checkpoint bound {format_rational(cursor.bound)} differs "
                f"from requested {format_rational(bound)}"
            )
        if cursor.extra_pruning != extra_pruning:
            raise ValueError("checkpoint pruning flags differ from this run")

    counters = cursor.counters.copy() if cursor else Counters()
    survivors: list[ExclusionRecord] = []
    records: list[ExclusionRecord] | None = [] if collect_records else None

    # partition plan: (K, start_after or None), in canonical order
    plan: list[tuple[int, dict[int, int] | None]] = []
    if cursor is None or cursor.last is None:
        plan.append((2, None))
        for K in range(3, d):
            plan.append((K, None))
    else:
        start_vec = {k: t for k, t in cursor.last.counts if k >= 3}
        k0 = max(start_vec) if start_vec else 2
        for K in range(3, d):
            if K < k0:
                continue
            if K == k0:
                plan.append((K, start_vec))
            else:
                plan.append((K, None))

    stream = open(report, "a" if cursor is not None else "w") if report else None
    writer = ReportWriter(stream, report_format) if stream else None
    if writer and cursor is None:
        writer.header(d, bound, extra_pruning)

    def on_record(rec: ExclusionRecord) -> None:
        if writer:
            writer.record(rec)
        if records is not None:
            records.append(rec)

    engine = _Engine(d, bound, extra_pruning)

    checkpoint_cb = None
    if checkpoint is not None:
        def checkpoint_cb(position: Profile) -> None:
            write_checkpoint(
                checkpoint,
                EnumerationCursor(d, bound, extra_pruning, position, counters.copy()),
            )

    interrupted = False
    try:
        if jobs == 1 or len(plan) <= 1:
            for K, start_vec in plan:
                survivors.extend(
                    engine.walk(
                        K,
                        counters,
                        start_after=start_vec,
                        on_record=on_record,
                        cadence=cadence if checkpoint is not None else None,
                        checkpoint_cb=checkpoint_cb,
                        should_stop=should_stop,
                    )
                )
        else:
            _run_parallel(
                d, bound, extra_pruning, jobs, plan, counters, survivors,
                stream, report_format if report else None,
                checkpoint, engine, should_stop,
            )
    except CheckInterrupted:
        interrupted = True
        raise
    finally:
        if writer and not interrupted:
            writer.summary(counters)
            writer.verdict(counters.reasons[REASON_SURVIVOR] == 0, counters.reasons[REASON_SURVIVOR])
        if stream:
            stream.close()

    if checkpoint is not None:
        final = EnumerationCursor(
            d, bound, extra_pruning,
            engine.partition_last_profile(d - 1),
            counters.copy(),
        )
        write_checkpoint(checkpoint, final)

    all_excluded = counters.reasons[REASON_SURVIVOR] == 0
    return Verdict(
        d=d,
        bound=bound,
        all_excluded=all_excluded,
        survivors=tuple(survivors),
        counters=counters,
        records=tuple(records) if records is not None else None,
    )


def _run_parallel(
    d, bound, extra_pruning, jobs, plan, counters, survivors,
    stream, fmt, checkpoint, engine, should_stop,
) -> None:
    order = [K for K, _ in plan]
    args = {
        K: (
            d,
            format_rational(bound),
            extra_pruning,
            K,
            sorted(sv.items()) if sv is not None else None,
            fmt,
        )
        for K, sv in plan
    }
    done: dict[int, tuple[Counters, list[ExclusionRecord], str | None]] = {}
    next_idx = 0
    stopped = False
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {pool.submit(_partition_worker, args[K]): K for K in order}
        for fut in as_completed(futures):
            K, wcounters, wsurvivors, wpath = fut.result()
            done[K] = (wcounters, wsurvivors, wpath)
            while next_idx < len(order) and order[next_idx] in done:
                mk = order[next_idx]
                wc, ws, wp = done.pop(mk)
                counters.merge(wc)
                survivors.extend(ws)
                if wp is not None:
                    with open(wp) as part:
                        shutil.copyfileobj(part, stream)
                    os.unlink(wp)
                if checkpoint is not None:
                    write_checkpoint(
                        checkpoint,
                        EnumerationCursor(
                            d, bound, extra_pruning,
                            engine.partition_last_profile(mk),
                            counters.copy(),
                        ),
                    )
                next_idx += 1
            if should_stop and should_stop():
                stopped = True
                pool.shutdown(wait=True, cancel_futures=True)
                break
    for K, (_, _, wpath) in done.items():
        if wpath is not None:
            os.unlink(wpath)
    if stopped and next_idx < len(order):
        raise CheckInterrupted("stopped between partitions")


@dataclass(frozen=True)
class CertifiedValue:
    """compute_H output: the value, its construction, and the certificate."""

    d: int
    value: Fraction
    witness: SyntheticProfile
    verdict: Verdict

    @property
    def certified(self) -> bool:
        return self.verdict.all_excluded


def compute_H(d: int, *, jobs: int = 1, extra_pruning: bool = True) -> CertifiedValue:
    """Compute H(d): take the best constructive upper bound and certify it
    from below by exhausting the profile stream.

    certified=True means H(d) equals the returned value exactly.  d = 2
    needs no enumeration: two lines meet in one double point and H = 0.
    """
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    if d == 2:
        value, witness = generic_profile(2)
        verdict = Verdict(2, value, True, (), Counters())
        return CertifiedValue(2, value, witness, verdict)
    value, witness = best_known_upper(d)
    verdict = check(d, value, jobs=jobs, extra_pruning=extra_pruning)
    return CertifiedValue(d, value, witness, verdict)
