"""Integer feasibility of incidence systems for multiplicity profiles.

A profile that survives the counting criteria still has to distribute its
points along actual lines.  Fix one line L of the arrangement: every
other line meets L in exactly one singular point, so if L passes through
nu_k points of multiplicity k then

    sum_k nu_k * (k - 1) = d - 1.

A line type is a vector (nu_2, ..., nu_d) satisfying that equation with
nu_k <= t_k.  Writing x_nu for the number of lines of type nu, counting
lines and incidences gives the equalities

    sum_nu x_nu = d          and          sum_nu x_nu * nu_k = k * t_k

for every k with t_k > 0.  When t_m = 1 the unique m-fold point pins all
lines of the types with nu_m = 1 through one point, and those lines hit
each other only there, so for k != m

    sum_{nu : nu_m = 1} x_nu * nu_k <= t_k.

Unsolvability of the system over the nonnegative integers refutes the
profile.  The solver is a complete depth-first search with residual
bounds, so 'infeasible' is a proof and mode='all' is exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .profiles import Profile


@dataclass(frozen=True)
class LineType:
    """Incidence pattern of one line: nu[j] points of multiplicity j + 2.

    The dense vector covers multiplicities 2..d, so len(nu) == d - 1.
    """

    d: int
    nu: tuple[int, ...]

    def __post_init__(self) -> None:
        assert len(self.nu) == self.d - 1
        assert sum(v * (k - 1) for k, v in self.items()) == self.d - 1

    def count(self, k: int) -> int:
        return self.nu[k - 2]

    def items(self) -> list[tuple[int, int]]:
        return [(j + 2, v) for j, v in enumerate(self.nu)]

    def __str__(self) -> str:
        inner = ",".join(f"nu{k}={v}" for k, v in self.items() if v)
        return f"({inner})"


def enumerate_line_types(p: Profile) -> list[LineType]:
    """All line types admissible for the profile, in canonical order.

    The order fixes the variable numbering of the feasibility system:
    highest multiplicity varies outermost and ascends, and nu_2 is forced
    by the weight equation, matching an odometer over (nu_d, ..., nu_2).
    """
    d = p.d
    ks = [k for k, _ in p.counts if k >= 3]
    caps = {k: t for k, t in p.counts}
    out: list[LineType] = []
    nu = [0] * (d - 1)

    def rec(idx: int, weight: int) -> None:
        if idx < 0:
            if 2 in caps and weight <= caps[2]:
                nu[0] = weight
                out.append(LineType(d, tuple(nu)))
                nu[0] = 0
            elif weight == 0:
                out.append(LineType(d, tuple(nu)))
            return
        k = ks[idx]
        top = min(caps[k], weight // (k - 1))
        for v in range(top + 1):
            nu[k - 2] = v
            rec(idx - 1, weight - v * (k - 1))
        nu[k - 2] = 0

    rec(len(ks) - 1, d - 1)
    return out


@dataclass(frozen=True)
class FeasibilitySystem:
    """The integer program of a profile, rows in emission order.

    eq_rows: (dense coefficients, rhs) for '=' constraints; the first row
    is the line count, the rest follow multiplicities ascending.
    ineq_rows: (variable indices, their coefficients, rhs, label) for '<='
    constraints from unique points; only types incident to the unique
    point appear, zero coefficients among them included.
    """

    d: int
    profile: Profile
    types: tuple[LineType, ...]
    eq_rows: tuple[tuple[tuple[int, ...], int], ...]
    ineq_rows: tuple[tuple[tuple[int, ...], tuple[int, ...], int, str], ...]


def build_system(p: Profile) -> FeasibilitySystem:
    types = tuple(enumerate_line_types(p))
    eq_rows: list[tuple[tuple[int, ...], int]] = [
        (tuple(1 for _ in types), p.d)
    ]
    for k, t in p.counts:
        eq_rows.append((tuple(ty.count(k) for ty in types), k * t))
    ineq_rows: list[tuple[tuple[int, ...], tuple[int, ...], int, str]] = []
    for m, t_m in p.counts:
        if t_m != 1:
            continue
        pinned = tuple(j for j, ty in enumerate(types) if ty.count(m) == 1)
        if not pinned:
            continue
        for k, t_k in p.counts:
            if k == m:
                continue
            coeffs = tuple(types[j].count(k) for j in pinned)
            ineq_rows.append((pinned, coeffs, t_k, f"b{m}k{k}"))
    return FeasibilitySystem(p.d, p, types, tuple(eq_rows), tuple(ineq_rows))


def solve(system: FeasibilitySystem, mode: str = "first") -> list[tuple[int, ...]]:
    """Solve the system over nonnegative integers by exhaustive DFS.

    Returns solutions as tuples in original variable order; an empty list
    proves infeasibility.  mode='first' stops at one witness, mode='all'
    enumerates every solution, ordered lexicographically in the branching
    order (variables sorted by decreasing largest equality coefficient,
    ties by original index).
    """
    if mode not in ("first", "all"):
        raise ValueError(f"unknown mode {mode!r}")
    nvars = len(system.types)
    eqs = system.eq_rows
    if nvars == 0:
        return [] if any(rhs != 0 for _, rhs in eqs) else [()]
    order = sorted(
        range(nvars),
        key=lambda j: (-max(row[j] for row, _ in eqs), j),
    )
    eq_cols = [[row[j] for row, _ in eqs] for j in order]
    res = [rhs for _, rhs in eqs]
    # inequality slack columns keyed by branching position
    ineq_cols: list[list[tuple[int, int]]] = [[] for _ in order]
    slack: list[int] = []
    for pos, (pinned, coeffs, rhs, _) in enumerate(system.ineq_rows):
        slack.append(rhs)
        lookup = dict(zip(pinned, coeffs))
        for bpos, j in enumerate(order):
            c = lookup.get(j, 0)
            if c:
                ineq_cols[bpos].append((pos, c))
    # suffix flags: does any variable at or after bpos touch equality e
    neqs = len(eqs)
    suffix_touch = [[False] * neqs for _ in range(nvars + 1)]
    for bpos in range(nvars - 1, -1, -1):
        for e in range(neqs):
            suffix_touch[bpos][e] = suffix_touch[bpos + 1][e] or eq_cols[bpos][e] > 0

    out: list[tuple[int, ...]] = []
    x = [0] * nvars

    def rec(bpos: int) -> bool:
        if bpos == nvars:
            # residues are nonnegative by the branch bounds; nonzero ones
            # would already have tripped the suffix check below
            sol = [0] * nvars
            for b, j in enumerate(order):
                sol[j] = x[b]
            out.append(tuple(sol))
            return mode == "first"
        col = eq_cols[bpos]
        ub = None
        for e in range(neqs):
            c = col[e]
            if c:
                b = res[e] // c
                if ub is None or b < ub:
                    ub = b
        for pos, c in ineq_cols[bpos]:
            b = slack[pos] // c
            if ub is None or b < ub:
                ub = b
        if ub is None:
            ub = 0
        for v in range(ub + 1):
            x[bpos] = v
            for e in range(neqs):
                res[e] -= col[e] * v
            ok = True
            for e in range(neqs):
                if res[e] and not suffix_touch[bpos + 1][e]:
                    ok = False
                    break
            if ok:
                for pos, c in ineq_cols[bpos]:
                    slack[pos] -= c * v
                stop = rec(bpos + 1)
                for pos, c in ineq_cols[bpos]:
                    slack[pos] += c * v
            else:
                stop = False
            for e in range(neqs):
                res[e] += col[e] * v
            if stop:
                return True
        x[bpos] = 0
        return False

    # a system whose residues can never be consumed fails immediately
    for e in range(neqs):
        if res[e] and not suffix_touch[0][e]:
            return []
    rec(0)
    return out


def emit_lp(system: FeasibilitySystem) -> str:
    """Render the system in LP text format, byte for byte reproducible.

    Variables are a1..aV in type-enumeration order; equality rows list
    every variable, inequality rows only the pinned ones.
    """
    lines = ["minimize value: a1", "subject to"]
    for i, (coeffs, rhs) in enumerate(system.eq_rows, start=1):
        terms = " + ".join(f"{c} a{j + 1}" for j, c in enumerate(coeffs))
        lines.append(f"e{i}: {terms} = {rhs}")
    for pinned, coeffs, rhs, label in system.ineq_rows:
        terms = " + ".join(f"{c} a{j + 1}" for j, c in zip(pinned, coeffs))
        lines.append(f"{label}: {terms} <= {rhs}")
    lines.append("integer")
    for j in range(len(system.types)):
        lines.append(f" a{j + 1}")
    lines.append("end")
    return "\n".join(lines) + "\n"
