"""Finite projective planes and the line-deletion constructions.

Upper bounds for H(d) come from explicit arrangements.  This module
builds PG(2,q) over GF(q) = GF(p^r), realizes the full dual plane (all
q^2 + q + 1 lines, every point of multiplicity q + 1, H = -q) and the
deletion constructions that remove i lines through one or two chosen
points, then measures the resulting multiplicity profile exactly.

Representation.  Field elements are coefficient tuples of length r,
lowest degree first, so GF(9) holds pairs (c0, c1) meaning c0 + c1*x.
The modulus is the lexicographically least monic irreducible polynomial,
coefficients compared low degree first, giving x^2 + 1 for GF(9) and
x^2 + x + 1 for GF(4).  Points and lines are coordinate triples of field
elements, normalized so the first nonzero coordinate is 1; incidence is
vanishing of the bilinear dot product.  All choices (pencil centers,
deletion order) take the lexicographically least candidate, so every
construction is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import bounds as _bounds
from .profiles import (
    MultiplicityMultiset,
    Profile,
    combinatorial_quotient,
    harbourne_of_multiset,
)

Element = tuple[int, ...]
Triple = tuple[Element, Element, Element]


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    # b monic, over GF(p); a stays trimmed at the top of every iteration,
    # so the length test alone decides termination
    a = _poly_trim(list(a))
    out = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        c = a[-1]
        out[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _poly_trim(a)
    return out, a


def _is_irreducible(poly: list[int], p: int) -> bool:
    deg = len(poly) - 1
    for div_deg in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=div_deg):
            divisor = list(tail) + [1]
            _, rem = _poly_divmod(poly, divisor, p)
            if not _poly_trim(rem):
                return False
    return True


def _least_irreducible(p: int, r: int) -> tuple[int, ...]:
    if r == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=r):
        candidate = list(tail) + [1]
        if _is_irreducible(candidate, p):
            return tuple(candidate)
    raise AssertionError(f"no irreducible of degree {r} over GF({p})")


class FiniteField:
    """GF(p^r) with tuple-coded elements and exact arithmetic."""

    def __init__(self, p: int, r: int = 1, modulus: tuple[int, ...] | None = None):
        if not _bounds.is_prime(p):
            raise ValueError(f"{p} is not prime")
        if r < 1:
            raise ValueError(f"extension degree must be positive, got {r}")
        self.p = p
        self.r = r
        self.q = p**r
        if modulus is None:
            modulus = _least_irreducible(p, r)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree r")
            if r > 1 and not _is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible")
        self.modulus = modulus
        self.zero: Element = (0,) * r
        self.one: Element = (1,) + (0,) * (r - 1)

    def elements(self) -> list[Element]:
        """All q elements, ascending in coefficient-tuple order."""
        return [t for t in itertools.product(range(self.p), repeat=self.r)]

    def from_int(self, n: int) -> Element:
        digits = []
        for _ in range(self.r):
            digits.append(n % self.p)
            n //= self.p
        return tuple(digits)

    def add(self, a: Element, b: Element) -> Element:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        p = self.p
        return tuple((-x) % p for x in a)

    def sub(self, a: Element, b: Element) -> Element:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a: Element, b: Element) -> Element:
        p, r = self.p, self.r
        if r == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        _, rem = _poly_divmod(prod, list(self.modulus), p)
        rem += [0] * (r - len(rem))
        return tuple(rem)

    def inv(self, a: Element) -> Element:
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        out = self.one
        base = a
        e = self.q - 2
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out


def make_field(q: int) -> FiniteField:
    """The field of q elements; q must be a prime power."""
    pr = _bounds.prime_power(q)
    if pr is None:
        raise ValueError(f"{q} is not a prime power, no field of that order exists")
    return FiniteField(*pr)


def normalize(field: FiniteField, v: Triple) -> Triple:
    """Scale so the first nonzero coordinate becomes 1."""
    for i in range(3):
        if v[i] != field.zero:
            s = field.inv(v[i])
            return tuple(field.mul(s, c) for c in v)  # type: ignore[return-value]
    raise ValueError("zero vector has no projective class")


def dot(field: FiniteField, u: Triple, v: Triple) -> Element:
    acc = field.zero
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def incident(field: FiniteField, point: Triple, line: Triple) -> bool:
    return dot(field, point, line) == field.zero


def cross(field: FiniteField, u: Triple, v: Triple) -> Triple:
    m, s = field.mul, field.sub
    return (
        s(m(u[1], v[2]), m(u[2], v[1])),
        s(m(u[2], v[0]), m(u[0], v[2])),
        s(m(u[0], v[1]), m(u[1], v[0])),
    )


def meet(field: FiniteField, l1: Triple, l2: Triple) -> Triple:
    """The unique common point of two distinct lines."""
    w = cross(field, l1, l2)
    return normalize(field, w)


def join(field: FiniteField, p1: Triple, p2: Triple) -> Triple:
    """The unique line through two distinct points."""
    w = cross(field, p1, p2)
    return normalize(field, w)


def pg2(field: FiniteField) -> tuple[list[Triple], list[Triple]]:
    """Points and lines of PG(2,q), each sorted in coordinate order.

    The plane is self-dual, so both lists enumerate the same normalized
    triples; incidence between them is vanishing dot product.
    """
    zero, one = field.zero, field.one
    triples: list[Triple] = [(zero, zero, one)]
    for z in field.elements():
        triples.append((zero, one, z))
    for y in field.elements():
        for z in field.elements():
            triples.append((one, y, z))
    triples.sort()
    points = list(triples)
    lines = list(triples)
    return points, lines


@dataclass(frozen=True)
class Arrangement:
    """A finite set of distinct lines in PG(2,q) and its singular set."""

    field: FiniteField
    lines: tuple[Triple, ...]

    def __post_init__(self) -> None:
        if len(self.lines) < 2:
            raise ValueError("an arrangement needs at least two lines")
        if len(set(self.lines)) != len(self.lines):
            raise ValueError("arrangement lines must be distinct")

    @classmethod
    def of(cls, field: FiniteField, lines) -> "Arrangement":
        normalized = sorted({normalize(field, l) for l in lines})
        return cls(field, tuple(normalized))

    @property
    def d(self) -> int:
        return len(self.lines)

    @cached_property
    def singular_points(self) -> dict[Triple, int]:
        """Map from intersection point to its multiplicity (always >= 2)."""
        field = self.field
        points = {meet(field, l1, l2)
                  for l1, l2 in itertools.combinations(self.lines, 2)}
        out: dict[Triple, int] = {}
        for pt in sorted(points):
            m = sum(1 for l in self.lines if incident(field, pt, l))
            assert m >= 2
            out[pt] = m
        return out

    @cached_property
    def profile(self) -> Profile:
        counts: dict[int, int] = {}
        for m in self.singular_points.values():
            counts[m] = counts.get(m, 0) + 1
        p = Profile.from_counts(self.d, counts)  # validates the pair count
        return p

    def harbourne_constant(self) -> Fraction:
        """Exact H of the arrangement; cross-checked against the profile."""
        multiset = MultiplicityMultiset.of(self.singular_points.values())
        value = harbourne_of_multiset(self.d, multiset)
        assert value == combinatorial_quotient(self.profile)
        return value


def arrangement_profile(a: Arrangement) -> Profile:
    return a.profile


def full_plane_arrangement(q: int) -> Arrangement:
    """All q^2 + q + 1 lines of PG(2,q); every point has multiplicity q + 1
    and H = -q exactly."""
    field = make_field(q)
    _, lines = pg2(field)
    arr = Arrangement(field, tuple(lines))
    assert arr.harbourne_constant() == Fraction(-q)
    return arr


def _lines_through(field: FiniteField, lines, point: Triple) -> list[Triple]:
    return sorted(l for l in lines if incident(field, point, l))


def removal_construction(q: int, i: int) -> Arrangement:
    """Delete i lines from PG(2,q) along one or two pencils.

    For 0 <= i <= q + 1 the first i lines through the least point P1 go;
    for q + 1 < i <= 2q - 2 the whole pencil of P1 goes, then more lines
    through the next point P2; for i = 2q - 1 the joint line P1P2 goes
    together with q - 1 further lines through each of P1 and P2.  The
    result has d = q^2 + q + 1 - i lines, and for every case where the
    deletion formula is unflagged its Harbourne constant equals the
    formula value (asserted).
    """
    field = make_field(q)
    points, lines = pg2(field)
    if not 0 <= i <= 2 * q - 1:
        raise ValueError(f"can remove between 0 and {2 * q - 1} lines, got {i}")
    remaining = set(lines)
    p1 = points[0]
    p2 = points[1]
    if i <= q + 1:
        for l in _lines_through(field, remaining, p1)[:i]:
            remaining.discard(l)
    elif i <= 2 * q - 2:
        for l in _lines_through(field, remaining, p1):
            remaining.discard(l)
        for l in _lines_through(field, remaining, p2)[: i - (q + 1)]:
            remaining.discard(l)
    else:
        joint = join(field, p1, p2)
        remaining.discard(joint)
        for l in _lines_through(field, remaining, p1)[: q - 1]:
            remaining.discard(l)
        for l in _lines_through(field, remaining, p2)[: q - 1]:
            remaining.discard(l)
    arr = Arrangement(field, tuple(sorted(remaining)))
    assert arr.d == q * q + q + 1 - i
    data = _bounds.conjecture_data(arr.d)
    if data.q == q and not data.flagged:
        assert arr.harbourne_constant() == data.h
    return arr
