"""Exact ultrametric disk calculus on P^1.

Disks are analytic objects: a bounded disk is the set of points x with
|x - a| < p**e (open) or <= p**e (closed), and an unbounded disk is the
complement of the bounded disk with the *opposite* openness.  Radii are
exact p-powers, so every predicate here is decided exactly.

Centers are canonicalized to the smallest-height rational in the disk
with a p-power denominator; ultrametric disks have no distinguished
center, and this makes semantic disk equality plain ``==``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import CoefficientTooLarge, ConstantPolynomial, PointInsideDisk
from .padic import (
    Exponent,
    PrimeContext,
    abs_exponent,
    unit_residue,
    valuation,
)
from .proj import Homography, ProjPoint


def _canonical_center(center: Fraction, min_valuation, p: int) -> Fraction:
    """Smallest-|.|-representative of center modulo {v >= min_valuation}."""
    w = valuation(center, p)
    if w >= min_valuation:
        return Fraction(0)
    k = min_valuation - w  # >= 1, an integer since both are... see below
    k = int(k)
    r = unit_residue(center, p, k)
    m = p**k
    rep = r if r <= m - r else r - m
    return Fraction(rep) * Fraction(p) ** w


@dataclass(frozen=True)
class Disk:
    """An ultrametric disk in P^1 with exact p-power radius p**radius_exp.

    For ``bounded=False`` the (center, radius_exp, openness) describe the
    *complementary* bounded disk, which has the opposite openness.
    """

    bounded: bool
    is_open: bool
    center: Fraction
    radius_exp: Fraction
    p: int

    def __init__(self, bounded, is_open, center, radius_exp, p):
        object.__setattr__(self, "bounded", bool(bounded))
        object.__setattr__(self, "is_open", bool(is_open))
        object.__setattr__(self, "radius_exp", Fraction(radius_exp))
        object.__setattr__(self, "p", int(p))
        object.__setattr__(
            self, "center", _canonical_center(Fraction(center), self._min_valuation(), p)
        )

    def _min_valuation(self):
        """Smallest valuation of x - center admitted by the boundary rule."""
        # Complement openness flips, but the admitted valuations of the
        # complementary bounded disk are what the canonical center uses.
        open_boundary = self.is_open if self.bounded else not self.is_open
        e = self.radius_exp
        if open_boundary:
            return math.floor(-e) + 1
        return math.ceil(-e)

    @staticmethod
    def open_disk(center, radius_exp, p: int) -> "Disk":
        return Disk(True, True, center, radius_exp, p)

    @staticmethod
    def closed_disk(center, radius_exp, p: int) -> "Disk":
        return Disk(True, False, center, radius_exp, p)

    def complement(self) -> "Disk":
        return Disk(not self.bounded, not self.is_open, self.center, self.radius_exp, self.p)

    def closure(self) -> "Disk":
        """The closed disk with the same points plus its boundary sphere."""
        if self.bounded:
            return Disk(True, False, self.center, self.radius_exp, self.p)
        # closure of P^1 - E(a, r) is P^1 - B(a, r)
        return Disk(False, False, self.center, self.radius_exp, self.p)

    def contains(self, x: ProjPoint) -> bool:
        if not self.bounded:
            return x.is_infinity or not self.complement().contains(x)
        if x.is_infinity:
            return False
        d = abs_exponent(x.value - self.center, self.p)
        return d < self.radius_exp if self.is_open else d <= self.radius_exp

    def center_point(self) -> ProjPoint:
        return ProjPoint(self.center)

    def sup_abs_exponent(self) -> Exponent:
        """sup of |y| over the disk (bounded disks only)."""
        if not self.bounded:
            raise ValueError("unbounded disks have unbounded |y|")
        return max(abs_exponent(self.center, self.p), self.radius_exp)

    def __str__(self):
        kind = "B" if self.is_open else "E"
        body = f"{kind}({self.center}, {self.p}^{self.radius_exp})"
        return body if self.bounded else f"P1-{body}"


def contains(D: Disk, x: ProjPoint) -> bool:
    return D.contains(x)


def contains_disk(D1: Disk, D2: Disk) -> bool:
    """Exact test for D2 a subset of D1."""
    if D1.bounded and not D2.bounded:
        return False
    if not D1.bounded and not D2.bounded:
        return contains_disk(D2.complement(), D1.complement())
    if not D1.bounded and D2.bounded:
        return disjoint(D2, D1.complement())
    if not D1.contains(D2.center_point()):
        return False
    e1, e2 = D1.radius_exp, D2.radius_exp
    if e2 != e1:
        return e2 < e1
    return D1.is_open == D2.is_open or D1.is_open is False


def disjoint(D1: Disk, D2: Disk) -> bool:
    """Exact emptiness of the intersection; two disks are nested or disjoint."""
    if not D1.bounded and not D2.bounded:
        return False  # both contain infinity
    if not D1.bounded:
        return contains_disk(D1.complement(), D2)
    if not D2.bounded:
        return contains_disk(D2.complement(), D1)
    return not (D1.contains(D2.center_point()) or D2.contains(D1.center_point()))


def _translate(D: Disk, t: Fraction) -> Disk:
    return Disk(D.bounded, D.is_open, D.center + t, D.radius_exp, D.p)


def _scale(D: Disk, s: Fraction) -> Disk:
    return Disk(D.bounded, D.is_open, D.center * s, D.radius_exp + abs_exponent(s, D.p), D.p)


def _invert(D: Disk) -> Disk:
    """Image of D under z -> 1/z."""
    if not D.bounded:
        return _invert(D.complement()).complement()
    e, al, p = D.radius_exp, D.center, D.p
    ea = abs_exponent(al, p)
    if (D.is_open and ea >= e) or (not D.is_open and ea > e):
        # 0 is not in the disk and |y| = |center| throughout: an isometry
        # up to the factor |center|^-2.
        return Disk(True, D.is_open, 1 / al, e - 2 * ea, p)
    # The disk is centered at 0; inversion swaps it with an unbounded disk.
    return Disk(False, D.is_open, Fraction(0), -e, p)


def image(g: Homography, D: Disk) -> Disk:
    """The exact image disk g(D).

    g factors as affine maps and the inversion z -> 1/z; each piece sends
    disks to disks, preserving openness and strictness.
    """
    a, b, c, d = g.entries
    if c == 0:
        return _translate(_scale(D, Fraction(a, d)), Fraction(b, d))
    # (az + b)/(cz + d) = a/c - (det/c^2) / (z + d/c)
    out = _translate(D, Fraction(d, c))
    out = _invert(out)
    out = _scale(out, Fraction(-g.det, c * c))
    return _translate(out, Fraction(a, c))


def point_to_disk_delta(x: ProjPoint, D: Disk, ctx: PrimeContext) -> Exponent:
    """Exponent of inf over y in D of delta(x, y), for x outside D.

    For x outside a disk, |x - y| is the constant |x - center|, so the
    infimum is reached by maximizing max(1, |y|) over the disk.
    """
    if D.contains(x):
        raise PointInsideDisk(f"{x} lies in {D}")
    p = ctx.p
    if D.bounded:
        s = max(0, D.sup_abs_exponent())
        if x.is_infinity:
            return -s
        return abs_exponent(x.value - D.center, p) - max(0, abs_exponent(x.value, p)) - s
    # x is finite and lies in the complementary bounded disk.
    h = D.radius_exp
    return (
        h
        - max(0, abs_exponent(D.center, p), h)
        - max(0, abs_exponent(x.value, p))
    )


def min_delta_disjoint_disks(D1: Disk, D2: Disk, ctx: PrimeContext) -> Exponent:
    """Exponent of inf delta(x, y) over x in D1, y in D2, for disjoint disks.

    Supports the two shapes needed by translate scans: two disjoint
    bounded disks, and an unbounded disk against a bounded disk inside
    its complementary hole.
    """
    if not disjoint(D1, D2):
        raise ValueError("disks intersect; the distance is zero")
    if not D2.bounded:
        D1, D2 = D2, D1
    s2 = max(0, D2.sup_abs_exponent())
    p = ctx.p
    if D1.bounded:
        return abs_exponent(D1.center - D2.center, p) - max(0, D1.sup_abs_exponent()) - s2
    h = D1.radius_exp
    return h - max(0, abs_exponent(D1.center, p), h) - s2


def poly_distance_exponent(
    coefficients: Sequence[Fraction], ctx: PrimeContext
) -> Tuple[int, Exponent]:
    """Vanishing order m at 0 and the exponent of c = |m * c_m| for a
    polynomial f with all |coefficients| <= 1.

    These are the constants in the inequality
    delta(f(x), L2) >= c * delta(x, L1)**m that holds for x near 0 when
    f(0) lies in L2 and f^{-1}(L2) is contained in L1; the caller picks
    the sampling radius.
    """
    coeffs = [Fraction(c) for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise ConstantPolynomial("need a nonconstant polynomial")
    for c in coeffs:
        if abs_exponent(c, ctx.p) > 0:
            raise CoefficientTooLarge(f"|{c}| > 1 p-adically")
    m = next(i for i in range(1, len(coeffs)) if coeffs[i] != 0)
    return m, abs_exponent(m * coeffs[m], ctx.p)


@dataclass(frozen=True)
class Affinoid:
    """A closed disk (or all of P^1) minus finitely many open disks.

    Emptiness and intersection are decided over C_p: a closed disk is
    never covered by finitely many proper open subdisks, so the region
    is empty exactly when a single hole swallows the outer disk.
    """

    outer: Optional[Disk]
    holes: Tuple[Disk, ...]

    def __init__(self, outer, holes):
        if outer is not None and outer.is_open:
            raise ValueError("outer disk must be closed")
        holes = tuple(holes)
        for h in holes:
            if not h.is_open:
                raise ValueError("holes must be open disks")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "holes", holes)

    def transform(self, g: Homography) -> "Affinoid":
        outer = None if self.outer is None else image(g, self.outer)
        return Affinoid(outer, tuple(image(g, h) for h in self.holes))

    def contains(self, x: ProjPoint) -> bool:
        if self.outer is not None and not self.outer.contains(x):
            return False
        return not any(h.contains(x) for h in self.holes)

    def _normalized(self):
        """(bounded closed constraints, bounded open holes) with the same
        point set: unbounded closed constraints become extra holes and
        unbounded open holes become extra constraints."""
        constraints, holes = [], []
        outers = [] if self.outer is None else [self.outer]
        for K in outers:
            if K.bounded:
                constraints.append(K)
            else:
                holes.append(K.complement())
        for h in self.holes:
            if h.bounded:
                holes.append(h)
            else:
                constraints.append(h.complement())
        return constraints, holes

    def is_empty(self) -> bool:
        return _region_empty(*self._normalized())

    def intersects(self, other: "Affinoid") -> bool:
        c1, h1 = self._normalized()
        c2, h2 = other._normalized()
        return not _region_empty(c1 + c2, h1 + h2)


def _region_empty(constraints, holes) -> bool:
    """Emptiness of (intersection of bounded closed disks) minus open holes;
    an empty constraint list means all of P^1."""
    if not constraints:
        return False  # infinity survives every bounded hole
    K = constraints[0]
    for K2 in constraints[1:]:
        if contains_disk(K2, K):
            continue
        if contains_disk(K, K2):
            K = K2
        else:
            return True  # two disjoint constraints
    return any(contains_disk(h, K) for h in holes)
