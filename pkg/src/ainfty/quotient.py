"""The quotient of Im H by the flow relation: classes, order, sections,
and integer divisors between sections.

Two points are equivalent when they share a base point z and the closed
vertical segment joining them avoids all centers; each center is its own
class.  Classes over a fixed z are therefore the open gaps between
consecutive fiber points plus the fiber points themselves, strictly ordered
along the fiber line and incomparable across different base points.

A combinatorial section deviates from the base section (the gap containing
height 0 on every fiber) on finitely many fibers.  The integer divisor of a
section pair counts, per fiber, the signed number of fiber points between
the two chosen gaps; it controls chart overlaps and multiplier classes.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .config import Configuration, delta_set
from .errors import NotChartAdmissible
from .geometry import ImHPoint, as_point


class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class QuotientClass:
    """A class over base point z: either Fixed (a center, by index) or the
    open gap between the given neighbor indices (None = unbounded side)."""

    z: complex
    fixed: Optional[int] = None
    lower: Optional[int] = None
    upper: Optional[int] = None

    @property
    def is_fixed(self) -> bool:
        return self.fixed is not None

    def bounds(self, config: Configuration):
        """(lo_t, hi_t) of the class as an interval on the fiber line."""
        if self.is_fixed:
            t = -config.center(self.fixed)[0]
            return t, t
        lo = -math.inf if self.lower is None else -config.center(self.lower)[0]
        hi = math.inf if self.upper is None else -config.center(self.upper)[0]
        return lo, hi

    def interior_height(self, config: Configuration) -> float:
        """A representative height strictly inside a gap class."""
        if self.is_fixed:
            raise ValueError("fixed classes have no interior")
        lo, hi = self.bounds(config)
        if math.isfinite(lo) and math.isfinite(hi):
            return 0.5 * (lo + hi)
        if math.isfinite(lo):
            return lo + 1.0
        if math.isfinite(hi):
            return hi - 1.0
        return 0.0


def class_of(config: Configuration, zeta) -> QuotientClass:
    """The quotient class of a point: its center index if it hits one,
    otherwise the gap of its fiber containing it."""
    p = as_point(zeta)
    lower, upper, hit = config.family.fiber_neighbors(p.z, p.t, config.max_truncation)
    if hit is not None:
        return QuotientClass(z=p.z, fixed=hit)
    return QuotientClass(
        z=p.z,
        lower=None if lower is None else lower[0],
        upper=None if upper is None else upper[0],
    )


def same_class(config: Configuration, zeta, eta) -> bool:
    p, q = as_point(zeta), as_point(eta)
    if p.z != q.z:
        return False
    return class_of(config, p) == class_of(config, q)


def compare_classes(config: Configuration, c1: QuotientClass, c2: QuotientClass) -> Ordering:
    """Strict partial order: interval order along each fiber line."""
    if c1 == c2:
        return Ordering.EQUAL
    if c1.z != c2.z:
        return Ordering.INCOMPARABLE
    lo1, hi1 = c1.bounds(config)
    lo2, hi2 = c2.bounds(config)
    if hi1 <= lo2:
        return Ordering.LESS
    if hi2 <= lo1:
        return Ordering.GREATER
    raise ValueError(f"overlapping distinct classes {c1} and {c2}; invalid gap data")


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------

def base_gap(config: Configuration, z: complex) -> QuotientClass:
    """The gap containing height 0 over z; needs no center at height 0."""
    cls = class_of(config, ImHPoint(0.0, complex(z)))
    if cls.is_fixed:
        raise NotChartAdmissible(
            f"center {cls.fixed} sits at height 0 over {z}; no base gap there")
    return cls


def _validate_gap(config: Configuration, z: complex, gap: QuotientClass):
    if gap.is_fixed:
        raise ValueError("sections assign gaps, not fixed points")
    if gap.z != z:
        raise ValueError(f"gap base {gap.z} does not match fiber {z}")
    fam = config.family
    n_max = config.max_truncation
    lo, hi = gap.bounds(config)
    if gap.lower is not None and gap.upper is not None:
        pts = fam.fiber_points_window(z, lo, hi, n_max)
        if [i for i, _ in pts] != sorted({gap.lower, gap.upper}, key=lambda i: -config.center(i)[0]):
            raise ValueError(f"{gap} is not a gap: neighbors not adjacent")
    elif gap.lower is not None:   # top gap
        top = fam.fiber_from_top(z, 1, n_max)
        if not top or top[0][0] != gap.lower:
            raise ValueError(f"{gap} is not the top gap of its fiber")
    elif gap.upper is not None:   # bottom gap
        bot = fam.fiber_from_bottom(z, 1, n_max)
        if not bot or bot[0][0] != gap.upper:
            raise ValueError(f"{gap} is not the bottom gap of its fiber")
    else:
        if fam.fiber_points_window(z, -1.0, 1.0, n_max) or fam.fiber_order_type(z).kind != "finite" \
                or fam.fiber_order_type(z).count != 0:
            raise ValueError(f"fiber over {z} is nonempty; full-line gap invalid")


def _canon_key(z: complex):
    return (z.real, z.imag)


@dataclass(frozen=True)
class CombinatorialSection:
    """Base section (zero gap per fiber) plus finitely many gap deviations."""

    config: Configuration
    deviations: tuple = ()

    def gap_at(self, z: complex) -> QuotientClass:
        z = complex(z)
        for zz, gap in self.deviations:
            if zz == z:
                return gap
        return base_gap(self.config, z)

    def deviate(self, z: complex, gap: QuotientClass) -> "CombinatorialSection":
        """New section with the gap over z replaced (validated, normalized)."""
        z = complex(z)
        _validate_gap(self.config, z, gap)
        rest = [(zz, g) for zz, g in self.deviations if zz != z]
        if gap != base_gap(self.config, z):
            rest.append((z, gap))
        rest.sort(key=lambda item: _canon_key(item[0]))
        return CombinatorialSection(self.config, tuple(rest))

    @property
    def support(self) -> tuple:
        return tuple(z for z, _ in self.deviations)


def base_section(config: Configuration) -> CombinatorialSection:
    return CombinatorialSection(config)


# ---------------------------------------------------------------------------
# Integer divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerDivisor:
    """Finitely supported map C -> Z, canonically ordered, zeros dropped."""

    entries: tuple = ()

    @staticmethod
    def from_dict(d: dict) -> "IntegerDivisor":
        items = [(complex(z), int(k)) for z, k in d.items() if int(k) != 0]
        items.sort(key=lambda item: _canon_key(item[0]))
        return IntegerDivisor(tuple(items))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def get(self, z: complex) -> int:
        for zz, k in self.entries:
            if zz == complex(z):
                return k
        return 0

    @property
    def support(self) -> tuple:
        return tuple(z for z, _ in self.entries)

    def __add__(self, other: "IntegerDivisor") -> "IntegerDivisor":
        d = dict(self.entries)
        for z, k in other.entries:
            d[z] = d.get(z, 0) + k
        return IntegerDivisor.from_dict(d)

    def __neg__(self) -> "IntegerDivisor":
        return IntegerDivisor(tuple((z, -k) for z, k in self.entries))

    def __sub__(self, other: "IntegerDivisor") -> "IntegerDivisor":
        return self + (-other)


def count_between(config: Configuration, z: complex,
                  gap1: QuotientClass, gap2: QuotientClass) -> int:
    """Signed number of fiber points between two gaps over z: positive when
    gap1 lies below gap2 (points p with gap1 < p < gap2)."""
    order = compare_classes(config, gap1, gap2)
    if order is Ordering.EQUAL:
        return 0
    if order is Ordering.INCOMPARABLE:
        raise ValueError("gaps sit over different fibers")
    low, high, sign = (gap1, gap2, +1) if order is Ordering.LESS else (gap2, gap1, -1)
    lo_t = -config.center(low.upper)[0]    # first point above the lower gap
    hi_t = -config.center(high.lower)[0]   # last point below the upper gap
    pts = config.family.fiber_points_window(z, lo_t, hi_t, config.max_truncation)
    return sign * len(pts)


def section_divisor(config: Configuration, s1: CombinatorialSection,
                    s2: CombinatorialSection, disk_radius: float) -> IntegerDivisor:
    """Per fiber base inside the disk, the signed count of fiber points
    between the two sections' gaps."""
    out = {}
    for z in delta_set(config, disk_radius):
        k = count_between(config, z, s1.gap_at(z), s2.gap_at(z))
        if k:
            out[z] = k
    return IntegerDivisor.from_dict(out)


def is_continuous(config: Configuration, base: CombinatorialSection,
                  candidate) -> bool:
    """Continuity criterion for a gap assignment deviating from ``base``:
    the deviation support must be finite in every compact disk.  Candidates
    are given as a finite mapping fiber-base -> gap, so after validating each
    gap (and certifying the ambient fiber bases via the tail oracle) the
    criterion holds."""
    items = candidate.items() if hasattr(candidate, "items") else candidate
    support = []
    for z, gap in items:
        z = complex(z)
        _validate_gap(config, z, gap)
        if gap != base.gap_at(z):
            support.append(z)
    radius = max((abs(z) for z in support), default=1.0) + 1.0
    delta_set(config, radius)   # raises TailUnresolved if not certifiable
    return True
