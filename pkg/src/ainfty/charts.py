"""Holomorphic chart coordinates on the section opens, multipliers, and
transition maps.

The base coordinate is the equivariant function given by the convergent
product of z_n/alpha_n over centers with positive real part times the
inverse product of w_n/beta_n over the rest; its squared modulus obeys the
flow identity (difference of log-moduli = unscaled flow sum = 4x the
quarter-normalized potential integral).  A multiplier in A(k) is a rational
product prod (q - z_j)^{k_j} times an entire unit exp(polynomial); charts
on a deviated section are the base coordinate times the multiplier,
extended across the deviated fibers by cancelling the exact factor
((q - z0)/2)^(-k0) against the multiplier's zero or pole and regrouping the
affected fiber terms in raw (unnormalized) form.

Gauge: the fiber phase theta of a ManifoldPoint is the argument of the base
coordinate on base-section gaps and of the regrouped product on deviated
gaps.  This pins the S^1 phase ambiguity; any other admissible convention
rotates each chart by a fixed unit constant.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .config import Configuration, moduli_pair
from .errors import (NotChartAdmissible, OutsideOverlap, RootBracketFailure,
                     SectionMismatch, SingularPoint, WrongDivisor)
from .geometry import ImHPoint, as_point
from .quotient import (CombinatorialSection, IntegerDivisor, QuotientClass,
                       base_gap, base_section, class_of, count_between)

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Center splitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CenterSplit:
    """Per-center factors (alpha_n, beta_n) with |alpha|^2 = (|l|+l_r)/2,
    |beta|^2 = (|l|-l_r)/2, 2 alpha beta = l_c; the factor on the side of
    sign(l_r) is taken real positive."""

    indices: tuple
    alpha: tuple
    beta: tuple


def split_center(config: Configuration, n: int):
    lr, lc = config.center(n)
    if lr == 0:
        raise NotChartAdmissible(f"center {n} has zero real part")
    norm = math.hypot(lr, abs(lc))
    if lr > 0:
        a = math.sqrt((norm + lr) / 2.0)
        return complex(a), lc / (2.0 * a)
    b = math.sqrt((norm - lr) / 2.0)
    return lc / (2.0 * b), complex(b)


def split_centers(config: Configuration, n_centers=None) -> CenterSplit:
    idx = list(config.family.index_range(
        config.family.clamp(n_centers or config.truncation)))
    pairs = [split_center(config, n) for n in idx]
    return CenterSplit(
        indices=tuple(idx),
        alpha=tuple(a for a, _ in pairs),
        beta=tuple(b for _, b in pairs),
    )


def moduli_from_moment(config: Configuration, zeta, n: int):
    """(|z_n|^2, |w_n|^2) of any solution representative over the moment
    value zeta; their product is |zeta_c + lambda_c|^2 / 4."""
    lr, lc = config.center(n)
    return moduli_pair(lr, lc, as_point(zeta))


# ---------------------------------------------------------------------------
# Multipliers
# ---------------------------------------------------------------------------

def _poly_eval(coeffs, q):
    out = 0j
    for c in reversed(coeffs):
        out = out * q + c
    return out


@dataclass(frozen=True)
class Multiplier:
    """prod (q - z)^{k(z)} * exp(polynomial(q)); the rational part's divisor
    is the zero/pole data, the exponential is an entire unit."""

    divisor: IntegerDivisor = IntegerDivisor()
    unit_log_coeffs: tuple = ()

    @staticmethod
    def one() -> "Multiplier":
        return Multiplier()

    @staticmethod
    def from_divisor(divisor) -> "Multiplier":
        if isinstance(divisor, dict):
            divisor = IntegerDivisor.from_dict(divisor)
        return Multiplier(divisor=divisor)

    def eval(self, q: complex) -> complex:
        q = complex(q)
        out = cmath.exp(_poly_eval(self.unit_log_coeffs, q)) if self.unit_log_coeffs else 1.0 + 0j
        for z, k in self.divisor.entries:   # canonical order: deterministic
            out *= (q - z) ** k
        return out

    def leading_at(self, z0: complex) -> complex:
        """lim_{q->z0} eval(q) * (q - z0)^(-k(z0)): the multiplier with the
        exact z0 factor cancelled."""
        z0 = complex(z0)
        out = cmath.exp(_poly_eval(self.unit_log_coeffs, z0)) if self.unit_log_coeffs else 1.0 + 0j
        for z, k in self.divisor.entries:
            if z != z0:
                out *= (z0 - z) ** k
        return out

    def _combine(self, other: "Multiplier", sign: int) -> "Multiplier":
        n = max(len(self.unit_log_coeffs), len(other.unit_log_coeffs))
        a = list(self.unit_log_coeffs) + [0j] * (n - len(self.unit_log_coeffs))
        b = list(other.unit_log_coeffs) + [0j] * (n - len(other.unit_log_coeffs))
        coeffs = tuple(x + sign * y for x, y in zip(a, b))
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        divisor = self.divisor - other.divisor if sign < 0 else self.divisor + other.divisor
        return Multiplier(divisor, coeffs)

    def ratio(self, other: "Multiplier") -> "Multiplier":
        return self._combine(other, -1)

    def product(self, other: "Multiplier") -> "Multiplier":
        return self._combine(other, +1)

    def shifted(self, c: complex) -> "Multiplier":
        """The multiplier q -> eval(q - c) (divisor translated by c)."""
        c = complex(c)
        moved = IntegerDivisor.from_dict({z + c: k for z, k in self.divisor.entries})
        if not self.unit_log_coeffs:
            return Multiplier(moved, ())
        # compose the unit polynomial with q - c
        coeffs = [0j] * len(self.unit_log_coeffs)
        for j, cj in enumerate(self.unit_log_coeffs):
            for i in range(j + 1):
                coeffs[i] += cj * math.comb(j, i) * (-c) ** (j - i)
        return Multiplier(moved, tuple(coeffs))


def section_base_divisor(config: Configuration, section: CombinatorialSection) -> IntegerDivisor:
    """The divisor of the section against the base section (signed fiber
    point counts on the deviated fibers)."""
    out = {}
    for z, gap in section.deviations:
        k = count_between(config, z, base_gap(config, z), gap)
        if k:
            out[z] = k
    return IntegerDivisor.from_dict(out)


def canonical_multiplier(config: Configuration, section: CombinatorialSection) -> Multiplier:
    """prod (q - z)^{k(z)} for the section's divisor against the base."""
    return Multiplier.from_divisor(section_base_divisor(config, section))


# ---------------------------------------------------------------------------
# Manifold points and the log-modulus profile of a gap
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ManifoldPoint:
    """A point away from the fixed locus, in gauge coordinates: the moment
    value zeta plus the fiber phase theta."""

    zeta: ImHPoint
    theta: float = 0.0


def gauge_point(config: Configuration, t: float, z, theta: float = 0.0) -> ManifoldPoint:
    p = ImHPoint(float(t), complex(z))
    if config.is_singular(p):
        raise SingularPoint(f"{(p.t, p.z)} coincides with a center")
    return ManifoldPoint(p, float(theta) % _TWO_PI)


class _LogProfile:
    """log|f|^2 along one gap as a function of the height t, with the
    regrouped finite form on deviated fibers.

    Terms are grouped per center: normalized z- or w-terms where the gap
    grouping matches the base grouping (sign of lambda_r), raw unnormalized
    terms on the between set; the t-derivative of every term is 1/|zeta +
    lambda_n|, so the derivative of the profile is the unscaled potential
    sum (4x the quarter-normalized potential).
    """

    def __init__(self, config: Configuration, z0: complex, gap: QuotientClass,
                 eps: float = 1e-10):
        if gap.is_fixed:
            raise SingularPoint("fixed classes carry no chart data")
        self.config = config
        self.z0 = complex(z0)
        self.gap = gap
        self.eps = eps
        self.lo, self.hi = gap.bounds(config)
        self._t_int = gap.interior_height(config)
        needed = max((i for i in (gap.lower, gap.upper) if i is not None), default=0)
        self._setup(max(config.n_enumerated, config.family.clamp(2 * needed + 2)))

    def _setup(self, n):
        config, z0 = self.config, self.z0
        fam = config.family
        n = fam.clamp(n)
        self.n = n
        lr, lc = fam.center_arrays(n)
        self.lr, self.lc = lr, lc
        self.c = np.abs(z0 + lc)
        self.norm = np.hypot(lr, np.abs(lc))
        self.za2 = self.norm + lr            # 2|alpha_n|^2
        self.wb2 = self.norm - lr            # 2|beta_n|^2
        same = (-lc == z0)
        d_int = self._t_int + lr
        below = np.where(same, d_int > 0, lr > 0)
        self.between_low = same & (d_int < 0) & (lr > 0)    # gap below the base gap
        self.between_high = same & (d_int > 0) & (lr < 0)   # gap above the base gap
        between = self.between_low | self.between_high
        self.cat_z = below & ~between
        self.cat_w = ~below & ~between
        if np.any(lr == 0):
            raise NotChartAdmissible("a center with zero real part is enumerated")
        self.k0 = int(np.count_nonzero(self.between_high)) \
            - int(np.count_nonzero(self.between_low))

    def _ensure_tail(self, t: float):
        while True:
            _, err = self.config.family.log_tail(self.n, t, self.z0)
            if err <= self.eps:
                return
            limit = self.config.family.clamp(self.config.max_truncation)
            if self.n >= limit:
                from .errors import TailUnresolved
                raise TailUnresolved(
                    f"chart log tail above {self.eps} at max truncation {limit}")
            self._setup(min(2 * self.n, limit))

    def value(self, t: float) -> float:
        """log|f|^2 at height t inside the gap."""
        self._ensure_tail(t)
        d = t + self.lr
        s = np.hypot(d, self.c)
        # spd = 2|z_n|^2 and smd = 2|w_n|^2, each via its cancellation-free form
        with np.errstate(divide="ignore", invalid="ignore"):
            spd = np.where(d >= 0, s + d, self.c ** 2 / (s - d))
            smd = np.where(d <= 0, s - d, self.c ** 2 / (s + d))
            term_z = np.log(spd / self.za2)
            term_w = -np.log(smd / self.wb2)
            term_bl = -np.log(self.za2 * smd / 4.0)
            term_bh = np.log(self.wb2 * spd / 4.0)
        total = float(
            np.sum(term_z, where=self.cat_z)
            + np.sum(term_w, where=self.cat_w)
            + np.sum(term_bl, where=self.between_low)
            + np.sum(term_bh, where=self.between_high))
        est, _ = self.config.family.log_tail(self.n, t, self.z0)
        return total + est

    def deriv(self, t: float) -> float:
        """d/dt of value: the unscaled potential sum at (t, z0)."""
        d = t + self.lr
        s = np.hypot(d, self.c)
        partial = float(np.sum(1.0 / s))
        est, _ = self.config.family.phi_tail(self.n, t, self.z0)
        return partial + (est if math.isfinite(est) else 0.0)


def _solve_monotone(profile: _LogProfile, target: float) -> float:
    """Root of profile.value(t) = target inside the gap: bracket the ends
    (the profile diverges to -inf/+inf there), bisect, then safeguarded
    Newton with the potential sum as the exact derivative."""
    lo, hi = profile.lo, profile.hi
    t0 = profile._t_int

    def _find(side_sign):
        # walk toward the gap end until the profile passes the target
        if side_sign < 0:
            end, start = lo, t0
        else:
            end, start = hi, t0
        if math.isfinite(end):
            delta = abs(end - start) / 4.0
            for _ in range(400):
                t = end + side_sign * (-delta)
                v = profile.value(t)
                if side_sign * (v - target) > 0:
                    return t
                delta /= 4.0
        else:
            step = 1.0
            t = start
            for _ in range(400):
                t = t + side_sign * step
                v = profile.value(t)
                if side_sign * (v - target) > 0:
                    return t
                step *= 2.0
        raise RootBracketFailure(
            f"no bracket toward {'lower' if side_sign < 0 else 'upper'} end "
            f"of gap ({lo}, {hi}); target {target}")

    a = _find(-1)
    b = _find(+1)
    if a > b:
        a, b = b, a
    # bisect to a moderate width, then Newton
    for _ in range(200):
        if b - a <= 1e-3 * (1.0 + abs(a) + abs(b)):
            break
        m = 0.5 * (a + b)
        if profile.value(m) < target:
            a = m
        else:
            b = m
    t = 0.5 * (a + b)
    for _ in range(80):
        v = profile.value(t)
        if v < target:
            a = max(a, t)
        else:
            b = min(b, t)
        step = (v - target) / profile.deriv(t)
        t_new = t - step
        if not (a <= t_new <= b):
            t_new = 0.5 * (a + b)
        if abs(t_new - t) <= 1e-14 * (1.0 + abs(t)):
            return t_new
        t = t_new
    return t


# ---------------------------------------------------------------------------
# Chart maps
# ---------------------------------------------------------------------------

def _chart_constant(multiplier: Multiplier, z0: complex, k0: int) -> complex:
    return multiplier.leading_at(z0) * 2.0 ** k0


def _coordinate(config, section, multiplier, point, eps, check_divisor=True):
    p = point.zeta
    cls = class_of(config, p)
    if cls.is_fixed:
        raise SingularPoint(f"{(p.t, p.z)} is a center")
    if section.gap_at(p.z) != cls:
        raise SectionMismatch(
            f"point class {cls} is not the section's gap over {p.z}")
    if check_divisor and multiplier.divisor != section_base_divisor(config, section):
        raise WrongDivisor(
            f"multiplier divisor {multiplier.divisor.entries} does not match "
            f"the section divisor")
    profile = _LogProfile(config, p.z, cls, eps=2.0 * eps)
    const = _chart_constant(multiplier, p.z, profile.k0)
    modulus = math.exp(0.5 * profile.value(p.t))
    return const * modulus * cmath.exp(1j * point.theta)


def base_coordinate(config: Configuration, point: ManifoldPoint,
                    eps: float = 1e-10) -> complex:
    """The equivariant coordinate on the base-section open set; equals
    exp(i theta) on the zero-height locus by the gauge convention."""
    return _coordinate(config, base_section(config), Multiplier.one(), point, eps)


def section_coordinate(config: Configuration, section: CombinatorialSection,
                       multiplier: Multiplier, point: ManifoldPoint,
                       eps: float = 1e-10) -> complex:
    """The chart coordinate on the section's open set: base coordinate times
    multiplier, extended analytically across deviated fibers."""
    return _coordinate(config, section, multiplier, point, eps)


def chart_forward(config: Configuration, section: CombinatorialSection,
                  multiplier: Multiplier, point: ManifoldPoint,
                  eps: float = 1e-10):
    """(p, q): the chart coordinate and the complex moment value."""
    return (section_coordinate(config, section, multiplier, point, eps),
            point.zeta.z)


def chart_inverse(config: Configuration, section: CombinatorialSection,
                  multiplier: Multiplier, pq, eps: float = 1e-10) -> ManifoldPoint:
    """The unique point on the section with the given chart image: the
    height solves a monotone log-modulus equation inside the gap, the phase
    is read off the chart constant."""
    p, q = complex(pq[0]), complex(pq[1])
    if p == 0:
        raise ValueError("chart coordinate must be nonzero")
    if multiplier.divisor != section_base_divisor(config, section):
        raise WrongDivisor("multiplier divisor does not match the section")
    gap = section.gap_at(q)
    profile = _LogProfile(config, q, gap, eps=2.0 * eps)
    const = _chart_constant(multiplier, q, profile.k0)
    target = 2.0 * (math.log(abs(p)) - math.log(abs(const)))
    t = _solve_monotone(profile, target)
    theta = (cmath.phase(p) - cmath.phase(const)) % _TWO_PI
    return ManifoldPoint(ImHPoint(t, q), theta)


def transition(multiplier1: Multiplier, multiplier2: Multiplier, pq):
    """The gluing map between two charts: (p, q) -> (p * (m2/m1)(q), q),
    with exact divisor cancellation; q must avoid the net divisor support."""
    p, q = complex(pq[0]), complex(pq[1])
    net = multiplier2.ratio(multiplier1)
    if net.divisor.get(q) != 0:
        raise OutsideOverlap(
            f"{q} lies in the support of the section-pair divisor")
    return p * net.eval(q), q


def act(config: Configuration, point: ManifoldPoint, g: complex,
        eps: float = 1e-10) -> ManifoldPoint:
    """The free action of a nonzero complex scalar in gauge coordinates:
    |g| flows the height inside its gap (log-modulus shift 2 log|g|),
    arg g rotates the fiber phase."""
    g = complex(g)
    if g == 0:
        raise ValueError("the acting scalar must be nonzero")
    p = point.zeta
    cls = class_of(config, p)
    if cls.is_fixed:
        raise SingularPoint("fixed points are not moved in gauge coordinates")
    profile = _LogProfile(config, p.z, cls, eps=eps)
    target = profile.value(p.t) + 2.0 * math.log(abs(g))
    t = _solve_monotone(profile, target)
    return ManifoldPoint(ImHPoint(t, p.z), (point.theta + cmath.phase(g)) % _TWO_PI)


# ---------------------------------------------------------------------------
# Convergent products
# ---------------------------------------------------------------------------

def log_convergent_product(xs) -> complex:
    """Stable log of prod (1 + x_n) for absolutely summable x_n (imaginary
    part summed as principal-branch increments, not wrapped)."""
    total = 0j
    for x in xs:
        x = complex(x)
        if x == -1:
            raise ValueError("a factor vanishes; the product has no nonzero limit")
        total += cmath.log(1.0 + x)
    return total


def convergent_product(xs) -> complex:
    return cmath.exp(log_convergent_product(xs))
