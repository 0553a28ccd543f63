"""Center configurations, fibers, and certified tail oracles.

A configuration is a (possibly infinite) list of centers lambda_n in
Im H ~ R x C subject to genericity (pairwise distinct) and summability
(sum 1/(1+|lambda_n|) < infinity).  Infinite families are realized as a
generator plus a truncation N and analytic tail bounds; all quotient and
fiber data is stored in the -lambda convention: the fiber over a base point
z collects the heights -lambda_real of the centers with -lambda_complex = z.

Tail oracles.  Each family provides two primitives,

* ``min_tail_norm(N)``   -- a certified lower bound on inf_{n>N} |lambda_n|,
* ``tail_inv_sum(N, r)`` -- a certified upper bound on
  sum_{n>N} 1/(|lambda_n| - r), finite only when min_tail_norm(N) > r,

from which coarse potential / log-product / flow tails derive.  The power
law family lambda_n = n^beta i overrides these with second-order Hurwitz
zeta expansions carrying explicit Taylor remainder constants; the coarse
1/N bounds alone cannot certify tolerances near 1e-10 at sane truncations.

Combinatorial identity (fiber membership, base-point matching, divisor
supports) uses exact float equality; tolerances appear only in numerical
guards such as singular-point detection.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from .errors import TailUnresolved, UnknownOrderType
from .geometry import ImHPoint, as_point

# Taylor remainder constants on |u| <= 1/2:
#   |sqrt(1+u) - 1 - u/2|        <= 0.354 u^2
#   |(1+u)^(-1/2) - 1 + u/2|     <= 2.125 u^2
_R_SQRT = 0.354
_R_INVSQRT = 2.125


def _binom_half(k: int) -> float:
    # binom(-1/2, k) = (-1)^k C(2k, k) / 4^k, all |.| <= 1
    return (-1.0) ** k * math.comb(2 * k, k) / 4.0 ** k


def _powerlaw_tail_series(beta: float, n_centers: int, t, q, order: int = 8):
    """(estimate, error bound) for sum_{n>N} 1/sqrt((t+n^beta)^2 + c^2),
    q = t^2 + c^2, vectorized over points.

    Expands s^-1 (1+u)^(-1/2), u = (2t + q/s)/s, s = n^beta, into Hurwitz
    zeta values; |u| <= (2|t| + q/s0)/s <= 1/2 makes the dropped binomial
    tail at most 2 |u|^(order+1), summed to 2 u1^(order+1) zeta(beta(order+2)).
    """
    t = np.asarray(t, dtype=float)
    q = np.asarray(q, dtype=float)
    s0 = float(n_centers + 1) ** beta
    u1 = 2.0 * np.abs(t) + q / s0
    u1max = float(u1.max()) if u1.size else 0.0
    if u1max > 0.5 * s0:
        return None, math.inf
    zv = {m: float(hurwitz_zeta(m * beta, n_centers + 1))
          for m in range(1, 2 * order + 2)}
    est = np.zeros_like(t)
    for k in range(order + 1):
        bk = _binom_half(k)
        for i in range(k + 1):
            coeff = bk * math.comb(k, i)
            est += coeff * (2.0 * t) ** (k - i) * q ** i * zv[k + i + 1]
    err = 2.0 * u1max ** (order + 1) * zv[order + 2]
    return est, err


# ---------------------------------------------------------------------------
# Order types and fibers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderType:
    """Order type of a fiber as a subset of R: finite, or a discrete closed
    set unbounded below (omega_down), above (omega_up), or both."""

    kind: str
    count: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("finite", "omega_up", "omega_down", "omega_both"):
            raise ValueError(f"unknown order type kind {self.kind!r}")
        if (self.kind == "finite") != (self.count is not None):
            raise ValueError("finite order types carry a count, infinite ones do not")

    @property
    def bounded_below(self) -> bool:
        return self.kind in ("finite", "omega_up")

    @property
    def bounded_above(self) -> bool:
        return self.kind in ("finite", "omega_down")

    def __str__(self):
        return f"Finite({self.count})" if self.kind == "finite" else self.kind


def Finite(k: int) -> OrderType:
    return OrderType("finite", k)


OMEGA_UP = OrderType("omega_up")
OMEGA_DOWN = OrderType("omega_down")
OMEGA_BOTH = OrderType("omega_both")


@dataclass(frozen=True)
class Fiber:
    """Fiber points (center index, height) inside a window, sorted ascending;
    ``order_type`` describes the full fiber, not just the window."""

    z: complex
    points: tuple
    order_type: OrderType
    window: Optional[tuple] = None

    def __post_init__(self):
        heights = [t for _, t in self.points]
        if any(b <= a for a, b in zip(heights, heights[1:])):
            raise ValueError("fiber points must be strictly ascending")

    @property
    def heights(self) -> tuple:
        return tuple(t for _, t in self.points)


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------

class CenterFamily:
    """Shared machinery: subclasses supply centers and tail oracles."""

    kind = "abstract"
    n_first = 0          # index of the first center
    count: Optional[int] = None   # number of centers, None = infinite

    # --- centers ---------------------------------------------------------

    def center(self, n: int):
        """Return (lambda_real, lambda_complex) of center n."""
        raise NotImplementedError

    def center_arrays(self, n_centers: int):
        """Arrays (lr, lc) of the first ``n_centers`` centers."""
        idx = self.index_range(n_centers)
        lr = np.array([self.center(n)[0] for n in idx], dtype=float)
        lc = np.array([self.center(n)[1] for n in idx], dtype=complex)
        return lr, lc

    def index_range(self, n_centers: int) -> range:
        hi = n_centers if self.count is None else min(n_centers, self.count)
        return range(self.n_first, self.n_first + hi)

    def clamp(self, n_centers: int) -> int:
        return n_centers if self.count is None else min(n_centers, self.count)

    # --- fibers (stored -lambda convention) ------------------------------

    def fiber_bases(self, radius: float, n_centers: int) -> frozenset:
        raise NotImplementedError

    def fiber_points_window(self, z: complex, lo: float, hi: float, n_max: int):
        """All fiber points (idx, t) with t in [lo, hi], certified complete."""
        raise NotImplementedError

    def fiber_points_all(self, z: complex, n_max: int):
        """All fiber points, only for certifiably finite fibers."""
        raise NotImplementedError

    def fiber_order_type(self, z: complex) -> OrderType:
        raise NotImplementedError

    def fiber_neighbors(self, z: complex, t: float, n_max: int):
        """(lower, upper, hit): nearest fiber points strictly below/above t
        (None = certified none on that side) and an exact hit if t is one."""
        raise NotImplementedError

    def fiber_from_top(self, z: complex, k: int, n_max: int):
        """First k fiber points counted downward from the top."""
        raise NotImplementedError

    def fiber_from_bottom(self, z: complex, k: int, n_max: int):
        raise NotImplementedError

    def nearest_center_distance(self, p: ImHPoint, n_max: int) -> float:
        raise NotImplementedError

    # --- tail oracles -----------------------------------------------------

    def min_tail_norm(self, n_centers: int) -> float:
        raise NotImplementedError

    def tail_inv_sum(self, n_centers: int, r: float) -> float:
        raise NotImplementedError

    def tail_chart_admissible(self, n_centers: int) -> Optional[bool]:
        """Whether every non-enumerated center has nonzero real part
        (None = not certifiable)."""
        return None

    # Derived coarse tails; PowerLaw overrides with sharp expansions.

    def phi_tail(self, n_centers: int, t: float, z: complex):
        """(estimate, error bound) for sum_{n>N} 1/|zeta + lambda_n|."""
        r = math.hypot(t, abs(z))
        if self.min_tail_norm(n_centers) <= r:
            return 0.0, math.inf
        b = self.tail_inv_sum(n_centers, r)
        return b / 2.0, b / 2.0

    def log_tail(self, n_centers: int, t: float, z: complex):
        """(estimate, error bound) for the chart log-product tail at zeta."""
        r = math.hypot(t, abs(z))
        if self.min_tail_norm(n_centers) < 4.0 * r:
            return 0.0, math.inf
        return 0.0, 4.0 * r * self.tail_inv_sum(n_centers, 0.0)

    def flow_tail(self, n_centers: int, t0: float, t1: float, z: complex):
        """(estimate, error bound) for the flow log-ratio tail between
        heights t0 and t1 on the fiber line over z."""
        rbar = max(math.hypot(t0, abs(z)), math.hypot(t1, abs(z)))
        if self.min_tail_norm(n_centers) <= 2.0 * rbar:
            return 0.0, math.inf
        return 0.0, 2.0 * abs(t1 - t0) * self.tail_inv_sum(n_centers, 2.0 * rbar)


def _neighbors_from_sorted(points, t):
    """Neighbor search in an explicitly sorted, complete point list."""
    lower = upper = hit = None
    for idx, h in points:
        if h == t:
            hit = idx
        elif h < t:
            if lower is None or h > lower[1]:
                lower = (idx, h)
        else:
            if upper is None or h < upper[1]:
                upper = (idx, h)
    return lower, upper, hit


class _AxialDecreasingFamily(CenterFamily):
    """Common logic for axial families lambda_n = a_n i with a_n strictly
    increasing to +infinity: the single nonempty fiber sits over z = 0 and
    its points -a_n decrease (order type omega_down after finitely many
    negative a_n, which validation rejects as non-generic duplicates would)."""

    n_first = 1

    def a(self, n: int) -> float:
        raise NotImplementedError

    def center(self, n: int):
        return self.a(n), 0j

    def fiber_bases(self, radius, n_centers):
        return frozenset({0j}) if radius >= 0 else frozenset()

    def fiber_order_type(self, z):
        return OMEGA_DOWN if z == 0 else Finite(0)

    def _last_above(self, t: float, n_max: int) -> int:
        """Largest n with -a_n > t, i.e. a_n < -t; 0 if none."""
        if self.a(1) >= -t:
            return 0
        lo, hi = 1, 2
        while self.a(hi) < -t:
            lo = hi
            hi *= 2
            if hi > n_max:
                raise TailUnresolved(
                    f"fiber enumeration beyond max truncation {n_max} needed at height {t}")
        while hi - lo > 1:          # a_lo < -t <= a_hi
            mid = (lo + hi) // 2
            if self.a(mid) < -t:
                lo = mid
            else:
                hi = mid
        return lo

    def fiber_points_window(self, z, lo, hi, n_max):
        if z != 0:
            return []
        if lo > hi:
            return []
        # points -a_n in [lo, hi]  <=>  a_n in [-hi, -lo]
        n_hi = self._last_above(lo, n_max)          # last n with -a_n > lo
        out = []
        n = n_hi
        while n >= 1 and -self.a(n) <= hi:
            out.append((n, -self.a(n)))
            n -= 1
        # include exact left endpoint if -a_{n_hi+1} == lo
        if n_hi + 1 <= n_max:
            try:
                t_next = -self.a(n_hi + 1)
            except Exception:
                t_next = None
            if t_next is not None and t_next == lo:
                out.append((n_hi + 1, t_next))
        out.sort(key=lambda p: p[1])
        return out

    def fiber_points_all(self, z, n_max):
        if z != 0:
            return []
        raise ValueError("the fiber over 0 is infinite; pass an explicit window")

    def fiber_neighbors(self, z, t, n_max):
        if z != 0:
            return None, None, None
        n = self._last_above(t, n_max)   # -a_n > t strictly, so only n+1 can hit
        if n + 1 <= n_max and -self.a(n + 1) == t:
            return None, None, n + 1
        upper = (n, -self.a(n)) if n >= 1 else None
        if n + 1 > n_max:
            raise TailUnresolved(f"lower neighbor beyond max truncation {n_max}")
        lower = (n + 1, -self.a(n + 1))
        return lower, upper, None

    def fiber_from_top(self, z, k, n_max):
        if z != 0 or k > n_max:
            raise TailUnresolved("fiber depth not certifiable")
        return [(n, -self.a(n)) for n in range(1, k + 1)]

    def fiber_from_bottom(self, z, k, n_max):
        raise TailUnresolved("fiber over 0 is unbounded below")

    def nearest_center_distance(self, p, n_max):
        # centers at -a_n on the axis; distance^2 = (t + a_n)^2 + |z|^2
        n = self._last_above(p.t, n_max)
        best = math.inf
        for m in (n, n + 1, n + 2, 1):
            if m >= 1:
                best = min(best, math.hypot(p.t + self.a(m), abs(p.z)))
        return best


class PowerLawFamily(_AxialDecreasingFamily):
    """lambda_n = n^beta i, beta > 1."""

    kind = "power_law"

    def __init__(self, beta: float):
        if not beta > 1:
            raise ValueError("power law exponent must exceed 1")
        self.beta = float(beta)

    def a(self, n: int) -> float:
        return float(n) ** self.beta

    def center_arrays(self, n_centers: int):
        n = np.arange(1, n_centers + 1, dtype=float)
        return n ** self.beta, np.zeros(n_centers, dtype=complex)

    # --- sharp tails ------------------------------------------------------

    def _zeta(self, m: float, n_centers: int) -> float:
        return float(hurwitz_zeta(m * self.beta, n_centers + 1))

    def min_tail_norm(self, n_centers):
        return float(n_centers + 1) ** self.beta

    def tail_inv_sum(self, n_centers, r):
        s0 = self.min_tail_norm(n_centers)
        if r >= s0:
            return math.inf
        base = float(n_centers) ** (1.0 - self.beta) / (self.beta - 1.0)
        if r <= 0:
            return base
        return base / (1.0 - r / s0)

    def phi_tail(self, n_centers, t, z):
        q = t * t + abs(z) ** 2
        est, err = _powerlaw_tail_series(self.beta, n_centers, t, q)
        if est is None:
            return 0.0, math.inf
        return float(est), err

    def phi_tail_batch(self, n_centers, t, c):
        return _powerlaw_tail_series(self.beta, n_centers, t, t * t + c * c)

    def log_tail(self, n_centers, t, z):
        # log((S + t + s)/(2s)) = t/s + O(1/s^2) with certified constant
        s0 = self.min_tail_norm(n_centers)
        q = t * t + abs(z) ** 2
        u1 = 2.0 * abs(t) + q / s0
        v1 = abs(t) + q / (4.0 * s0) + _R_SQRT * u1 * u1 / (2.0 * s0)
        if u1 / s0 > 0.5 or v1 / s0 > 0.5:
            return 0.0, math.inf
        w1 = q / 4.0 + _R_SQRT * u1 * u1 / 2.0 + v1 * v1
        return t * self._zeta(1, n_centers), w1 * self._zeta(2, n_centers)

    def flow_tail(self, n_centers, t0, t1, z):
        est0, err0 = self.log_tail(n_centers, t0, z)
        est1, err1 = self.log_tail(n_centers, t1, z)
        return est1 - est0, err0 + err1

    def tail_chart_admissible(self, n_centers):
        return True


class AxialMonotoneFamily(_AxialDecreasingFamily):
    """lambda_n = a_n i for a user-supplied strictly increasing sequence.

    ``growth`` = (c, gamma, n0) declares a_n >= c * n^gamma for n >= n0
    (c > 0, gamma > 1) and powers the tail oracles; without it, tails are
    uncertifiable and tight tolerances raise TailUnresolved.
    """

    kind = "axial_monotone"

    def __init__(self, values: Callable[[int], float], growth=None):
        self.values = values
        if growth is not None:
            c, gamma, n0 = growth
            if not (c > 0 and gamma > 1 and n0 >= 1):
                raise ValueError("growth minorant must satisfy c > 0, gamma > 1, n0 >= 1")
            growth = (float(c), float(gamma), int(n0))
        self.growth = growth

    def a(self, n: int) -> float:
        return float(self.values(n))

    def min_tail_norm(self, n_centers):
        if self.growth is None:
            return 0.0
        c, gamma, n0 = self.growth
        if n_centers < n0:
            return 0.0
        return c * float(n_centers + 1) ** gamma

    def tail_inv_sum(self, n_centers, r):
        if self.growth is None:
            return math.inf
        c, gamma, n0 = self.growth
        if n_centers < n0:
            return math.inf
        s0 = float(n_centers + 1) ** gamma
        if r / c >= s0:
            return math.inf
        base = float(n_centers) ** (1.0 - gamma) / (c * (gamma - 1.0))
        if r <= 0:
            return base
        return base / (1.0 - (r / c) / s0)

    def tail_chart_admissible(self, n_centers):
        # increasing sequence: once positive, stays positive
        return True if self.a(n_centers) > 0 else None


class FiniteListFamily(CenterFamily):
    """Explicit finite center list (the classical k+1 center case)."""

    kind = "finite"
    n_first = 0

    def __init__(self, centers: Sequence):
        pts = [as_point(c) for c in centers]
        if not pts:
            raise ValueError("a finite configuration needs at least one center")
        self.centers = tuple((p.t, p.z) for p in pts)
        self.count = len(self.centers)

    def center(self, n: int):
        return self.centers[n]

    def center_arrays(self, n_centers: int):
        n = self.clamp(n_centers)
        lr = np.array([c[0] for c in self.centers[:n]], dtype=float)
        lc = np.array([c[1] for c in self.centers[:n]], dtype=complex)
        return lr, lc

    def _fiber(self, z: complex):
        pts = [(i, -lr) for i, (lr, lc) in enumerate(self.centers) if -lc == z]
        pts.sort(key=lambda p: p[1])
        return pts

    def fiber_bases(self, radius, n_centers):
        return frozenset(-lc for lr, lc in self.centers if abs(lc) <= radius)

    def fiber_points_window(self, z, lo, hi, n_max):
        return [(i, t) for i, t in self._fiber(z) if lo <= t <= hi]

    def fiber_points_all(self, z, n_max):
        return self._fiber(z)

    def fiber_order_type(self, z):
        return Finite(len(self._fiber(z)))

    def fiber_neighbors(self, z, t, n_max):
        return _neighbors_from_sorted(self._fiber(z), t)

    def fiber_from_top(self, z, k, n_max):
        pts = self._fiber(z)
        if k > len(pts):
            raise TailUnresolved(f"fiber has only {len(pts)} points")
        return [(i, t) for i, t in reversed(pts[-k:])]

    def fiber_from_bottom(self, z, k, n_max):
        pts = self._fiber(z)
        if k > len(pts):
            raise TailUnresolved(f"fiber has only {len(pts)} points")
        return pts[:k]

    def nearest_center_distance(self, p, n_max):
        return min(math.hypot(p.t + lr, abs(p.z + lc)) for lr, lc in self.centers)

    def min_tail_norm(self, n_centers):
        return math.inf if n_centers >= self.count else 0.0

    def tail_inv_sum(self, n_centers, r):
        return 0.0 if n_centers >= self.count else math.inf

    def phi_tail(self, n_centers, t, z):
        return (0.0, 0.0) if n_centers >= self.count else (0.0, math.inf)

    def log_tail(self, n_centers, t, z):
        return (0.0, 0.0) if n_centers >= self.count else (0.0, math.inf)

    def flow_tail(self, n_centers, t0, t1, z):
        return (0.0, 0.0) if n_centers >= self.count else (0.0, math.inf)

    def tail_chart_admissible(self, n_centers):
        return True if n_centers >= self.count else None


class GeneralAxialFiberedFamily(FiniteListFamily):
    """Explicit centers inside a working region plus declared per-fiber
    asymptotic order types.

    Contract: every fiber base inside |z| <= base_radius appears among the
    enumerated centers, and for those fibers every point with
    |height| <= fiber_window is enumerated.  Fibers carrying points must be
    declared in ``order_types`` (keyed by base point, -lambda convention).
    Optional tail oracles (min_norm(N), inv_sum(N, r)) certify summability.
    """

    kind = "general_axial_fibered"

    def __init__(self, centers, base_radius: float, order_types: dict,
                 fiber_window: float = math.inf, tail_oracles=None):
        super().__init__(centers)
        self.base_radius = float(base_radius)
        self.order_types = {complex(z): ot for z, ot in order_types.items()}
        self.fiber_window = float(fiber_window)
        self.tail_oracles = tail_oracles

    def fiber_bases(self, radius, n_centers):
        if radius > self.base_radius:
            raise TailUnresolved(
                f"fiber bases certified only inside radius {self.base_radius}")
        return super().fiber_bases(radius, n_centers)

    def fiber_order_type(self, z):
        if z in self.order_types:
            return self.order_types[z]
        if self._fiber(z):
            raise UnknownOrderType(f"no declared order type for the fiber over {z}")
        if abs(z) <= self.base_radius:
            return Finite(0)
        raise TailUnresolved(f"fiber over {z} lies outside the certified base disk")

    def _check_window(self, z, lo, hi):
        if lo < -self.fiber_window or hi > self.fiber_window:
            raise TailUnresolved(
                f"fiber points certified only for |height| <= {self.fiber_window}")

    def fiber_points_window(self, z, lo, hi, n_max):
        self._check_window(z, lo, hi)
        return super().fiber_points_window(z, lo, hi, n_max)

    def fiber_points_all(self, z, n_max):
        ot = self.fiber_order_type(z)
        if ot.kind != "finite":
            raise ValueError(f"fiber over {z} is infinite; pass an explicit window")
        pts = self._fiber(z)
        if ot.count != len(pts):
            raise TailUnresolved(
                f"declared Finite({ot.count}) but {len(pts)} points enumerated")
        return pts

    def fiber_neighbors(self, z, t, n_max):
        ot = self.fiber_order_type(z)
        if abs(t) > self.fiber_window:
            raise TailUnresolved(f"height {t} outside the certified window")
        lower, upper, hit = _neighbors_from_sorted(self._fiber(z), t)
        if hit is not None:
            return None, None, hit
        if lower is None and not ot.bounded_below:
            raise TailUnresolved("no enumerated point below but fiber is unbounded below")
        if upper is None and not ot.bounded_above:
            raise TailUnresolved("no enumerated point above but fiber is unbounded above")
        return lower, upper, None

    def fiber_from_top(self, z, k, n_max):
        if not self.fiber_order_type(z).bounded_above:
            raise TailUnresolved("fiber unbounded above has no top end")
        return super().fiber_from_top(z, k, n_max)

    def fiber_from_bottom(self, z, k, n_max):
        if not self.fiber_order_type(z).bounded_below:
            raise TailUnresolved("fiber unbounded below has no bottom end")
        return super().fiber_from_bottom(z, k, n_max)

    def min_tail_norm(self, n_centers):
        if n_centers < self.count:
            return 0.0
        user = self.tail_oracles[0](n_centers) if self.tail_oracles else 0.0
        return max(self.base_radius, user)

    def tail_inv_sum(self, n_centers, r):
        if self.tail_oracles is None:
            return math.inf
        if n_centers < self.count:
            return math.inf
        return self.tail_oracles[1](n_centers, r)

    def phi_tail(self, n_centers, t, z):
        return CenterFamily.phi_tail(self, n_centers, t, z)

    def log_tail(self, n_centers, t, z):
        return CenterFamily.log_tail(self, n_centers, t, z)

    def flow_tail(self, n_centers, t0, t1, z):
        return CenterFamily.flow_tail(self, n_centers, t0, t1, z)

    def tail_chart_admissible(self, n_centers):
        return None


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    """A center family plus truncation policy and comparison tolerances.

    ``truncation`` is the initial number of enumerated centers; adaptive
    operations may extend enumeration up to ``max_truncation`` before
    raising TailUnresolved.
    """

    family: CenterFamily
    truncation: int
    max_truncation: int
    moment_rtol: float = 1e-9

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("truncation must be positive")
        if self.max_truncation < self.truncation:
            raise ValueError("max_truncation must be >= truncation")

    @property
    def n_enumerated(self) -> int:
        return self.family.clamp(self.truncation)

    def center(self, n: int):
        return self.family.center(n)

    def center_arrays(self, n_centers=None):
        return self.family.center_arrays(self.family.clamp(n_centers or self.truncation))

    def nearest_center_distance(self, p) -> float:
        return self.family.nearest_center_distance(as_point(p), self.max_truncation)

    def is_singular(self, p) -> bool:
        p = as_point(p)
        return self.nearest_center_distance(p) <= 1e-12 * (1.0 + p.norm())


def power_law(beta: float, truncation: int = 4096,
              max_truncation: int = 1 << 21) -> Configuration:
    return Configuration(PowerLawFamily(beta), truncation, max_truncation)


def finite_list(centers, **kw) -> Configuration:
    fam = FiniteListFamily(centers)
    return Configuration(fam, fam.count, fam.count, **kw)


def axial_monotone(values, growth=None, truncation: int = 4096,
                   max_truncation: int = 1 << 21) -> Configuration:
    return Configuration(AxialMonotoneFamily(values, growth), truncation, max_truncation)


def general_axial(centers, base_radius, order_types, fiber_window=math.inf,
                  tail_oracles=None) -> Configuration:
    fam = GeneralAxialFiberedFamily(centers, base_radius, order_types,
                                    fiber_window, tail_oracles)
    return Configuration(fam, fam.count, fam.count)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidityReport:
    generic: bool
    duplicates: tuple
    summable: bool
    summability_bound: float
    chart_admissible: bool
    zero_real_indices: tuple
    n_enumerated: int

    def ok(self) -> bool:
        return self.generic and self.summable


def validate(config: Configuration) -> ValidityReport:
    """Check genericity and summability of the enumerated centers plus tail
    oracle; never raises, always returns a report."""
    n = config.n_enumerated
    lr, lc = config.center_arrays(n)
    idx = list(config.family.index_range(n))

    seen = {}
    dups = []
    for i, key in enumerate(zip(lr.tolist(), lc.tolist())):
        if key in seen:
            dups.append((idx[seen[key]], idx[i]))
        else:
            seen[key] = i

    norms = np.hypot(lr, np.abs(lc))
    partial = math.fsum((1.0 / (1.0 + v) for v in norms.tolist()))
    bound = partial + config.family.tail_inv_sum(n, 0.0)

    zero_real = tuple(idx[i] for i in np.flatnonzero(lr == 0.0).tolist())
    tail_ok = config.family.tail_chart_admissible(n)
    chart_ok = (len(zero_real) == 0) and (tail_ok is not False)

    return ValidityReport(
        generic=not dups,
        duplicates=tuple(dups),
        summable=math.isfinite(bound),
        summability_bound=bound,
        chart_admissible=chart_ok,
        zero_real_indices=zero_real,
        n_enumerated=n,
    )


# ---------------------------------------------------------------------------
# Delta sets and fibers
# ---------------------------------------------------------------------------

def delta_set(config: Configuration, disk_radius: float) -> frozenset:
    """Fiber base points {-lambda_complex} inside the closed disk.

    Raises TailUnresolved when the family cannot certify that no further
    bases enter the disk.
    """
    return config.family.fiber_bases(disk_radius, config.max_truncation)


def fiber(config: Configuration, z: complex, window=None) -> Fiber:
    """The fiber over z: points inside ``window`` (or all of them when the
    fiber is certifiably finite), plus the full fiber's order type."""
    z = complex(z)
    fam = config.family
    order_type = fam.fiber_order_type(z)
    if window is None:
        pts = fam.fiber_points_all(z, config.max_truncation)
    else:
        lo, hi = float(window[0]), float(window[1])
        if lo > hi:
            raise ValueError("window must satisfy lo <= hi")
        pts = fam.fiber_points_window(z, lo, hi, config.max_truncation)
        window = (lo, hi)
    return Fiber(z=z, points=tuple(pts), order_type=order_type, window=window)


# ---------------------------------------------------------------------------
# Truncated representatives
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedRepresentative:
    """Finitely many (z_n, w_n) pairs representing a solution point."""

    config: Configuration
    entries: tuple   # ((z_n, w_n), ...) aligned with the family's index order

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a representative needs at least one entry")


@dataclass(frozen=True)
class StabilityReport:
    moment_value: complex
    moment_deviation: float
    moment_constant: bool
    stable: bool
    violations: tuple


def moduli_pair(lr: float, lc: complex, p: ImHPoint):
    """(|z_n|^2, |w_n|^2) at moment value p for the center (lr, lc):
    half of (|zeta+lambda_n| +- (zeta_r + lambda_r)), evaluated stably."""
    d = p.t + lr
    c = p.z + lc
    s = math.hypot(d, abs(c))
    c2 = abs(c) ** 2
    if d >= 0:
        zsq = (s + d) / 2.0
        wsq = c2 / (2.0 * (s + d)) if s + d > 0 else 0.0
    else:
        wsq = (s - d) / 2.0
        zsq = c2 / (2.0 * (s - d))
    return zsq, wsq


def representative_from_moment(config: Configuration, p, n_entries=None) -> TruncatedRepresentative:
    """Build entries with the gauge z_n >= 0 real where possible; satisfies
    the complex moment equation by construction."""
    p = as_point(p)
    n = config.family.clamp(n_entries or config.truncation)
    entries = []
    for i in config.family.index_range(n):
        lr, lc = config.center(i)
        zsq, wsq = moduli_pair(lr, lc, p)
        zn = math.sqrt(zsq)
        if zn > 0:
            wn = (lc + p.z) / (2.0 * zn)
        else:
            wn = complex(math.sqrt(wsq))
        entries.append((complex(zn), complex(wn)))
    return TruncatedRepresentative(config=config, entries=tuple(entries))


def check_representative(rep: TruncatedRepresentative, t=None) -> StabilityReport:
    """Report complex-moment constancy and t-stability (default t = lambda_real).

    t-stability fails exactly when some pair t_n > t_m has z_n = w_m = 0.
    """
    config = rep.config
    n = len(rep.entries)
    idx = list(config.family.index_range(n))
    moments = []
    for (zn, wn), i in zip(rep.entries, idx):
        lr, lc = config.center(i)
        moments.append(2.0 * zn * wn - lc)
    ref = moments[0]
    dev = max(abs(m - ref) for m in moments)
    scale = 1.0 + max(abs(m) for m in moments)
    constant = dev <= config.moment_rtol * scale

    if t is None:
        t = [config.center(i)[0] for i in idx]
    z_zero = [(t[k], idx[k]) for k in range(n) if rep.entries[k][0] == 0]
    w_zero = [(t[k], idx[k]) for k in range(n) if rep.entries[k][1] == 0]
    violations = []
    if z_zero and w_zero:
        for tn, i in z_zero:
            for tm, j in w_zero:
                if tn > tm:
                    violations.append((i, j))
    return StabilityReport(
        moment_value=ref,
        moment_deviation=dev,
        moment_constant=constant,
        stable=not violations,
        violations=tuple(violations[:16]),
    )


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------

def config_to_dict(config: Configuration) -> dict:
    fam = config.family
    if fam.kind == "power_law":
        return {"family": "power_law", "beta": fam.beta,
                "truncation": config.truncation,
                "max_truncation": config.max_truncation}
    if fam.kind == "finite":
        return {"family": "finite",
                "centers": [[lr, lc.real, lc.imag] for lr, lc in fam.centers]}
    raise ValueError(f"family {fam.kind!r} has no JSON form")


def config_from_dict(d: dict) -> Configuration:
    kind = d.get("family")
    if kind == "power_law":
        return power_law(float(d["beta"]),
                         truncation=int(d.get("truncation", 4096)),
                         max_truncation=int(d.get("max_truncation", 1 << 21)))
    if kind == "finite":
        return finite_list([(c[0], complex(c[1], c[2])) for c in d["centers"]])
    raise ValueError(f"unknown configuration family {kind!r}")


def config_digest(config: Configuration) -> str:
    payload = json.dumps(config_to_dict(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]
