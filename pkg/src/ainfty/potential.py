"""Certified evaluation of the harmonic potential, flow integrals, and the
volume-growth experiment.

The potential is Phi(zeta) = (1/4) sum_n 1/|zeta + lambda_n|.  Values carry
certified error bounds: enumerated partial sums plus the family's tail
estimate, with the truncation doubled adaptively until the bound meets the
requested tolerance.  Flow quantities come in two deliberately independent
routes: ``flow_log_g`` integrates Phi along a vertical segment with
adaptive quadrature, while ``flow_log_g_sum`` evaluates the explicit
sum of log ratios; their agreement is one of the bundled invariants.

Normalization: both flow routes return the integral of the
quarter-normalized potential, whose eta-derivative is exactly Phi.  The
complex flow multiplier g moving a point between the two heights satisfies
log|g|^2 = 4 * flow_log_g (equivariant chart moduli use that unscaled sum).

The growth experiment measures W(rho) = integral of Phi over the base
region {radial_distance <= rho} and fits the slope of log W against
log rho.  The constant fiber-circle period is omitted from W (it rescales
W and cannot move the slope), and the base-distance proxy differs from the
true geodesic distance by bounded distortion, again affecting constants
only.  Monte Carlo sampling uses counter-based Philox streams split per
rho stratum, so results are bit-reproducible for a given seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .config import Configuration
from .errors import (InsufficientRange, RayHitsCenter, SegmentHitsCenter,
                     SingularPoint, TailUnresolved)
from .geometry import ImHPoint, as_point

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class CertifiedValue:
    """A value with a certified error bound (given correct tail oracles)."""

    value: float
    error_bound: float

    def contains(self, x: float) -> bool:
        return abs(self.value - x) <= self.error_bound

    def __float__(self):
        return self.value


def _inv_dist_sum(lr, lc, p: ImHPoint) -> float:
    d = p.t + lr
    s = np.hypot(d, np.abs(p.z + lc))
    return float(np.sum(1.0 / s))


def _grow(config: Configuration, n: int):
    limit = config.family.clamp(config.max_truncation)
    if n >= limit:
        raise TailUnresolved(
            f"requested tolerance unreachable at max truncation {limit}")
    return min(2 * n, limit)


def phi(config: Configuration, zeta, eps: float = 1e-10) -> CertifiedValue:
    """The potential at zeta with certified absolute error <= eps."""
    p = as_point(zeta)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if config.is_singular(p):
        raise SingularPoint(f"{(p.t, p.z)} coincides with a center")
    fam = config.family
    n = config.n_enumerated
    while True:
        lr, lc = fam.center_arrays(n)
        partial = _inv_dist_sum(lr, lc, p)
        est, err = fam.phi_tail(n, p.t, p.z)
        slop = 64.0 * _EPS * (abs(partial) + abs(est) + 1.0)
        bound = (err + slop) / 4.0
        if bound <= eps:
            return CertifiedValue((partial + est) / 4.0, bound)
        n = _grow(config, n)


def volume_density(config: Configuration, zeta, eps: float = 1e-10) -> CertifiedValue:
    """Density of the 4-volume over the base after fiber integration; equal
    to the potential (named alias to keep the geometric intent explicit)."""
    return phi(config, zeta, eps)


# ---------------------------------------------------------------------------
# Flow integrals
# ---------------------------------------------------------------------------

def _segment_clear(config: Configuration, z: complex, lo: float, hi: float):
    pts = config.family.fiber_points_window(z, lo, hi, config.max_truncation)
    if pts:
        raise SegmentHitsCenter(
            f"fiber points {[t for _, t in pts][:4]} lie on the segment "
            f"[{lo}, {hi}] over {z}")


class _AdaptivePhi:
    """Scalar potential evaluator with truncation fixed for a working set of
    points (keeps quadrature inner loops cheap)."""

    def __init__(self, config: Configuration, ref_points, abs_tol: float):
        fam = config.family
        n = config.n_enumerated
        while True:
            worst = 0.0
            for p in ref_points:
                _, err = fam.phi_tail(n, p.t, p.z)
                worst = max(worst, err / 4.0)
            if worst <= abs_tol:
                break
            n = _grow(config, n)
        self.config = config
        self.n = n
        self.tail_err = worst
        self.lr, self.lc = fam.center_arrays(n)

    def __call__(self, t: float, z: complex) -> float:
        p = ImHPoint(t, z)
        est, _ = self.config.family.phi_tail(self.n, p.t, p.z)
        return (_inv_dist_sum(self.lr, self.lc, p) + est) / 4.0


def flow_log_g(config: Configuration, z, from_t: float, to_t: float,
               eps: float = 1e-8) -> CertifiedValue:
    """log|g|^2 between two heights on a fiber line, as the integral of the
    potential along the vertical segment (adaptive quadrature).

    The segment must stay clear of centers.  The truncation part of the
    error bound is certified; the quadrature part is QUADPACK's estimate.
    """
    z = complex(z)
    if from_t == to_t:
        return CertifiedValue(0.0, 0.0)
    lo, hi = min(from_t, to_t), max(from_t, to_t)
    _segment_clear(config, z, lo, hi)
    length = hi - lo
    ev = _AdaptivePhi(config, [ImHPoint(lo, z), ImHPoint(hi, z)],
                      abs_tol=eps / (4.0 * length))
    val, quad_err = quad(lambda t: ev(t, z), from_t, to_t,
                         epsabs=eps / 2.0, epsrel=0.0, limit=400)
    bound = abs(quad_err) + length * ev.tail_err + 64.0 * _EPS * (1.0 + abs(val))
    return CertifiedValue(val, bound)


def flow_log_g_sum(config: Configuration, eta_t: float, zeta_t: float, z,
                   eps: float = 1e-9) -> CertifiedValue:
    """The flow integral between heights zeta_t -> eta_t over z, via the
    explicit sum of log ratios split by the sign of zeta_r + lambda_r
    (quarter-normalized to match ``flow_log_g``; the flow multiplier itself
    satisfies log|g|^2 = 4x this value, see the module docstring).

    Independent of ``flow_log_g``; both points must lie in the same gap.
    """
    z = complex(z)
    if eta_t == zeta_t:
        return CertifiedValue(0.0, 0.0)
    lo, hi = min(eta_t, zeta_t), max(eta_t, zeta_t)
    _segment_clear(config, z, lo, hi)
    fam = config.family
    n = config.n_enumerated
    while True:
        lr, lc = fam.center_arrays(n)
        d0 = zeta_t + lr
        d1 = eta_t + lr
        c = np.abs(z + lc)
        s0 = np.hypot(d0, c)
        s1 = np.hypot(d1, c)
        # stable log ratios: (s1 - s0) = (d1-d0)(d1+d0)/(s1+s0)
        ds = (d1 - d0) * (d1 + d0) / (s1 + s0)
        plus = d0 >= 0
        with np.errstate(divide="ignore", invalid="ignore"):
            num = np.where(plus, ds + (d1 - d0), ds - (d1 - d0))
            den = np.where(plus, s0 + d0, s0 - d0)
            terms = np.where(plus, np.log1p(num / den), -np.log1p(num / den))
        partial = float(np.sum(terms))
        est, err = fam.flow_tail(n, zeta_t, eta_t, z)
        slop = 64.0 * _EPS * (1.0 + np.abs(terms).sum() + abs(est))
        if (err + slop) / 4.0 <= eps:
            return CertifiedValue((partial + est) / 4.0, (err + slop) / 4.0)
        n = _grow(config, n)


# ---------------------------------------------------------------------------
# Radial distance and volume growth
# ---------------------------------------------------------------------------

def _unit_direction(direction):
    d = np.asarray(direction, dtype=float)
    if d.shape != (3,) or not np.all(np.isfinite(d)) or not np.any(d):
        raise ValueError("direction must be a nonzero 3-vector (t, re, im)")
    return d / np.linalg.norm(d)


def radial_distance(config: Configuration, direction, R: float,
                    rel_tol: float = 1e-9) -> float:
    """Base-distance proxy along a ray: integral of sqrt(Phi) from the
    origin to radius R (substituted s = sigma^2 to tame the endpoint when a
    center sits at the origin)."""
    if R < 0:
        raise ValueError("R must be nonnegative")
    if R == 0:
        return 0.0
    d = _unit_direction(direction)
    # enumerate far enough that all non-enumerated centers lie beyond R
    fam = config.family
    n = config.n_enumerated
    while fam.min_tail_norm(n) <= R and fam.clamp(n) == n:
        n = _grow(config, n)
    lr, lc = fam.center_arrays(fam.clamp(n))
    pos_t, pos_z = -lr, -lc
    proj = pos_t * d[0] + np.real(pos_z) * d[1] + np.imag(pos_z) * d[2]
    perp2 = (pos_t - proj * d[0]) ** 2 + (np.real(pos_z) - proj * d[1]) ** 2 \
        + (np.imag(pos_z) - proj * d[2]) ** 2
    on_ray = (proj > 1e-12) & (proj <= R) & (perp2 <= (1e-10 * (1.0 + proj)) ** 2)
    if np.any(on_ray):
        raise RayHitsCenter(
            f"center {int(np.flatnonzero(on_ray)[0])} lies on the ray; perturb the direction")

    far = ImHPoint(R * d[0], complex(R * d[1], R * d[2]))
    ev = _AdaptivePhi(config, [far, ImHPoint(0.5 * R * d[0], 0.5 * complex(R * d[1], R * d[2]))],
                      abs_tol=rel_tol / (4.0 * (R + 1.0)))

    def integrand(sigma):
        s = sigma * sigma
        return 2.0 * sigma * math.sqrt(
            max(ev(s * d[0], complex(s * d[1], s * d[2])), 0.0))

    val, _ = quad(integrand, 0.0, math.sqrt(R), limit=400,
                  epsabs=0.0, epsrel=rel_tol)
    return val


def _axial_check(config: Configuration):
    _, lc = config.center_arrays()
    if np.any(lc != 0):
        raise ValueError("the growth experiment supports axial configurations only")


def _phi_batch(config: Configuration, t: np.ndarray, c: np.ndarray,
               rel_tol: float = 1e-5) -> np.ndarray:
    """Vectorized potential for axial configurations; c = |z| >= 0.
    Accuracy: relative rel_tol at the farthest point of the batch."""
    fam = config.family
    r = np.hypot(t, c)
    rmax = float(r.max())
    lr0 = abs(config.center(config.family.n_first)[0])
    scale = 1.0 / (4.0 * (rmax + lr0 + 1.0))   # lower bound for Phi at rmax
    n = config.n_enumerated
    while True:
        _, err = fam.phi_tail(n, rmax, 0j)
        if err / 4.0 <= rel_tol * scale or fam.clamp(n) < n:
            break
        if n >= fam.clamp(config.max_truncation):
            break
        n = _grow(config, n)
    n = fam.clamp(n)
    lr, _ = fam.center_arrays(n)

    out = np.empty_like(r)
    chunk = max(256, 2_000_000 // max(n, 1))
    for a in range(0, r.size, chunk):
        b = min(a + chunk, r.size)
        d = t[a:b, None] + lr[None, :]
        s = np.sqrt(d * d + (c[a:b, None]) ** 2)
        np.maximum(s, 1e-9 * (1.0 + r[a:b, None]), out=s)
        out[a:b] = np.sum(1.0 / s, axis=1)
    if hasattr(fam, "phi_tail_batch"):
        est, _ = fam.phi_tail_batch(n, t, c)
        if est is not None:
            out += est
    elif math.isfinite(fam.min_tail_norm(n)) and fam.min_tail_norm(n) > rmax:
        out += fam.tail_inv_sum(n, rmax) / 2.0
    return out / 4.0


@dataclass(frozen=True)
class GrowthFit:
    """log-log samples of the region volume against the distance proxy and
    the fitted slope (base-10 logs; the slope is base-independent)."""

    samples: tuple
    slope: float
    slope_stderr: float

    def __post_init__(self):
        xs = [x for x, _ in self.samples]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("samples must be strictly increasing in log rho")


def _boundary_tables(config: Configuration, rho_grid, n_psi: int, n_radial: int):
    """R(x, rho) for x = cos(polar angle): invert cumulative sqrt(Phi) ray
    integrals computed on a shared sigma grid (s = sigma^2)."""
    rho_max = rho_grid[-1]
    x_grid = np.linspace(-1.0, 1.0, n_psi + 2)[1:-1]   # strictly interior

    # probe the slowest-accumulating rays for an upper radius
    r_up = 4.0 * (1.0 + rho_max)
    for _ in range(64):
        done = True
        for x in (x_grid[-1], 0.0, x_grid[0]):
            sig = np.sqrt(r_up) * np.linspace(0.0, 1.0, 512)
            s = sig * sig
            g = 2.0 * sig * np.sqrt(_phi_batch(config, s * x, s * math.sqrt(1.0 - x * x),
                                               rel_tol=1e-3))
            if np.trapezoid(g, sig) < 1.2 * rho_max:
                done = False
        if done:
            break
        r_up *= 4.0
    else:
        raise TailUnresolved("could not bracket the growth region boundary")

    sig_up = math.sqrt(r_up)
    sig = np.unique(np.concatenate([
        np.linspace(0.0, sig_up, n_radial // 3),
        sig_up * np.geomspace(1e-8, 1.0, n_radial),
    ]))
    s = sig * sig

    tt = np.repeat(x_grid, sig.size) * np.tile(s, x_grid.size)
    cc = np.repeat(np.sqrt(1.0 - x_grid * x_grid), sig.size) * np.tile(s, x_grid.size)
    phi_vals = _phi_batch(config, tt, cc).reshape(x_grid.size, sig.size)
    g = 2.0 * sig[None, :] * np.sqrt(phi_vals)
    cum = np.concatenate([np.zeros((x_grid.size, 1)),
                          np.cumsum(0.5 * (g[:, 1:] + g[:, :-1]) * np.diff(sig), axis=1)],
                         axis=1)
    if cum[:, -1].min() < rho_max:
        raise TailUnresolved("boundary cumulative fell short; raise n_radial")

    tables = np.empty((len(rho_grid), x_grid.size))
    for i in range(x_grid.size):
        tables[:, i] = np.interp(rho_grid, cum[i], sig) ** 2
    return x_grid, tables


def growth_exponent(config: Configuration, rho_grid, mc_samples: int, seed: int,
                    *, n_psi: int = 320, n_radial: int = 768) -> GrowthFit:
    """Fit the exponent of W(rho) ~ rho^alpha where W integrates the
    potential over the star-shaped region {radial_distance <= rho}.

    ``mc_samples`` is the total budget, split evenly across the rho grid;
    stratum k draws from Philox(seed) jumped k times.
    """
    rho = np.unique(np.asarray([float(r) for r in rho_grid]))
    if rho.size < 2 or rho[0] <= 0:
        raise InsufficientRange("need at least two positive rho values")
    if math.log10(rho[-1] / rho[0]) < 1.0:
        raise InsufficientRange("rho grid must span at least one decade")
    _axial_check(config)

    x_grid, tables = _boundary_tables(config, rho, n_psi, n_radial)
    m = max(16, int(mc_samples) // rho.size)
    base = np.random.Philox(key=int(seed))

    samples = []
    for k, rho_k in enumerate(rho):
        rng = np.random.Generator(base.jumped(k))
        x = rng.uniform(-1.0, 1.0, m)
        u = rng.random(m)
        r_max = np.interp(x, x_grid, tables[k])
        s = r_max * np.cbrt(u)
        vals = _phi_batch(config, s * x, s * np.sqrt(1.0 - x * x))
        w = float(np.mean(vals * (4.0 * math.pi / 3.0) * r_max ** 3))
        samples.append((math.log10(rho_k), math.log10(w)))

    xs = np.array([a for a, _ in samples])
    ys = np.array([b for _, b in samples])
    xbar = xs.mean()
    sxx = float(np.sum((xs - xbar) ** 2))
    slope = float(np.sum((xs - xbar) * (ys - ys.mean())) / sxx)
    resid = ys - (ys.mean() + slope * (xs - xbar))
    dof = max(len(xs) - 2, 1)
    stderr = math.sqrt(float(np.sum(resid ** 2)) / dof / sxx)
    return GrowthFit(samples=tuple(samples), slope=slope, slope_stderr=stderr)
