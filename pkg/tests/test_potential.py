"""Potential, flow integrals, and radial distance."""

import math
import random

import mpmath
import pytest
from hypothesis import assume, given, settings, strategies as st

from ainfty.config import finite_list, power_law
from ainfty.errors import InsufficientRange, RayHitsCenter, SegmentHitsCenter, SingularPoint
from ainfty.geometry import ImHPoint
from ainfty.potential import (
    CertifiedValue, flow_log_g, flow_log_g_sum, growth_exponent, phi,
    radial_distance, volume_density,
)
from ainfty.quotient import same_class

SINGLE = finite_list([(0.0, 0j)])
PL2 = power_law(2.0, truncation=512)


def test_phi_single_center():
    v = phi(SINGLE, ImHPoint(1.0, 0j), 1e-12)
    assert abs(v.value - 0.25) <= 1e-15
    v = phi(SINGLE, ImHPoint(3.0, 4 + 0j), 1e-12)
    assert abs(v.value - 0.05) <= 1e-15


def test_phi_power_law_origin():
    # independent oracle: Euler-Maclaurin tail at high precision
    with mpmath.workdps(40):
        oracle = float(mpmath.nsum(lambda n: 1 / n**2, [1, mpmath.inf]) / 4)
    v = phi(PL2, ImHPoint(0.0, 0j), 1e-10)
    assert abs(v.value - oracle) <= 1e-10
    assert v.contains(oracle)
    assert abs(oracle - math.pi**2 / 24) <= 1e-15


def test_phi_certified_bound_off_origin():
    with mpmath.workdps(40):
        oracle = float(mpmath.nsum(
            lambda n: 1 / mpmath.sqrt((2.5 + n**2) ** 2 + 2.25), [1, mpmath.inf]) / 4)
    v = phi(PL2, ImHPoint(2.5, 1.5j), 1e-11)
    assert v.error_bound <= 1e-11
    assert v.contains(oracle)


def test_phi_singular_point():
    with pytest.raises(SingularPoint):
        phi(SINGLE, ImHPoint(0.0, 0j))
    with pytest.raises(SingularPoint):
        phi(PL2, ImHPoint(-4.0, 0j))


def test_volume_density_alias():
    a = phi(PL2, ImHPoint(0.5, 1j), 1e-10)
    b = volume_density(PL2, ImHPoint(0.5, 1j), 1e-10)
    assert a == b


def test_flow_zero_segment():
    assert flow_log_g(PL2, 0j, 0.5, 0.5) == CertifiedValue(0.0, 0.0)
    assert flow_log_g_sum(PL2, -2.5, -2.5, 0j).value == 0.0


def test_flow_single_center_closed_form():
    oracle = math.asinh(1.0) / 4.0
    v = flow_log_g(SINGLE, 1 + 0j, 0.0, 1.0, eps=1e-11)
    assert abs(v.value - oracle) <= 1e-10
    s = flow_log_g_sum(SINGLE, 1.0, 0.0, 1 + 0j, eps=1e-12)
    assert abs(s.value - oracle) <= 1e-12
    assert abs(oracle - math.log(1 + math.sqrt(2)) / 4) < 1e-15


def test_flow_additivity():
    a = flow_log_g(PL2, 0j, -0.5, 0.0, eps=1e-10).value
    b = flow_log_g(PL2, 0j, 0.0, 0.5, eps=1e-10).value
    c = flow_log_g(PL2, 0j, -0.5, 0.5, eps=1e-10).value
    assert abs(a + b - c) <= 1e-9


def test_flow_segment_hits_center():
    with pytest.raises(SegmentHitsCenter):
        flow_log_g(PL2, 0j, -0.5, -1.5)
    with pytest.raises(SegmentHitsCenter):
        flow_log_g_sum(PL2, -1.0, -0.5, 0j)   # endpoint on the center


def test_flow_matches_sum_in_gap():
    v1 = flow_log_g(PL2, 0j, -2.5, -3.5, eps=1e-9)
    v2 = flow_log_g_sum(PL2, -3.5, -2.5, 0j, eps=1e-10)
    assert abs(v1.value - v2.value) <= max(1e-8, v1.error_bound + v2.error_bound)


def test_flow_sum_antisymmetric():
    a = flow_log_g_sum(PL2, -3.5, -2.5, 0j).value
    b = flow_log_g_sum(PL2, -2.5, -3.5, 0j).value
    assert abs(a + b) <= 1e-12


def test_flow_derivative_is_phi():
    rng = random.Random(5)
    h = 1e-4
    for _ in range(20):
        n = rng.randint(1, 3)
        gap = rng.choice([(-(k + 1) ** 2 + 0.3, -k * k - 0.3) for k in range(1, 4)])
        eta = rng.uniform(gap[0] + 0.2, gap[1] - 0.2)
        zeta = rng.uniform(gap[0] + 0.2, gap[1] - 0.2)
        fp = flow_log_g_sum(PL2, eta + h, zeta, 0j, eps=1e-12).value
        fm = flow_log_g_sum(PL2, eta - h, zeta, 0j, eps=1e-12).value
        mid = phi(PL2, ImHPoint(eta, 0j), 1e-12).value
        assert abs((fp - fm) / (2 * h) - mid) <= 1e-6 * mid


def test_flow_iff_same_class():
    cases = [(-2.5, -3.9, 0j, True), (-2.5, -0.5, 0j, False), (2.0, 55.0, 1j, True)]
    for a, b, z, ok in cases:
        assert same_class(PL2, ImHPoint(a, z), ImHPoint(b, z)) == ok
        if ok:
            flow_log_g(PL2, z, a, b, eps=1e-6)
        else:
            with pytest.raises(SegmentHitsCenter):
                flow_log_g(PL2, z, a, b, eps=1e-6)


@settings(max_examples=30, deadline=None)
@given(st.floats(-30, 30, allow_nan=False), st.floats(-10, 10, allow_nan=False),
       st.floats(-10, 10, allow_nan=False))
def test_phi_positive(t, zr, zi):
    p = ImHPoint(t, complex(zr, zi))
    assume(PL2.nearest_center_distance(p) > 1e-3)
    assert phi(PL2, p, 1e-8).value > 0


def test_radial_distance_zero():
    assert radial_distance(PL2, (0.0, 1.0, 0.0), 0.0) == 0.0


def test_radial_distance_single_center_sqrt_law():
    for r in (1.0, 9.0, 100.0):
        d = radial_distance(SINGLE, (0.3, 0.5, -0.8), r)
        assert abs(d - math.sqrt(r)) <= 1e-9 * (1 + math.sqrt(r))


def test_radial_distance_monotone():
    d1 = radial_distance(PL2, (0.0, 1.0, 0.0), 10.0)
    d2 = radial_distance(PL2, (0.0, 1.0, 0.0), 100.0)
    assert 0 < d1 < d2


def test_radial_distance_ray_hits_center():
    with pytest.raises(RayHitsCenter):
        radial_distance(PL2, (-1.0, 0.0, 0.0), 10.0)


def test_growth_insufficient_range():
    with pytest.raises(InsufficientRange):
        growth_exponent(SINGLE, [100.0, 500.0], 1000, 1)


def test_growth_single_center_smoke():
    rho = [10.0 * 10 ** (k / 4) for k in range(9)]   # two decades
    fit = growth_exponent(SINGLE, rho, 20_000, seed=7, n_psi=48, n_radial=256)
    assert abs(fit.slope - 4.0) <= 0.1
    fit2 = growth_exponent(SINGLE, rho, 20_000, seed=7, n_psi=48, n_radial=256)
    assert fit2 == fit     # bit-reproducible for a fixed seed
