"""Kernel closed forms against independent oracles (mpmath, scipy)."""

import math

import mpmath
import numpy as np
import pytest

from rda.kernels import (
    DragParams,
    GaussKernelParams,
    conv_cross_velocity,
    conv_mix,
    conv_same_velocity,
    drag_integral,
    drag_profile,
    gauss_integral,
    halfline_gauss_integral,
    heat_kernel,
    linear_envelope_bound,
    quartic_tail_integral,
    verify_identity_suite,
)

IDENTITY_NAMES = {
    "gauss", "conv_same_velocity", "conv_mix",
    "conv_cross_velocity", "halfline_gauss", "quartic_tail",
}


def test_identity_suite_passes_strict():
    report = verify_identity_suite()
    assert set(report.max_abs_error) == IDENTITY_NAMES
    for name in IDENTITY_NAMES:
        assert report.cases[name] >= 20
    assert report.passed(1e-8)
    name, worst = report.worst()
    assert worst <= 1e-10, (name, worst)


def test_heat_kernel_unit_mass():
    p = GaussKernelParams(d=0.7, c=-2.0, t=3.0)
    x = np.linspace(-80, 80, 20001)
    mass = np.trapezoid(heat_kernel(x, p), x)
    assert mass == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("a,b,c", [(1.0, 0.0, 0.0), (0.5, 1.3, -0.2),
                                   (3.0, -2.0, 1.0)])
def test_gauss_integral_vs_mpmath(a, b, c):
    ref = float(mpmath.quad(lambda y: mpmath.exp(-a * y * y + b * y + c),
                            [-mpmath.inf, mpmath.inf]))
    assert gauss_integral(a, b, c) == pytest.approx(ref, rel=1e-12)


def test_linear_envelope_is_upper_bound():
    # Exact propagation of delta e^{-x^2/M} keeps a Gaussian with variance
    # M + 4 d t; the envelope freezes the shape at M(1+t), which dominates
    # exactly when M >= 4d.
    M, d, c, delta, t = 16.0, 1.0, 2.0, 1e-2, 7.0
    x = np.linspace(-60, 60, 2001)
    exact = delta * math.sqrt(M / (M + 4 * d * t)) * np.exp(
        -((x + c * t) ** 2) / (M + 4 * d * t))
    bound = linear_envelope_bound(x, t, M, d, c, delta)
    assert np.all(bound >= exact - 1e-15)


def test_linear_envelope_equality_at_matched_width():
    M, d, c, delta, t = 4.0, 1.0, 0.0, 1.0, 2.5
    x = np.linspace(-30, 30, 501)
    exact = delta * math.sqrt(M / (M + 4 * d * t)) * np.exp(
        -(x ** 2) / (M + 4 * d * t))
    bound = linear_envelope_bound(x, t, M, d, c, delta)
    assert np.max(np.abs(bound - exact)) < 1e-14


def test_linear_envelope_requires_wide_mass():
    with pytest.raises(ValueError):
        linear_envelope_bound(np.array([0.0]), 1.0, M=2.0, d=1.0, c=0.0,
                              delta=1.0)


def test_drag_integral_constant_integrand():
    # With equal velocities and no extra decay factors the integrand is
    # constant in s, so the integral is t * e^{...} / sqrt(1+t).
    p = DragParams(c_self=1.0, c_other=1.0, M=8.0, j=0, power_decay=0.0)
    t = 3.0
    assert drag_integral(-t * 1.0, t, p) == pytest.approx(t / math.sqrt(1 + t),
                                                          rel=1e-9)


def test_drag_integral_singular_vs_mpmath():
    p = DragParams(c_self=0.0, c_other=2.0, M=8.0, j=1, power_decay=0.5)
    x, t = 0.5, 2.0
    ref = float(mpmath.quad(
        lambda s: mpmath.exp(-((x + t * p.c_self
                                + s * (p.c_other - p.c_self)) ** 2)
                             / (p.M * (1 + t)))
        / (mpmath.sqrt(1 + t) * (1 + s) ** p.power_decay * mpmath.sqrt(t - s)),
        [0, t]))
    assert drag_integral(x, t, p) == pytest.approx(ref, abs=1e-8)


def test_drag_profile_matches_pointwise():
    p = DragParams(c_self=1.0, c_other=0.0, M=4.0, j=0, power_decay=1.5)
    x = np.linspace(-10, 5, 7)
    profile = drag_profile(x, 4.0, p)
    for xi, vi in zip(x, profile):
        assert vi == pytest.approx(drag_integral(float(xi), 4.0, p), abs=1e-7)


@pytest.mark.parametrize("a,r", [(0.5, 0.0), (1.0, 2.0), (4.0, 10.0)])
def test_halfline_gauss_vs_mpmath(a, r):
    ref = float(mpmath.quad(
        lambda s: mpmath.exp(-a * (s - r) ** 2 / (1 + s)) / mpmath.sqrt(1 + s),
        [r, r + 200 / math.sqrt(a)]))
    assert halfline_gauss_integral(a, r) == pytest.approx(ref, rel=1e-8)


@pytest.mark.parametrize("a", [0.3, 1.0, 5.0])
def test_quartic_tail_vs_mpmath(a):
    # z = w^2 removes the endpoint singularity before handing to mpmath.
    ref = float(mpmath.quad(
        lambda w: 2 * mpmath.exp(-a * w ** 4), [0, mpmath.inf]))
    assert quartic_tail_integral(a) == pytest.approx(ref, rel=1e-10)


def test_conv_closed_forms_spot_check_vs_mpmath():
    x, t, s, c1, c2, M, d1 = 1.0, 5.0, 2.0, 0.0, 3.0, 8.0, 1.0
    a_ts = 1.0 / (M * (t - s))
    a_s = 1.0 / (M * (1 + s))

    same = float(mpmath.quad(
        lambda y: mpmath.exp(-a_ts * (x - y + c1 * (t - s)) ** 2
                             - a_s * (y + c1 * s) ** 2),
        [-mpmath.inf, mpmath.inf])) / (
            math.sqrt(4 * math.pi * d1 * (t - s)) * (1 + s) ** 2)
    assert conv_same_velocity(x, t, s, c1, M, d1) == pytest.approx(same, rel=1e-9)

    cross = float(mpmath.quad(
        lambda y: mpmath.exp(-a_ts * (x - y + c1 * (t - s)) ** 2
                             - a_s * (y + c2 * s) ** 2),
        [-mpmath.inf, mpmath.inf]))
    assert conv_cross_velocity(x, t, s, c1, c2, M) == pytest.approx(cross, rel=1e-9)

    mix = float(mpmath.quad(
        lambda y: mpmath.exp(-2 * a_ts * (x - y + c1 * (t - s)) ** 2
                             - a_s * (y + c1 * s) ** 2
                             - a_s * (y + c2 * s) ** 2),
        [-mpmath.inf, mpmath.inf])) / (
            math.sqrt(4 * math.pi * d1 * (t - s)) * (1 + s))
    assert conv_mix(x, t, s, c1, c2, M, d1) == pytest.approx(mix, rel=1e-9)
