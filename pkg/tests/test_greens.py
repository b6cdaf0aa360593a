import math

import numpy as np
import pytest

from lorentzgas import greens
from lorentzgas import specialfn as sf


def test_closed_forms():
    k, r = 1.7, 2.3
    assert greens.green_plus(1, k, r) == pytest.approx(
        np.exp(1j * k * r) / (2j * k), rel=1e-14)
    h0 = sf.bessel_j(0.0, k * r) + 1j * sf.bessel_y(0.0, k * r)
    assert greens.green_plus(2, k, r) == pytest.approx(-0.25j * h0, rel=1e-13)
    assert greens.green_plus(3, k, r) == pytest.approx(
        -np.exp(1j * k * r) / (4.0 * math.pi * r), rel=1e-12)


def test_regularized_part_closed_forms():
    k = 0.9
    r = np.linspace(0.0, 8.0, 33)
    assert np.allclose(greens.green_imag_reg(1, k, r), np.cos(k * r) / (2 * k),
                       rtol=1e-13, atol=0)
    got2 = greens.green_imag_reg(2, k, r)
    want2 = np.array([sf.bessel_j(0.0, k * ri) / 4.0 for ri in r])
    assert np.allclose(got2, want2, rtol=0, atol=1e-14)
    rp = r[1:]
    assert np.allclose(greens.green_imag_reg(3, k, rp),
                       np.sin(k * rp) / (4 * math.pi * rp), rtol=1e-12, atol=0)
    assert greens.green_imag_reg(3, k, 0.0) == pytest.approx(k / (4 * math.pi),
                                                             rel=1e-14)


def test_coincidence_values():
    # I(k, 0) = (pi/2) S_d (2 pi)^-d k^(d-2), positive in every dimension
    for d in range(1, 7):
        for k in (0.05, 1.0, 40.0):
            want = (math.pi / 2) * sf.sphere_surface(d) * (2 * math.pi) ** -d \
                * k ** (d - 2)
            assert greens.green_imag_zero(d, k) == pytest.approx(want, rel=1e-13)
            assert greens.green_imag_zero(d, k) > 0
            assert greens.green_imag_reg(d, k, 0.0) == pytest.approx(want, rel=1e-12)
    # d=2 value is k independent
    assert greens.green_imag_zero(2, 123.4) == pytest.approx(0.25, rel=1e-15)


def test_decomposition_identity():
    # G+ = P - iI must hold in every dimension, d=1 included
    rng = np.random.default_rng(5)
    for d in range(1, 7):
        for _ in range(20):
            k = float(rng.uniform(0.1, 20.0))
            r = float(rng.uniform(0.05, 10.0))
            g = greens.green_plus(d, k, r)
            p = greens.green_real(d, k, r)
            i = greens.green_imag_reg(d, k, r)
            assert abs(g - (p - 1j * i)) < 1e-13 * abs(g)


def test_series_branch_matches_bessel_form():
    # the small-kr series takes over below kr = 1e-3; check it against the
    # explicit (1/4)(k/2 pi r)^nu J_nu(kr) form evaluated at the same point
    k = 1.0
    for r in (5e-4, 9.99e-4):
        assert greens.green_imag_reg(1, k, r) == pytest.approx(
            math.cos(k * r) / (2 * k), rel=1e-13)
        for d in range(2, 7):
            nu = (d - 2) / 2.0
            want = 0.25 * (k / (2 * math.pi * r)) ** nu * sf.bessel_j(nu, k * r)
            assert greens.green_imag_reg(d, k, r) == pytest.approx(want, rel=1e-12)


def test_even_in_r():
    for d in (1, 2, 3, 5):
        a = greens.green_imag_reg(d, 2.0, 1.3)
        b = greens.green_imag_reg(d, 2.0, -1.3)
        assert a == b


def test_far_field_flux():
    # |G+|^2 k S_d r^(d-1) -> I(k, 0) as kr -> inf
    k = 1.0
    r = 1e3
    for d in range(1, 7):
        flux = abs(greens.green_plus(d, k, r)) ** 2 * k * sf.sphere_surface(d) \
            * r ** (d - 1)
        assert flux == pytest.approx(greens.green_imag_zero(d, k), rel=1e-3)


def test_domain_errors():
    for d in (2, 3, 4):
        with pytest.raises(ValueError):
            greens.green_real(d, 1.0, 0.0)
        with pytest.raises(ValueError):
            greens.green_plus(d, 1.0, 0.0)
    # d=1 stays finite at the origin
    assert greens.green_plus(1, 2.0, 0.0) == pytest.approx(1.0 / (4j), rel=1e-15)
    assert greens.green_real(1, 2.0, 0.0) == 0.0
    with pytest.raises(ValueError):
        greens.green_imag_reg(0, 1.0, 1.0)
    with pytest.raises(ValueError):
        greens.green_imag_reg(3, 0.0, 1.0)


def test_plane_wave_sphere_integral():
    # integral of e^{ik.r} over the unit sphere directions, as a function
    # of z = |k||r|: S_d 0F1(d/2; -z^2/4)
    for d in range(2, 6):
        assert greens.plane_wave_sphere_integral(d, 0.0) == pytest.approx(
            sf.sphere_surface(d), rel=1e-14)
    z = np.linspace(0.1, 12.0, 40)
    got = np.array([greens.plane_wave_sphere_integral(3, zi) for zi in z])
    assert np.allclose(got, 4 * math.pi * np.sin(z) / z, rtol=1e-12, atol=1e-13)
    # zeros: sinc zero at z = pi for d=3, J0 zero for d=2
    assert abs(greens.plane_wave_sphere_integral(3, math.pi)) < 1e-13
    assert abs(greens.plane_wave_sphere_integral(2, 2.4048255576957724)) < 1e-13
    # even in z
    assert greens.plane_wave_sphere_integral(2, 1.5) == pytest.approx(
        greens.plane_wave_sphere_integral(2, -1.5), rel=1e-15)
    with pytest.raises(ValueError):
        greens.plane_wave_sphere_integral(1, 1.0)
