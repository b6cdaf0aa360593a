import cmath
import math

import numpy as np
import pytest

from lorentzgas import medium
from lorentzgas import pointscatter as ps
from lorentzgas import regimes as rg
from lorentzgas import specialfn as sf

HS_SMALL = ps.ScattererModel(ps.HARD_SPHERE, 1e-3)
HS_BIG = ps.ScattererModel(ps.HARD_SPHERE, 0.1)


def test_mean_free_path():
    sig = ps.point_cross_section(HS_BIG, 2, 5.0)
    assert rg.mean_free_path(HS_BIG, 2, 5.0) == pytest.approx(1.0 / sig,
                                                              rel=1e-14)


def test_ballistic_params_and_advisory():
    p = rg.BallisticParams.for_gas(HS_SMALL, 2, 10.0, 10)
    assert p.radius == pytest.approx(medium.gas_radius(2, 10), rel=1e-14)
    assert p.n_sigma_r == pytest.approx(0.07112870894101424, rel=1e-12)
    assert p.ballistic_advisory is False
    dense = rg.BallisticParams.for_gas(HS_BIG, 2, 5.0, 1000)
    assert dense.n_sigma_r == pytest.approx(11.657542298327213, rel=1e-12)
    assert dense.ballistic_advisory is True


def test_pair_factor_normalization_and_bound():
    for d in (2, 3, 4):
        assert rg.born_pair_factor(d, 3.0, 2.0, 1.0) == pytest.approx(1.0,
                                                                      rel=1e-14)
        cos = np.cos(np.linspace(0.0, math.pi, 200))
        c = rg.born_pair_factor(d, 3.0, 2.0, cos)
        assert (c <= 1.0 + 1e-12).all()
        assert (c >= 0.0).all()


def test_pair_factor_first_zero():
    # c vanishes where q R hits the first zero of J_{d/2}
    for d in (2, 3):
        k, radius = 10.0, 2.0
        j = sf.bessel_first_zero(d / 2.0)
        cos_angle = 1.0 - (j / (k * radius)) ** 2 / 2.0   # exact qR = j
        assert rg.born_pair_factor(d, k, radius, cos_angle) < 1e-25


def test_forward_peak_angle():
    p = rg.BallisticParams.for_gas(HS_SMALL, 2, 10.0, 10)
    theta0 = rg.born_forward_peak_angle(2, 10.0, p.radius)
    assert math.degrees(theta0) == pytest.approx(12.305230249416795, rel=1e-12)
    assert math.degrees(theta0) == pytest.approx(12.3, abs=0.01)
    # the pair factor is tiny at the peak edge
    assert rg.born_pair_factor(2, 10.0, p.radius, math.cos(theta0)) < 1e-4


def test_born_differential_shape():
    p = rg.BallisticParams.for_gas(HS_SMALL, 2, 10.0, 10)
    n, sig = 10, p.sigma_pt
    s2 = sf.sphere_surface(2)
    assert rg.born_diff_cross_section(p, 0.0) == pytest.approx(
        n * (1 + (n - 1)) * sig / s2, rel=1e-13)
    # far from forward the incoherent baseline N sigma_pt / S_d remains
    wide = rg.born_diff_cross_section(p, np.linspace(2.0, math.pi, 50))
    assert np.allclose(wide, n * sig / s2, rtol=0.05)
    single = rg.BallisticParams.for_gas(HS_SMALL, 2, 10.0, 1)
    theta = np.linspace(0.0, math.pi, 9)
    assert np.allclose(rg.born_diff_cross_section(single, theta),
                       sig / s2, rtol=1e-13)


def test_total_factor_routes_agree():
    # Gauss-Legendre quadrature against the hypergeometric series for
    # small kR and against the closed asymptote for large kR
    for d in (2, 3, 4, 5):
        for kr in (0.25, 1.0, 2.0):
            quad = rg.born_total_factor(d, kr)
            series = rg.born_total_factor_series(d, kr)
            assert abs(quad - series) <= 1e-8 * series
        asym = rg.born_total_factor_asymptote(d, 100.0)
        assert rg.born_total_factor(d, 100.0) == pytest.approx(asym, rel=0.01)


def test_total_factor_frozen_values():
    assert rg.born_total_factor(2, 1.0) == pytest.approx(0.6295049670849617,
                                                         rel=1e-12)
    assert rg.born_total_factor(3, 2.0) == pytest.approx(0.2673903987702992,
                                                         rel=1e-12)


def test_total_factor_small_kr_limit():
    for d in (2, 3):
        assert rg.born_total_factor(d, 1e-9) == pytest.approx(1.0, abs=1e-12)


def test_born_total_cross_section_limits():
    # kR -> 0: coherent N^2 sigma_pt; the additive part is N sigma_pt always
    tiny_k = 1e-9
    p = rg.BallisticParams.for_gas(HS_SMALL, 2, tiny_k, 10)
    full, additive = rg.born_total_cross_section(p)
    assert additive == pytest.approx(10 * p.sigma_pt, rel=1e-14)
    assert full == pytest.approx(100 * p.sigma_pt, rel=1e-6)
    # large kR: the pair term dies off and full -> additive
    p = rg.BallisticParams.for_gas(HS_SMALL, 2, 1000.0, 10)
    full, additive = rg.born_total_cross_section(p)
    assert full == pytest.approx(additive, rel=0.01)
    assert full > additive


def test_airy_amplitude_forward_values():
    for d, vd1 in ((2, 2.0), (3, math.pi)):
        k, radius = 5.0, 3.0
        t0 = rg.airy_amplitude(d, k, radius, 0.0)
        assert t0 == pytest.approx(-2j * k * vd1 * radius ** (d - 1), rel=1e-14)


def test_airy_pattern_zero():
    d, k, radius = 2, 5.0, 17.841241161527712
    theta0 = rg.airy_first_zero(d, k, radius)
    assert theta0 == pytest.approx(math.pi / (k * radius), rel=1e-12)
    assert math.degrees(theta0) == pytest.approx(2.0177968379, rel=1e-9)
    assert rg.airy_diff_cross_section(d, k, radius, theta0) < 1e-20 \
        * rg.airy_diff_cross_section(d, k, radius, 0.0)
    # d=3 zero sits at the first zero of J_1
    assert rg.airy_first_zero(3, k, radius) == pytest.approx(
        3.8317059702075125 / (k * radius), rel=1e-12)


def test_airy_differential_consistent_with_amplitude():
    from lorentzgas import greens
    d, k, radius = 2, 5.0, 10.0
    theta = np.linspace(0.0, 0.2, 41)
    i0 = greens.green_imag_zero(d, k)
    t = rg.airy_amplitude(d, k, radius, theta)
    want = i0 / (k * sf.sphere_surface(d)) * np.abs(t) ** 2
    got = rg.airy_diff_cross_section(d, k, radius, theta)
    assert np.allclose(got, want, rtol=1e-12)


def test_airy_exact_sin_variant():
    d, k, radius = 3, 5.0, 10.0
    small = 1e-3
    a = rg.airy_amplitude(d, k, radius, small)
    b = rg.airy_amplitude(d, k, radius, small, exact_sin=True)
    assert a == pytest.approx(b, rel=1e-5)
    # at larger angles the two versions separate
    a = rg.airy_amplitude(d, k, radius, 0.8)
    b = rg.airy_amplitude(d, k, radius, 0.8, exact_sin=True)
    assert abs(a - b) > 1e-3 * abs(a)


def test_extinction_cross_section():
    radius = 17.841241161527712
    assert rg.extinction_cross_section(2, radius) == pytest.approx(4 * radius,
                                                                   rel=1e-14)
    assert rg.extinction_cross_section(3, radius) == pytest.approx(
        2 * math.pi * radius ** 2, rel=1e-14)
    # optical theorem applied to the forward diffraction amplitude
    for d in (2, 3):
        k = 5.0
        t0 = rg.airy_amplitude(d, k, radius, 0.0)
        assert -t0.imag / k == pytest.approx(
            rg.extinction_cross_section(d, radius), rel=1e-14)


def test_angular_scales():
    d, k, n = 2, 5.0, 1000
    radius = medium.gas_radius(d, n)
    mfp = rg.mean_free_path(HS_BIG, d, k)
    scales = rg.angular_scales(d, k, radius, mfp)
    assert set(scales) == {"forward_zero", "oscillation", "backscatter"}
    assert scales["forward_zero"] == pytest.approx(
        rg.born_forward_peak_angle(d, k, radius), rel=1e-14)
    assert scales["oscillation"] == pytest.approx(math.pi / (k * radius),
                                                  rel=1e-14)
    # the oscillation period is finer than the forward peak whenever
    # j_{d/2} > pi, which holds from d = 2 up
    assert scales["oscillation"] < scales["forward_zero"]
    assert math.degrees(scales["backscatter"]) == pytest.approx(
        7.487460845825971, rel=1e-9)
    assert math.degrees(scales["backscatter"]) == pytest.approx(7.5, abs=0.1)


# ---------------------------------------------------------------------------
# one-dimensional observables
# ---------------------------------------------------------------------------


def test_one_d_landmark_cases():
    k = 1.3
    # full reflection: A_T = -1, A_R = 0 -> sigma = 4
    out = rg.one_d_observables(2j * k * (-1.0 - 1.0), 0.0, k)
    assert out.a_t == pytest.approx(-1.0, abs=1e-15)
    assert out.sigma == pytest.approx(4.0, rel=1e-14)
    assert out.sigma_alt == pytest.approx(4.0, rel=1e-14)
    assert out.conservative
    # transparent: A_T = 1 -> sigma = 0
    out = rg.one_d_observables(0.0, 0.0, k)
    assert out.sigma == pytest.approx(0.0, abs=1e-15)
    # opaque: A_T = 0, |A_R| = 1 -> sigma = 2
    out = rg.one_d_observables(-2j * k, 2j * k * 1j, k)
    assert abs(out.a_r) == pytest.approx(1.0, rel=1e-15)
    assert out.sigma == pytest.approx(2.0, rel=1e-14)


def test_one_d_conservative_pairs():
    # any (A_T, A_R) on the flux sphere |A_T|^2 + |A_R|^2 = 1 makes the
    # two cross-section formulas coincide
    rng = np.random.default_rng(3)
    k = 0.7
    for _ in range(50):
        beta, g1, g2 = rng.uniform(0.0, 2 * math.pi, 3)
        a_t = math.cos(beta) * cmath.exp(1j * g1)
        a_r = math.sin(beta) * cmath.exp(1j * g2)
        out = rg.one_d_observables(2j * k * (a_t - 1.0), 2j * k * a_r, k)
        assert out.flux == pytest.approx(1.0, rel=1e-14)
        assert out.conservative
        assert out.sigma == pytest.approx(out.sigma_alt, abs=1e-12)
        assert 0.0 <= out.sigma <= rg.one_d_cross_section_bound() + 1e-12


def test_one_d_nonconservative_flagged():
    k = 1.0
    out = rg.one_d_observables(2j * k * (0.5 - 1.0), 0.0, k)   # flux 0.25
    assert not out.conservative
    assert out.flux == pytest.approx(0.25, rel=1e-14)


def test_one_d_from_full_solver():
    # the exact N-scatterer chain must come out conservative with matching
    # cross-section routes
    from lorentzgas import foldylax as fl
    dl = ps.ScattererModel(ps.DELTA_LIKE, 0.1)
    k = 0.9
    directions = np.array([[1.0], [-1.0]])
    for n in (1, 2, 5):
        cfg = medium.sample_configuration(medium.GasSpec(1, n), seed=50 + n)
        sol = fl.solve(dl, 1, k, cfg)
        t_plus, t_minus = fl.scattering_amplitude(sol, directions)
        out = rg.one_d_observables(t_plus, t_minus, k)
        assert out.conservative
        assert out.flux == pytest.approx(1.0, rel=1e-12)
        assert out.sigma == pytest.approx(
            fl.total_cross_section_optical(sol), rel=1e-10)
        assert out.sigma <= rg.one_d_cross_section_bound() + 1e-12
