"""Single point-scatterer amplitude, phase shift and cross section.

Both s-wave models are parameterized by a scattering length alpha > 0:
the hard-sphere model keeps the full Bessel ratio cot(delta), while the
delta-like model keeps only its low-energy limit. The amplitude is
built as F = 1 / (I(k,0) (i - cot delta)), which satisfies the one-body
optical theorem Im[1/F] = I(k,0) identically.
"""

from dataclasses import dataclass

import numpy as np

from .greens import green_imag_zero
from .specialfn import (bessel_i_ratio, bessel_j, bessel_y, gamma_fn,
                        sphere_surface)

HARD_SPHERE = "hardsphere"
DELTA_LIKE = "deltalike"


@dataclass(frozen=True)
class ScattererModel:
    """s-wave scatterer: kind is 'hardsphere' or 'deltalike', alpha > 0."""

    kind: str
    alpha: float

    def __post_init__(self):
        if self.kind not in (HARD_SPHERE, DELTA_LIKE):
            raise ValueError(f"unknown scatterer kind {self.kind!r}")
        if not self.alpha > 0:
            raise ValueError("scattering length alpha must be positive")


class PhaseShiftPoleError(ValueError):
    """cot(delta) diverges: J_(d-2)/2(alpha k) vanished exactly."""


def phase_shift_cot(model, d, k):
    """cot of the s-wave phase shift delta(k).

    Hard sphere: Y_nu(alpha k) / J_nu(alpha k) with nu = (d-2)/2.
    Delta-like: the alpha k -> 0 limit of the same ratio,
        -Gamma((d-2)/2) Gamma(d/2) / pi * (alpha k / 2)^(2-d)   (d != 2)
        (2/pi) (ln(alpha k / 2) + euler_gamma)                  (d = 2)
    """
    if not k > 0:
        raise ValueError("wavenumber must be positive")
    x = model.alpha * k
    if model.kind == HARD_SPHERE:
        nu = (d - 2) / 2.0
        jn = bessel_j(nu, x)
        if jn == 0.0:
            raise PhaseShiftPoleError(
                f"cot(delta) pole: J_{nu}({x}) = 0, cross section vanishes here")
        return bessel_y(nu, x) / jn
    if d == 2:
        return (2.0 / np.pi) * (np.log(x / 2.0) + np.euler_gamma)
    return -gamma_fn((d - 2) / 2.0) * gamma_fn(d / 2.0) / np.pi * (x / 2.0) ** (2 - d)


def amplitude(model, d, k):
    """Isotropic scattering amplitude F(k) = 1 / (I(k,0) (i - cot delta)).

    At a cot(delta) pole the amplitude is defined as 0 by continuity
    (sin^2 delta = 0 there).
    """
    i0 = green_imag_zero(d, k)
    try:
        cot = phase_shift_cot(model, d, k)
    except PhaseShiftPoleError:
        return 0.0j
    return 1.0 / (i0 * (1j - cot))


def s_matrix_element(model, d, k):
    """One-body S-matrix element S(k) = 1 - 2i I(k,0) F(k) = e^(2i delta)."""
    return 1.0 - 2j * green_imag_zero(d, k) * amplitude(model, d, k)


def point_cross_section(model, d, k):
    """Total cross section sigma_pt = I(k,0) |F|^2 / k of one scatterer.

    Bounded by 1/(k I(k,0)), with equality at resonance sin^2 delta = 1.
    """
    f = amplitude(model, d, k)
    return green_imag_zero(d, k) * abs(f) ** 2 / k


def cross_section_bound(d, k):
    """Universal s-wave bound 1/(k I(k,0)) on the point cross section."""
    return 1.0 / (k * green_imag_zero(d, k))


def diff_cross_section_point(model, d, k):
    """Differential cross section of one scatterer, sigma_pt / S_d, isotropic."""
    return point_cross_section(model, d, k) / sphere_surface(d)


# ---------------------------------------------------------------------------
# scattering length from a radial potential at zero energy
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareWell:
    """Attractive square well u(r) = -w^2 for r < b, zero outside."""

    w: float
    b: float

    def __post_init__(self):
        if not (self.w > 0 and self.b > 0):
            raise ValueError("square well requires w > 0 and b > 0")


@dataclass(frozen=True)
class Barrier:
    """Repulsive square barrier u(r) = +w^2 for r < b, zero outside."""

    w: float
    b: float

    def __post_init__(self):
        if not (self.w > 0 and self.b > 0):
            raise ValueError("barrier requires w > 0 and b > 0")


@dataclass(frozen=True)
class Tabulated:
    """Potential u(r) sampled on the uniform grid r_i = i b / (len(u) - 1)."""

    u: tuple
    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError("range b must be positive")
        if len(self.u) < 65:
            raise ValueError("tabulated potential needs at least 65 samples")
        object.__setattr__(self, "u", tuple(float(v) for v in self.u))

    @classmethod
    def from_callable(cls, fn, b, n=2048):
        r = np.linspace(0.0, b, n + 1)
        return cls(tuple(fn(ri) for ri in r), b)


def _alpha_from_boundary(d, b, psi, dpsi):
    """Scattering length from psi(b), psi'(b) of the zero-energy solution."""
    if dpsi == 0.0:
        raise ValueError("psi'(b) = 0: scattering length undefined")
    g = psi / (b * dpsi)
    if d == 2:
        return b * np.exp(-g)
    base = 1.0 + (d - 2) * g
    if base <= 0.0:
        raise ValueError(
            "scattering length undefined for this potential: "
            f"1 + (d-2) psi/(b psi') = {base} <= 0")
    return b * base ** (-1.0 / (d - 2))


def _series_coefficients(d, poly, m_max=300):
    """Taylor coefficients of the regular zero-energy solution in r^2.

    poly holds the even-polynomial coefficients of u(r) = sum_j poly[j] r^(2j).
    Recurrence: (2m+2)(2m+d) a_(m+1) = sum_j poly[j] a_(m-j).
    """
    a = [np.longdouble(1.0)]
    for m in range(m_max):
        s = np.longdouble(0.0)
        for j in range(min(m, len(poly) - 1) + 1):
            s += np.longdouble(poly[j]) * a[m - j]
        a.append(s / ((2 * m + 2) * (2 * m + d)))
    return a


def _series_eval(coeffs, r):
    acc = np.longdouble(0.0)
    r2 = np.longdouble(r) ** 2
    p = np.longdouble(1.0)
    for am in coeffs:
        t = am * p
        acc += t
        if abs(t) < 1e-24 * abs(acc):
            break
        p *= r2
    return acc


def _numerov_boundary(d, u, b):
    """psi(b), psi'(b) of the regular zero-energy solution, by Numerov.

    Works on y = r^((d-1)/2) psi, whose equation has no first derivative:
    y'' = [u(r) + (d-1)(d-3)/(4 r^2)] y. Near the origin y goes like
    r^((d-1)/2), which is not smooth in even dimensions, so the first
    eighth of the range is covered by the power series of psi (built from
    an even-polynomial fit of the tabulated u) and Numerov takes over
    where y is smooth. Longdouble arithmetic keeps the fifth-order
    truncation noise below the 1e-8 oracle tolerance.
    """
    n = len(u) - 1
    h = b / n
    ld = np.longdouble
    r = np.arange(n + 1, dtype=np.longdouble) * ld(h)
    i0 = max(n // 8, 4)
    # least-squares even-polynomial fit of u on [0, b/8]; exact for the
    # piecewise-constant oracle potentials
    rs = np.asarray(r[: i0 + 1], dtype=float)
    vand = np.vander(rs ** 2, 4, increasing=True)
    poly, *_ = np.linalg.lstsq(vand, np.asarray(u[: i0 + 1], dtype=float), rcond=None)
    coeffs = _series_coefficients(d, poly)
    s = ld(d - 1) / 2
    y = np.zeros(n + 1, dtype=np.longdouble)
    y[i0 - 1] = r[i0 - 1] ** s * _series_eval(coeffs, r[i0 - 1])
    y[i0] = r[i0] ** s * _series_eval(coeffs, r[i0])
    c = ld((d - 1) * (d - 3)) / 4
    f = np.empty(n + 1, dtype=np.longdouble)
    f[0] = 0.0
    f[1:] = np.asarray(u[1:], dtype=np.longdouble) + c / r[1:] ** 2
    h2 = ld(h) * ld(h)
    for i in range(i0, n):
        y[i + 1] = (2 * y[i] * (1 + 5 * h2 * f[i] / 12)
                    - y[i - 1] * (1 - h2 * f[i - 1] / 12)) / (1 - h2 * f[i + 1] / 12)
    yb = y[n]
    dyb = (25 * y[n] - 48 * y[n - 1] + 36 * y[n - 2]
           - 16 * y[n - 3] + 3 * y[n - 4]) / (12 * ld(h))
    bl = ld(b)
    psi = yb / bl ** s
    dpsi = (dyb - s * yb / bl) / bl ** s
    return float(psi), float(dpsi)


def scattering_length(pot, d):
    """Scattering length of a finite-range radial potential at zero energy.

    SquareWell and Barrier use the closed Bessel forms; Tabulated uses
    Numerov integration of the radial zero-energy equation. Raises
    ValueError when the defining expression is non-positive for d != 2
    (no real scattering length).
    """
    if d < 1 or d != int(d):
        raise ValueError("dimension must be a positive integer")
    nu = (d - 2) / 2.0
    if isinstance(pot, SquareWell):
        t = pot.w * pot.b
        if d == 2:
            return pot.b * np.exp(bessel_j(0, t) / (t * bessel_j(1, t)))
        base = 1.0 - (d - 2) * bessel_j(nu, t) / (t * bessel_j(d / 2.0, t))
        if base <= 0.0:
            raise ValueError("scattering length undefined for this well depth")
        return pot.b * base ** (-1.0 / (d - 2))
    if isinstance(pot, Barrier):
        # scaled Bessel ratio: the plain I_nu overflow for wb beyond ~700
        t = pot.w * pot.b
        if d == 2:
            return pot.b * np.exp(-bessel_i_ratio(0, 1, t) / t)
        base = 1.0 + (d - 2) * bessel_i_ratio(nu, d / 2.0, t) / t
        return pot.b * base ** (-1.0 / (d - 2))
    if isinstance(pot, Tabulated):
        psi, dpsi = _numerov_boundary(d, pot.u, pot.b)
        return _alpha_from_boundary(d, pot.b, psi, dpsi)
    raise TypeError(f"unsupported potential type {type(pot).__name__}")
