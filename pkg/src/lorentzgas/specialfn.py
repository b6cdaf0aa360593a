"""Real-argument special functions used across the scattering modules.

Bessel-family evaluation is delegated to scipy.special, which already
implements the series/asymptotic split with the accuracy this package
needs (relative error well below 1e-12 for the orders that appear here,
nu between -1/2 and about 6). The hypergeometric helpers are evaluated
by direct series only where that is numerically safe; outside that range
they are rerouted through Bessel identities.
"""

import functools

import numpy as np
from scipy import special as _sp

_EULER_GAMMA = np.euler_gamma


def bessel_j(nu, z):
    """Bessel function of the first kind J_nu(z) for real z >= 0."""
    return _sp.jv(nu, z)


def bessel_y(nu, z):
    """Bessel function of the second kind Y_nu(z).

    Args:
        nu: real order.
        z: real argument, strictly positive (Y diverges at 0).
    """
    z = np.asarray(z, dtype=float)
    if np.any(z <= 0.0):
        raise ValueError("bessel_y requires z > 0")
    return _sp.yv(nu, z)


def bessel_i(nu, z):
    """Modified Bessel function of the first kind I_nu(z)."""
    return _sp.iv(nu, z)


def bessel_i_ratio(nu, mu, z):
    """I_nu(z) / I_mu(z) through the scaled form, safe for large z."""
    return _sp.ive(nu, z) / _sp.ive(mu, z)


def hankel_plus(nu, z):
    """Outgoing Hankel function H+_nu = J_nu + i Y_nu, z > 0."""
    return bessel_j(nu, z) + 1j * bessel_y(nu, z)


def bessel_first_zero(nu):
    """First positive zero j_nu of J_nu, by bracketing plus root refinement.

    J_nu is positive on (0, j_nu) for nu >= 0, so scanning outward from
    nu + 0.1 until the sign flips always brackets the first zero.
    """
    if nu < 0:
        raise ValueError("bessel_first_zero requires nu >= 0")
    lo = nu + 0.1
    step = 0.5
    hi = lo + step
    while _sp.jv(nu, hi) > 0.0:
        lo = hi
        hi += step
    from scipy.optimize import brentq

    return brentq(lambda z: _sp.jv(nu, z), lo, hi, xtol=1e-14, rtol=8.9e-16)


def hyp0f1(a, z):
    """Confluent limit function 0F1(a; z).

    Direct series for |z| <= 16 (alternating-series cancellation is below
    1e-12 there); larger arguments are rerouted through the identity
    0F1(a; -x^2/4) = Gamma(a) (x/2)^(1-a) J_(a-1)(x) and its modified
    counterpart for positive z.
    """
    if a <= 0 and a == int(a):
        raise ValueError("hyp0f1 pole: a is a non-positive integer")
    z = np.asarray(z, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    small = np.abs(z) <= 16.0
    if np.any(small):
        zs = z[small]
        term = np.ones_like(zs)
        acc = np.ones_like(zs)
        for m in range(1, 200):
            term = term * zs / (m * (a + m - 1.0))
            acc += term
            if np.all(np.abs(term) <= 1e-17 * np.abs(acc)):
                break
        out[small] = acc
    if np.any(~small):
        zl = z[~small]
        x = 2.0 * np.sqrt(np.abs(zl))
        neg = zl < 0
        val = np.empty_like(zl)
        if np.any(neg):
            val[neg] = _sp.gamma(a) * (x[neg] / 2.0) ** (1.0 - a) * _sp.jv(a - 1.0, x[neg])
        if np.any(~neg):
            val[~neg] = _sp.gamma(a) * (x[~neg] / 2.0) ** (1.0 - a) * _sp.iv(a - 1.0, x[~neg])
        out[~small] = val
    return out[0] if scalar else out


def hyp2f3(a1, a2, b1, b2, b3, z, max_terms=500):
    """Generalized hypergeometric 2F3 by direct series.

    Intended for |z| <= 25 cross-checks only; the alternating series loses
    all precision in double arithmetic for the large negative arguments
    that occur at high wavenumber, where quadrature must be used instead.
    """
    term = 1.0
    acc = 1.0
    for m in range(max_terms):
        term *= (a1 + m) * (a2 + m) * z / ((b1 + m) * (b2 + m) * (b3 + m) * (m + 1.0))
        acc += term
        if abs(term) <= 1e-17 * abs(acc):
            return acc
    raise RuntimeError("hyp2f3 series did not converge")


def gamma_fn(x):
    """Gamma function for real x away from the non-positive integers."""
    if x <= 0 and x == int(x):
        raise ValueError("gamma_fn pole at non-positive integer")
    return _sp.gamma(x)


def ball_volume(d):
    """Volume V_d of the unit d-ball, pi^(d/2) / Gamma(d/2 + 1)."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    return np.pi ** (d / 2.0) / _sp.gamma(d / 2.0 + 1.0)


def sphere_surface(d):
    """Surface S_d = d V_d of the unit (d-1)-sphere; S_1 = 2 (two endpoints)."""
    return d * ball_volume(d)


@functools.lru_cache(maxsize=8)
def gauss_legendre(n):
    """Cached Gauss-Legendre nodes and weights on [-1, 1]."""
    return _sp.roots_legendre(n)
