"""Free-space Green functions of the d-dimensional Helmholtz operator.

The outgoing solution at wavenumber k and source distance r is

    G+(k, r) = -(i/4) (k / 2 pi r)^((d-2)/2) H+_(d-2)/2(kr)

with H+ = J + iY. Its real part P diverges at the origin for d >= 2;
its imaginary part -I is entire in r^2 and carries all conservation
content, so the two are exposed separately and G+ = P - iI exactly.
"""

import numpy as np

from .specialfn import bessel_j, bessel_y, hyp0f1, sphere_surface

# below this kr the Bessel/power form of I(k,r) loses digits to 0/0
# cancellation and the series form is used instead
_SERIES_CROSSOVER = 1e-3


def _check(d, k):
    if d < 1 or d != int(d):
        raise ValueError("dimension must be a positive integer")
    if not k > 0:
        raise ValueError("wavenumber must be real and positive")


def green_imag_zero(d, k):
    """Coincidence value I(k, 0) = (pi/2) S_d (2 pi)^(-d) k^(d-2), positive."""
    _check(d, k)
    return (np.pi / 2.0) * sphere_surface(d) * (2.0 * np.pi) ** (-d) * k ** (d - 2.0)


def green_imag_reg(d, k, r):
    """Regular part I(k, r) = (1/4) (k / 2 pi r)^((d-2)/2) J_(d-2)/2(kr).

    Entire in r^2 and even in r; near the origin the power form is a 0/0
    limit, so for kr below the crossover it is evaluated through
    I(k, r) = I(k, 0) 0F1(d/2; -(kr)^2 / 4) instead.
    """
    _check(d, k)
    r = np.abs(np.asarray(r, dtype=float))
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    kr = k * r
    out = np.empty_like(r)
    small = kr < _SERIES_CROSSOVER
    if np.any(small):
        out[small] = green_imag_zero(d, k) * hyp0f1(d / 2.0, -kr[small] ** 2 / 4.0)
    if np.any(~small):
        rb = r[~small]
        nu = (d - 2) / 2.0
        out[~small] = 0.25 * (k / (2.0 * np.pi * rb)) ** nu * bessel_j(nu, k * rb)
    return out[0] if scalar else out


def green_real(d, k, r):
    """Singular part P(k, r) = (1/4) (k / 2 pi r)^((d-2)/2) Y_(d-2)/2(kr).

    Diverges at r = 0 for d >= 2; for d = 1 it equals sin(kr)/(2k) and is
    finite everywhere.
    """
    _check(d, k)
    r = np.asarray(r, dtype=float)
    if d >= 2 and np.any(r <= 0.0):
        raise ValueError("green_real diverges at r = 0 for d >= 2")
    if d == 1:
        return np.sin(k * r) / (2.0 * k)
    nu = (d - 2) / 2.0
    return 0.25 * (k / (2.0 * np.pi * r)) ** nu * bessel_y(nu, k * r)


def green_plus(d, k, r):
    """Outgoing Green function G+(k, r) = P(k, r) - i I(k, r).

    For d = 1 this is e^(ikr)/(2ik), finite at r = 0; for d >= 2 the
    coincidence point is a domain error.
    """
    _check(d, k)
    r = np.asarray(r, dtype=float)
    if d == 1:
        return np.exp(1j * k * r) / (2j * k)
    return green_real(d, k, r) - 1j * green_imag_reg(d, k, r)


def green_minus(d, k, r):
    """Incoming Green function, the complex conjugate of G+ at real k."""
    return np.conj(green_plus(d, k, r))


def plane_wave_sphere_integral(d, z):
    """Integral of e^(i z Omega . u) over the unit (d-1)-sphere, d >= 2.

    Equals S_d 0F1(d/2; -z^2/4); even in z. For d = 3 this is the classic
    4 pi sin(z)/z.
    """
    if d < 2:
        raise ValueError("sphere integral defined for d >= 2")
    z = np.asarray(z, dtype=float)
    return sphere_surface(d) * hyp0f1(d / 2.0, -(z ** 2) / 4.0)
