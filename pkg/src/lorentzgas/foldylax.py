"""Multiple scattering of a scalar wave off fixed point scatterers.

The scattered wave is a superposition of outgoing spherical waves with
amplitudes a_i fixed by the linear system

    sum_j M_ij a_j = phi_i,   M_ij = delta_ij / F(k) - (1 - delta_ij) G+(k, r_ij),

where phi_i is the incident plane wave sampled at the scatterer
positions, F(k) the single-scatterer amplitude and G+ the outgoing Green
function. M is complex symmetric with Im M equal to the positive
semi-definite matrix I_ij = I(k, r_ij), which is what makes the optical
theorem hold configuration by configuration.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import greens, pointscatter
from .medium import pairwise_distances
from .specialfn import bessel_j, gauss_legendre, sphere_surface

RESIDUAL_TOL = 1e-10
_MAX_REFINE = 4


def i_matrix(d, k, dists):
    """Matrix I_ij = I(k, r_ij) of regular Green-function parts.

    Real symmetric and positive semi-definite in exact arithmetic: it is
    the Gram matrix of plane-wave amplitudes averaged over directions.
    """
    return greens.green_imag_reg(d, k, dists)


def build_matrix(model, d, k, cfg):
    """Assemble the complex symmetric multiple-scattering matrix M."""
    n = cfg.spec.n_scatterers
    f = pointscatter.amplitude(model, d, k)
    if f == 0:
        raise pointscatter.PhaseShiftPoleError(
            "scatterer is transparent at this wavenumber, M is undefined")
    dists = pairwise_distances(cfg)
    if n == 1:
        return np.array([[1.0 / f]], dtype=complex)
    off = ~np.eye(n, dtype=bool)
    m = np.zeros((n, n), dtype=complex)
    m[off] = -greens.green_plus(d, k, dists[off])
    np.fill_diagonal(m, 1.0 / f)
    return m


def incident_wave(k, cfg, direction=None):
    """Plane wave exp(i k dir.x) sampled at the scatterer positions.

    Default direction is the first coordinate axis.
    """
    x = cfg.positions
    if direction is None:
        phase = k * x[:, 0]
    else:
        direction = np.asarray(direction, dtype=float)
        phase = k * (x @ direction)
    return np.exp(1j * phase)


@dataclass(frozen=True)
class ScatteringSolution:
    """Solved amplitudes for one configuration at one wavenumber.

    amplitudes_ext keeps the extended-precision amplitudes from the
    refined solve; the conservation identities cancel to ~1e-16 of the
    individual terms, so both total cross section routes evaluate their
    O(N) contractions in extended precision to keep the comparison
    meaningful.
    """

    model: pointscatter.ScattererModel
    d: int
    k: float
    cfg: object
    matrix: np.ndarray = field(repr=False)
    incident: np.ndarray = field(repr=False)
    amplitudes: np.ndarray = field(repr=False)
    amplitudes_ext: np.ndarray = field(repr=False)
    residual: float


def solve_system(m, phi):
    """Solve m a = phi by LU with extended-precision iterative refinement.

    The refinement residual is accumulated in extended precision because
    near the unitarity bound the diagonal of M is large and real, and a
    double-precision residual would be pure rounding noise there.
    Returns (a, a_ext, residual); raises RuntimeError if the refined
    residual still exceeds RESIDUAL_TOL * ||phi||.
    """
    lu, piv = scipy.linalg.lu_factor(m)
    a = scipy.linalg.lu_solve((lu, piv), phi)
    m_ext = m.astype(np.clongdouble)
    phi_ext = phi.astype(np.clongdouble)
    a_ext = a.astype(np.clongdouble)
    phi_norm = float(np.linalg.norm(phi))
    # always refine at least once: the stored amplitudes feed exact
    # cancellation identities that double-precision rounding would mask
    residual = np.inf
    for _ in range(_MAX_REFINE):
        r_ext = phi_ext - m_ext @ a_ext
        da = scipy.linalg.lu_solve((lu, piv), r_ext.astype(complex))
        a_ext = a_ext + da.astype(np.clongdouble)
        r_ext = phi_ext - m_ext @ a_ext
        residual = float(np.linalg.norm(r_ext.astype(complex)))
        if residual <= RESIDUAL_TOL * phi_norm:
            break
    else:
        raise RuntimeError(
            f"linear solve residual {residual:.3e} above "
            f"{RESIDUAL_TOL:.0e} * ||phi|| = {RESIDUAL_TOL * phi_norm:.3e}")
    return a_ext.astype(complex), a_ext, residual


def solve(model, d, k, cfg, direction=None):
    """Build M and phi for a configuration and solve for the amplitudes."""
    m = build_matrix(model, d, k, cfg)
    phi = incident_wave(k, cfg, direction)
    a, a_ext, residual = solve_system(m, phi)
    return ScatteringSolution(model, d, k, cfg, m, phi, a, a_ext, residual)


def scattering_amplitude(sol, directions):
    """T(k, dir) = sum_i a_i exp(-i k dir.x_i) for unit rows of directions."""
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    phases = np.exp(-1j * sol.k * (directions @ sol.cfg.positions.T))
    return phases @ sol.amplitudes


def outgoing_directions(d, theta):
    """Unit vectors at polar angle theta from the incidence axis.

    For d >= 3 the azimuth is put in the (x0, x1) plane; observables
    averaged over configurations do not depend on that choice.
    """
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape + (d,))
    out[..., 0] = np.cos(theta)
    if d > 1:
        out[..., 1] = np.sin(theta)
    else:
        out[..., 0] = np.where(np.cos(theta) >= 0, 1.0, -1.0)
    return out


def diff_cross_section(sol, theta):
    """dsigma/dOmega at polar angles theta (radians) off the incidence axis."""
    t = scattering_amplitude(sol, outgoing_directions(sol.d, theta))
    i0 = greens.green_imag_zero(sol.d, sol.k)
    return i0 / (sol.k * sphere_surface(sol.d)) * np.abs(t) ** 2


def total_cross_section_quadform(sol):
    """sigma = a^dag I a / k, the angular integral done in closed form."""
    dists = pairwise_distances(sol.cfg)
    imat = i_matrix(sol.d, sol.k, dists).astype(np.longdouble)
    a = sol.amplitudes_ext
    return float((np.conj(a) @ (imat @ a)).real / sol.k)


def total_cross_section_optical(sol):
    """sigma = -Im(phi^dag a) / k from the forward scattering amplitude."""
    phi_ext = sol.incident.astype(np.clongdouble)
    return float(-(np.conj(phi_ext) @ sol.amplitudes_ext).imag / sol.k)


def _quadrature_nodes(k, radius):
    n = 4 * int(np.ceil(k * radius)) + 64
    return gauss_legendre(n)


def total_cross_section_quadrature(sol):
    """sigma by direct angular quadrature of |T|^2, an independent route.

    d=2 integrates over the full circle with Gauss-Legendre nodes. d=3
    does Gauss-Legendre in cos(theta) after integrating the azimuth in
    closed form: the phase factors reduce pairwise to J0 of the
    transverse separation. Node count grows linearly with kR so the
    oscillation scale of |T|^2 stays resolved.
    """
    d, k = sol.d, sol.k
    radius = sol.cfg.spec.radius
    i0 = greens.green_imag_zero(d, k)
    pref = i0 / (k * sphere_surface(d))
    x, w = _quadrature_nodes(k, radius)
    if d == 2:
        theta = np.pi * (x + 1.0)
        dirs = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        t = scattering_amplitude(sol, dirs)
        return float(pref * np.pi * np.sum(w * np.abs(t) ** 2))
    if d == 3:
        pos = sol.cfg.positions
        a = sol.amplitudes
        dz = pos[:, 0][:, None] - pos[None, :, 0]
        rho = np.hypot(pos[:, 1][:, None] - pos[None, :, 1],
                       pos[:, 2][:, None] - pos[None, :, 2])
        pair = np.outer(a, np.conj(a))
        cos_t = x
        sin_t = np.sqrt(1.0 - cos_t ** 2)
        acc = 0.0
        for ct, st, wt in zip(cos_t, sin_t, w):
            kern = np.exp(-1j * k * ct * dz) * bessel_j(0, k * st * rho)
            acc += wt * float(np.sum(pair * kern).real)
        return float(pref * 2.0 * np.pi * acc)
    raise ValueError("direct angular quadrature implemented for d in {2, 3}")


def m_eigenvalues(model, d, k, cfg):
    """Eigenvalues of M; their imaginary parts are >= 0 when I is PSD."""
    return np.linalg.eigvals(build_matrix(model, d, k, cfg))


def s_matrix(model, d, k, cfg):
    """Channel-space S-matrix conj(M) M^{-1}.

    Not unitary as a matrix (it is unitary on the image of I^{1/2}), but
    its spectrum lies on the unit circle whenever I is positive
    definite.
    """
    m = build_matrix(model, d, k, cfg)
    return np.linalg.solve(m, np.conj(m)).T


def s_eigenvalues(model, d, k, cfg):
    return np.linalg.eigvals(s_matrix(model, d, k, cfg))


def s_eigenvalues_cholesky(model, d, k, cfg):
    """S spectrum via Cholesky of I and a real symmetric eigenproblem.

    With I = L L^T and H = L^{-1} Re(M) L^{-T}, the eigenvalues of S are
    the Cayley transforms (h - i)/(h + i) of the real spectrum of H, so
    this route puts them on the unit circle by construction. Raises
    scipy.linalg.LinAlgError when I is numerically singular.
    """
    m = build_matrix(model, d, k, cfg)
    imat = np.imag(m)
    lo = scipy.linalg.cholesky(imat, lower=True)
    x = scipy.linalg.solve_triangular(lo, np.real(m), lower=True)
    h = scipy.linalg.solve_triangular(lo, x.T, lower=True).T
    hvals = scipy.linalg.eigvalsh(0.5 * (h + h.T))
    return (hvals - 1j) / (hvals + 1j)
