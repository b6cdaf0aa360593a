"""Random Lorentz-gas geometry: uniform scatterer configurations in a d-ball.

The number density is fixed at one scatterer per unit volume, so the gas
radius is R = (N / V_d)^(1/d) and all lengths are expressed in units of
the mean inter-scatterer distance.
"""

import io
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .specialfn import ball_volume

RNG_ALGORITHM = "numpy-pcg64"
DEFAULT_MIN_SEPARATION = 1e-6


def gas_radius(d, n_scatterers):
    """Radius R = (N / V_d)^(1/d) of the gas holding N scatterers at unit density."""
    if n_scatterers < 1:
        raise ValueError("need at least one scatterer")
    return (n_scatterers / ball_volume(d)) ** (1.0 / d)


@dataclass(frozen=True)
class GasSpec:
    """Gas geometry: dimension d and scatterer count N at unit density."""

    d: int
    n_scatterers: int

    def __post_init__(self):
        if self.d < 1 or self.d != int(self.d):
            raise ValueError("dimension must be a positive integer")
        if self.n_scatterers < 1:
            raise ValueError("need at least one scatterer")

    @property
    def radius(self):
        return gas_radius(self.d, self.n_scatterers)


@dataclass(frozen=True)
class Configuration:
    """Immutable sampled configuration with its provenance."""

    spec: GasSpec
    positions: np.ndarray = field(repr=False)
    seed: int
    min_separation: float
    rng_algorithm: str = RNG_ALGORITHM

    def __post_init__(self):
        self.positions.setflags(write=False)


def sample_configuration(spec, seed, min_separation=DEFAULT_MIN_SEPARATION):
    """Draw N points i.i.d. uniform in the d-ball of radius R.

    Direction comes from a normalized d-dimensional Gaussian and the
    radius from R U^(1/d), which is exact in any dimension. If any pair
    is closer than min_separation the whole configuration is resampled
    (the Green function diverges at coincident points); the budget of
    100 attempts is unreachable in practice.

    Parameters:
        spec            GasSpec with dimension and scatterer count.
        seed            64-bit integer; same seed gives a bit-identical
                        configuration.
        min_separation  smallest admissible pairwise distance.
    """
    rng = np.random.default_rng(seed)
    n, d = spec.n_scatterers, spec.d
    radius = spec.radius
    for _ in range(100):
        direction = rng.standard_normal((n, d))
        direction /= np.linalg.norm(direction, axis=1)[:, None]
        r = radius * rng.random(n) ** (1.0 / d)
        positions = direction * r[:, None]
        if n < 2:
            return Configuration(spec, positions, seed, min_separation)
        # nearest-neighbor query instead of the N x N distance matrix, so
        # large configurations can be sampled without quadratic memory
        nn = cKDTree(positions).query(positions, k=2)[0][:, 1]
        if nn.min() >= min_separation:
            return Configuration(spec, positions, seed, min_separation)
    raise RuntimeError("configuration resampling budget exhausted")


def pairwise_distances(cfg):
    """Symmetric matrix of Euclidean distances r_ij, zero on the diagonal."""
    delta = cfg.positions[:, None, :] - cfg.positions[None, :, :]
    return np.linalg.norm(delta, axis=-1)


def configuration_to_csv(cfg, path_or_buf):
    """Write one scatterer per row (d columns) with a commented header."""
    spec = cfg.spec
    header = (f"# d={spec.d}\n"
              f"# N={spec.n_scatterers}\n"
              f"# R={spec.radius!r}\n"
              f"# seed={cfg.seed}\n"
              f"# rng={cfg.rng_algorithm}\n")
    own = isinstance(path_or_buf, (str, bytes))
    buf = open(path_or_buf, "w", newline="\n") if own else path_or_buf
    try:
        buf.write(header)
        buf.write(",".join(f"x{i}" for i in range(spec.d)) + "\n")
        for row in cfg.positions:
            buf.write(",".join(repr(float(v)) for v in row) + "\n")
    finally:
        if own:
            buf.close()


def configuration_to_csv_string(cfg):
    buf = io.StringIO()
    configuration_to_csv(cfg, buf)
    return buf.getvalue()
