"""Monte Carlo experiment driver: spec files, statistics, CSV output.

An experiment is described by a flat key=value text file, run over
deterministically seeded configurations (seed = base + index), and
written to CSV with a commented metadata header so downstream tools can
recompute every analytic overlay without touching this package.
"""

import concurrent.futures
import dataclasses
from dataclasses import dataclass, field

import numpy as np

from . import foldylax, pointscatter
from .medium import RNG_ALGORITHM, GasSpec, sample_configuration
from .pointscatter import DELTA_LIKE, HARD_SPHERE, ScattererModel
from .version import __version__

KINDS = ("diff-xs", "total-xs", "point-xs", "spectrum", "smatrix-check")

OPTICAL_RESIDUAL_TOL = 1e-10
SMATRIX_MOD_TOL = 1e-8
SWEEP_SPOT_TOL = 1e-8
SWEEP_SPOT_EVERY = 10
MAX_STORED_CONFIGS = 1 << 16
DEFAULT_ANGLE_COUNT = 721


class SpecError(ValueError):
    """Malformed or invalid experiment spec file."""


# keys accepted in spec files, per experiment kind
_KEY_TYPES = {
    "kind": str,
    "d": int,
    "N": int,
    "model": str,
    "alpha": float,
    "k": float,
    "k_min": float,
    "k_max": float,
    "k_count": int,
    "n_configs": int,
    "seed": int,
    "angles": int,
    "angle_min_deg": float,
    "angle_max_deg": float,
}
_COMMON = {"kind", "d"}
_KIND_KEYS = {
    "diff-xs": _COMMON | {"N", "model", "alpha", "k", "n_configs", "seed",
                          "angles", "angle_min_deg", "angle_max_deg"},
    "total-xs": _COMMON | {"N", "model", "alpha", "k_min", "k_max", "k_count",
                           "n_configs", "seed"},
    "point-xs": _COMMON | {"alpha", "k_min", "k_max", "k_count"},
    "spectrum": _COMMON | {"N", "model", "alpha", "k", "n_configs", "seed"},
    "smatrix-check": _COMMON | {"N", "model", "alpha", "k", "n_configs",
                                "seed"},
}
_REQUIRED = {
    "diff-xs": _COMMON | {"N", "model", "alpha", "k", "n_configs", "seed"},
    "total-xs": _COMMON | {"N", "model", "alpha", "k_min", "k_max", "k_count",
                           "n_configs", "seed"},
    "point-xs": _COMMON | {"alpha", "k_min", "k_max", "k_count"},
    "spectrum": _COMMON | {"N", "model", "alpha", "k", "n_configs", "seed"},
    "smatrix-check": _COMMON | {"N", "model", "alpha", "k", "n_configs",
                                "seed"},
}


@dataclass(frozen=True)
class ExperimentSpec:
    """Validated description of one experiment.

    Wavenumber is either a single k (diff-xs, spectrum, smatrix-check)
    or a log grid k_min..k_max with k_count points (sweeps). The angle
    grid applies to diff-xs only.
    """

    kind: str
    d: int
    n_scatterers: int = None
    model_kind: str = None
    alpha: float = None
    k: float = None
    k_min: float = None
    k_max: float = None
    k_count: int = None
    n_configs: int = None
    seed: int = None
    angle_count: int = DEFAULT_ANGLE_COUNT
    angle_min_deg: float = 0.0
    angle_max_deg: float = 180.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown experiment kind {self.kind!r}")
        if self.d < 1 or self.d != int(self.d):
            raise SpecError("d must be a positive integer")
        if self.n_scatterers is not None and self.n_scatterers < 1:
            raise SpecError("N must be >= 1")
        if self.n_configs is not None and self.n_configs < 1:
            raise SpecError("n_configs must be >= 1")
        if self.model_kind is not None and self.model_kind not in (
                HARD_SPHERE, DELTA_LIKE):
            raise SpecError(f"unknown model {self.model_kind!r}")
        if self.alpha is not None and not self.alpha > 0:
            raise SpecError("alpha must be positive")
        for name in ("k", "k_min", "k_max"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise SpecError(f"{name} must be positive")
        if self.k_count is not None:
            if self.k_count < 1:
                raise SpecError("k_count must be >= 1")
            if self.k_min is None or self.k_max is None:
                raise SpecError("k_count requires k_min and k_max")
            if self.k_min > self.k_max:
                raise SpecError("k_min must not exceed k_max")
        missing = [key for key in sorted(_REQUIRED[self.kind])
                   if getattr(self, _FIELD_OF_KEY[key]) is None]
        if missing:
            raise SpecError(f"kind {self.kind!r} is missing required "
                            f"value(s): {', '.join(missing)}")
        if self.kind == "diff-xs":
            if self.angle_count < 2:
                raise SpecError("angle grid needs at least 2 points")
            if not (0.0 <= self.angle_min_deg < self.angle_max_deg <= 180.0):
                raise SpecError("angle grid must increase within [0, 180]")

    @property
    def model(self):
        return ScattererModel(self.model_kind, self.alpha)

    @property
    def k_grid(self):
        return np.logspace(np.log10(self.k_min), np.log10(self.k_max),
                           self.k_count)

    @property
    def angles_deg(self):
        return np.linspace(self.angle_min_deg, self.angle_max_deg,
                           self.angle_count)

    @property
    def gas(self):
        return GasSpec(self.d, self.n_scatterers)


_FIELD_OF_KEY = {
    "kind": "kind", "d": "d", "N": "n_scatterers", "model": "model_kind",
    "alpha": "alpha", "k": "k", "k_min": "k_min", "k_max": "k_max",
    "k_count": "k_count", "n_configs": "n_configs", "seed": "seed",
    "angles": "angle_count", "angle_min_deg": "angle_min_deg",
    "angle_max_deg": "angle_max_deg",
}


def parse_spec_text(text, source="<string>"):
    """Parse flat key=value lines into an ExperimentSpec.

    Blank lines and lines starting with '#' are ignored. Unknown keys,
    duplicate keys, and type errors are rejected with their line number.
    """
    entries = {}
    lines = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SpecError(f"{source}:{ln}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEY_TYPES:
            raise SpecError(f"{source}:{ln}: unknown key {key!r}")
        if key in entries:
            raise SpecError(f"{source}:{ln}: duplicate key {key!r} "
                            f"(first on line {lines[key]})")
        try:
            entries[key] = _KEY_TYPES[key](value)
        except ValueError:
            raise SpecError(
                f"{source}:{ln}: cannot parse {key}={value!r} as "
                f"{_KEY_TYPES[key].__name__}") from None
        lines[key] = ln
    if "kind" not in entries:
        raise SpecError(f"{source}: missing required key 'kind'")
    kind = entries["kind"]
    if kind not in KINDS:
        raise SpecError(f"{source}:{lines['kind']}: unknown experiment kind "
                        f"{kind!r}")
    allowed = _KIND_KEYS[kind]
    for key in entries:
        if key not in allowed:
            raise SpecError(f"{source}:{lines[key]}: key {key!r} is not used "
                            f"by kind {kind!r}")
    missing = _REQUIRED[kind] - entries.keys()
    if missing:
        raise SpecError(f"{source}: kind {kind!r} is missing required "
                        f"key(s): {', '.join(sorted(missing))}")
    fields = {_FIELD_OF_KEY[key]: v for key, v in entries.items()}
    return ExperimentSpec(**fields)


def read_spec(path):
    with open(path, "r") as fh:
        return parse_spec_text(fh.read(), source=str(path))


def spec_to_text(spec):
    """Serialize an ExperimentSpec back to spec-file form (round-trips)."""
    out = []
    for key, fname in _FIELD_OF_KEY.items():
        if key not in _KIND_KEYS[spec.kind]:
            continue
        v = getattr(spec, fname)
        if v is not None:
            out.append(f"{key}={v}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# results and statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveStats:
    """Per-grid-point Monte Carlo statistics over configurations."""

    x_name: str
    x: np.ndarray = field(repr=False)
    mean: np.ndarray = field(repr=False)
    q1: np.ndarray = field(repr=False)
    median: np.ndarray = field(repr=False)
    q3: np.ndarray = field(repr=False)
    count: int


@dataclass(frozen=True)
class ExperimentResult:
    spec: ExperimentSpec
    stats: CurveStats
    meta: dict
    samples: np.ndarray = field(default=None, repr=False)


@dataclass(frozen=True)
class PointXsResult:
    spec: ExperimentSpec
    k: np.ndarray = field(repr=False)
    hardsphere: np.ndarray = field(repr=False)
    deltalike: np.ndarray = field(repr=False)
    bound: np.ndarray = field(repr=False)
    meta: dict = None


@dataclass(frozen=True)
class DiagnosticReport:
    """Per-configuration conservation diagnostics with a global verdict."""

    spec: ExperimentSpec
    columns: dict
    worst: dict
    passed: bool
    meta: dict

    def summary(self):
        verdict = "PASS" if self.passed else "FAIL"
        worst = "  ".join(f"{k}={v:.3e}" if isinstance(v, float)
                          else f"{k}={v}" for k, v in self.worst.items())
        return f"{self.spec.kind} {verdict}  {worst}"


def _collect_rows(work, n_configs, threads, n_cols):
    """Run work(i) for i in range(n_configs); return samples, mean, count.

    Collection order is by index regardless of worker count, so threaded
    and sequential runs aggregate identically. Beyond MAX_STORED_CONFIGS
    rows a uniform index subsample is kept for the quantiles (quantile
    noise then floors at the 2^16-sample level) while the mean still
    accumulates over every configuration.
    """
    store_all = n_configs <= MAX_STORED_CONFIGS
    keep = (np.arange(n_configs) if store_all else np.unique(
        np.linspace(0, n_configs - 1, MAX_STORED_CONFIGS).astype(int)))
    keep_set = set(int(i) for i in keep)
    stored = np.empty((len(keep), n_cols))
    total = np.zeros(n_cols)
    pos = 0
    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as ex:
            rows = ex.map(work, range(n_configs))
            for idx, row in enumerate(rows):
                total += row
                if idx in keep_set:
                    stored[pos] = row
                    pos += 1
    else:
        for idx in range(n_configs):
            row = work(idx)
            total += row
            if idx in keep_set:
                stored[pos] = row
                pos += 1
    return stored, total / n_configs


def _stats_from(x_name, x, work, n_configs, threads):
    stored, mean = _collect_rows(work, n_configs, threads, len(x))
    q1, median, q3 = np.percentile(stored, [25.0, 50.0, 75.0], axis=0)
    stats = CurveStats(x_name, np.asarray(x, dtype=float), mean, q1, median,
                       q3, n_configs)
    return stats, stored


def _base_meta(spec, k_desc):
    return {
        "kind": spec.kind,
        "d": spec.d,
        "N": spec.n_scatterers,
        "alpha": spec.alpha,
        "model": spec.model_kind,
        "k": k_desc,
        "seed": spec.seed,
        "n_configs": spec.n_configs,
        "direction": "axis0",
        "rng": RNG_ALGORITHM,
        "version": __version__,
    }


def _wrap_config_error(seed, exc):
    return RuntimeError(f"configuration with seed {seed} failed: {exc}")


def run_diff_xs(spec, threads=1, keep_samples=False):
    """Mean and quartiles of dsigma/dOmega on the angle grid.

    One configuration per seed = base + index; the solver error, if any,
    is re-raised with the offending seed.
    """
    if spec.kind != "diff-xs":
        raise SpecError(f"expected kind diff-xs, got {spec.kind!r}")
    theta = np.radians(spec.angles_deg)
    model, gas = spec.model, spec.gas

    def work(idx):
        seed = spec.seed + idx
        try:
            cfg = sample_configuration(gas, seed)
            sol = foldylax.solve(model, spec.d, spec.k, cfg)
            return foldylax.diff_cross_section(sol, theta)
        except Exception as exc:
            raise _wrap_config_error(seed, exc) from exc

    stats, stored = _stats_from("theta_deg", spec.angles_deg, work,
                                spec.n_configs, threads)
    meta = _base_meta(spec, spec.k)
    return ExperimentResult(spec, stats, meta,
                            stored if keep_samples else None)


def run_total_xs_sweep(spec, threads=1, keep_samples=False):
    """Mean and quartiles of sigma(k) over the log wavenumber grid.

    Each configuration is sampled once and re-solved at every k; sigma
    comes from the optical-theorem route, and every SWEEP_SPOT_EVERY-th
    configuration is re-checked against the quadratic-form route at
    every k (they are two evaluations of the same conserved quantity,
    so disagreement beyond SWEEP_SPOT_TOL aborts the run).
    """
    if spec.kind != "total-xs":
        raise SpecError(f"expected kind total-xs, got {spec.kind!r}")
    kgrid = spec.k_grid
    model, gas = spec.model, spec.gas

    def work(idx):
        seed = spec.seed + idx
        try:
            cfg = sample_configuration(gas, seed)
            out = np.empty(len(kgrid))
            for j, kk in enumerate(kgrid):
                sol = foldylax.solve(model, spec.d, kk, cfg)
                out[j] = foldylax.total_cross_section_optical(sol)
                if idx % SWEEP_SPOT_EVERY == 0:
                    quad = foldylax.total_cross_section_quadform(sol)
                    if abs(quad - out[j]) > SWEEP_SPOT_TOL * max(abs(out[j]),
                                                                 1e-300):
                        raise RuntimeError(
                            f"optical/quadform mismatch at k={kk}: "
                            f"{out[j]!r} vs {quad!r}")
            return out
        except Exception as exc:
            raise _wrap_config_error(seed, exc) from exc

    stats, stored = _stats_from("k", kgrid, work, spec.n_configs, threads)
    meta = _base_meta(
        spec, f"logspace({spec.k_min},{spec.k_max},{spec.k_count})")
    return ExperimentResult(spec, stats, meta,
                            stored if keep_samples else None)


def run_point_xs_sweep(spec):
    """Single-scatterer cross sections for both models plus the bound."""
    if spec.kind != "point-xs":
        raise SpecError(f"expected kind point-xs, got {spec.kind!r}")
    kgrid = spec.k_grid
    hs = ScattererModel(HARD_SPHERE, spec.alpha)
    dl = ScattererModel(DELTA_LIKE, spec.alpha)
    sig_hs = np.array([pointscatter.point_cross_section(hs, spec.d, kk)
                       for kk in kgrid])
    sig_dl = np.array([pointscatter.point_cross_section(dl, spec.d, kk)
                       for kk in kgrid])
    bound = np.array([pointscatter.cross_section_bound(spec.d, kk)
                      for kk in kgrid])
    meta = {
        "kind": spec.kind,
        "d": spec.d,
        "N": 1,
        "alpha": spec.alpha,
        "model": "both",
        "k": f"logspace({spec.k_min},{spec.k_max},{spec.k_count})",
        "seed": "none",
        "n_configs": "none",
        "direction": "axis0",
        "rng": "none",
        "version": __version__,
    }
    return PointXsResult(spec, kgrid, sig_hs, sig_dl, bound, meta)


def _spectrum_config(model, d, k, cfg, corrupt):
    m = foldylax.build_matrix(model, d, k, cfg)
    if corrupt is not None:
        m = corrupt(m.copy())
    phi = foldylax.incident_wave(k, cfg)
    _, a_ext, _ = foldylax.solve_system(m, phi)
    sigma_opt = float(-(np.conj(phi.astype(np.clongdouble)) @ a_ext).imag / k)
    imat = np.imag(m).astype(np.longdouble)
    sigma_quad = float((np.conj(a_ext) @ (imat @ a_ext)).real / k)
    scale = max(abs(sigma_opt), abs(sigma_quad), 1e-300)
    optical_residual = abs(sigma_opt - sigma_quad) / scale
    min_im_mu = float(np.linalg.eigvals(m).imag.min())
    return m, min_im_mu, optical_residual


def run_spectrum(spec, threads=1, corrupt=None):
    """Check min Im mu > 0 and the optical-theorem residual per config.

    corrupt, if given, maps the assembled matrix to a tampered copy; it
    exists so a deliberate corruption is provably caught as FAIL.
    """
    if spec.kind != "spectrum":
        raise SpecError(f"expected kind spectrum, got {spec.kind!r}")
    model, gas = spec.model, spec.gas
    n = spec.n_configs
    min_im = np.empty(n)
    resid = np.empty(n)
    for idx in range(n):
        seed = spec.seed + idx
        try:
            cfg = sample_configuration(gas, seed)
            _, min_im[idx], resid[idx] = _spectrum_config(
                model, spec.d, spec.k, cfg, corrupt)
        except Exception as exc:
            raise _wrap_config_error(seed, exc) from exc
    worst = {"min_im_mu": float(min_im.min()),
             "optical_residual": float(resid.max())}
    passed = worst["min_im_mu"] > 0.0 and (
        worst["optical_residual"] <= OPTICAL_RESIDUAL_TOL)
    meta = _base_meta(spec, spec.k)
    columns = {"config": np.arange(n, dtype=float),
               "min_im_mu": min_im, "optical_residual": resid}
    return DiagnosticReport(spec, columns, worst, passed, meta)


def run_smatrix_check(spec, threads=1, corrupt=None):
    """Check the S-matrix spectrum stays on the unit circle per config.

    Records whether the Cholesky route through I succeeds and the direct
    eigenvalue moduli deviation max||lambda|-1|.
    """
    if spec.kind != "smatrix-check":
        raise SpecError(f"expected kind smatrix-check, got {spec.kind!r}")
    model, gas = spec.model, spec.gas
    n = spec.n_configs
    chol_ok = np.empty(n)
    mod_dev = np.empty(n)
    for idx in range(n):
        seed = spec.seed + idx
        try:
            cfg = sample_configuration(gas, seed)
            m = foldylax.build_matrix(model, spec.d, spec.k, cfg)
            if corrupt is not None:
                m = corrupt(m.copy())
            lam = np.linalg.eigvals(np.linalg.solve(m, np.conj(m)).T)
            mod_dev[idx] = float(np.abs(np.abs(lam) - 1.0).max())
            try:
                np.linalg.cholesky(np.imag(m))
                chol_ok[idx] = 1.0
            except np.linalg.LinAlgError:
                chol_ok[idx] = 0.0
        except Exception as exc:
            raise _wrap_config_error(seed, exc) from exc
    worst = {"cholesky_failures": int((chol_ok == 0.0).sum()),
             "max_mod_dev": float(mod_dev.max())}
    passed = worst["cholesky_failures"] == 0 and (
        worst["max_mod_dev"] <= SMATRIX_MOD_TOL)
    meta = _base_meta(spec, spec.k)
    columns = {"config": np.arange(n, dtype=float),
               "cholesky_ok": chol_ok, "max_mod_dev": mod_dev}
    return DiagnosticReport(spec, columns, worst, passed, meta)


# ---------------------------------------------------------------------------
# CSV persistence
# ---------------------------------------------------------------------------


def _format_value(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _write_table(path_or_buf, meta, names, columns):
    own = isinstance(path_or_buf, (str, bytes))
    buf = open(path_or_buf, "w", newline="\n") if own else path_or_buf
    try:
        for key, val in meta.items():
            buf.write(f"# {key}={_format_value(val)}\n")
        buf.write(",".join(names) + "\n")
        rows = np.column_stack(columns)
        for row in rows:
            buf.write(",".join(repr(float(v)) for v in row) + "\n")
    finally:
        if own:
            buf.close()


def write_csv(result, path_or_buf):
    """Write any run result as CSV: '# key=value' header, then columns."""
    if isinstance(result, ExperimentResult):
        st = result.stats
        _write_table(path_or_buf, result.meta,
                     [st.x_name, "mean", "q1", "median", "q3"],
                     [st.x, st.mean, st.q1, st.median, st.q3])
    elif isinstance(result, PointXsResult):
        _write_table(path_or_buf, result.meta,
                     ["k", "hardsphere", "deltalike", "bound"],
                     [result.k, result.hardsphere, result.deltalike,
                      result.bound])
    elif isinstance(result, DiagnosticReport):
        names = list(result.columns.keys())
        _write_table(path_or_buf, result.meta, names,
                     [result.columns[n] for n in names])
    else:
        raise TypeError(f"cannot serialize {type(result).__name__}")


def run_experiment(spec, threads=1):
    """Dispatch a spec to its runner; returns the result object."""
    if spec.kind == "diff-xs":
        return run_diff_xs(spec, threads=threads)
    if spec.kind == "total-xs":
        return run_total_xs_sweep(spec, threads=threads)
    if spec.kind == "point-xs":
        return run_point_xs_sweep(spec)
    if spec.kind == "spectrum":
        return run_spectrum(spec, threads=threads)
    if spec.kind == "smatrix-check":
        return run_smatrix_check(spec, threads=threads)
    raise SpecError(f"unknown experiment kind {spec.kind!r}")


def apply_overrides(spec, seed=None, n_configs=None):
    """CLI-style overrides; validation is re-run by the replace."""
    updates = {}
    if seed is not None:
        updates["seed"] = seed
    if n_configs is not None:
        updates["n_configs"] = n_configs
    if not updates:
        return spec
    if spec.kind == "point-xs":
        raise SpecError("point-xs takes no seed or config overrides")
    return dataclasses.replace(spec, **updates)
