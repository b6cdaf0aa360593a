"""Command line front end: lorentz-scatter <kind> --spec FILE [options].

Exit codes: 0 success (and PASS for diagnostic kinds), 1 spec or usage
error, 2 diagnostic FAIL.
"""

import argparse
import sys

from . import harness
from .version import __version__


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="lorentz-scatter",
        description="Multiple-scattering Monte Carlo experiments for a "
                    "random gas of point scatterers.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="kind", required=True)
    for kind in harness.KINDS:
        p = sub.add_parser(kind, help=f"run a {kind} experiment")
        p.add_argument("--spec", required=True,
                       help="flat key=value experiment description")
        p.add_argument("--out", default=None,
                       help="CSV output path (default: summary to stdout)")
        p.add_argument("--seed", type=int, default=None,
                       help="override the base seed")
        p.add_argument("--threads", type=int, default=1,
                       help="worker thread cap (default 1)")
        p.add_argument("--configs", type=int, default=None,
                       help="override the number of configurations")
    return parser


def _summary_line(result):
    if isinstance(result, harness.DiagnosticReport):
        return result.summary()
    if isinstance(result, harness.PointXsResult):
        return (f"point-xs d={result.spec.d} alpha={result.spec.alpha} "
                f"{len(result.k)} wavenumbers")
    st = result.stats
    return (f"{result.spec.kind} {st.x_name}[{len(st.x)}] "
            f"configs={st.count} mean range "
            f"[{st.mean.min():.6g}, {st.mean.max():.6g}]")


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        spec = harness.read_spec(args.spec)
        if spec.kind != args.kind:
            raise harness.SpecError(
                f"spec file is kind {spec.kind!r}, subcommand is "
                f"{args.kind!r}")
        spec = harness.apply_overrides(spec, seed=args.seed,
                                       n_configs=args.configs)
        if args.threads < 1:
            raise harness.SpecError("--threads must be >= 1")
        result = harness.run_experiment(spec, threads=args.threads)
    except (harness.SpecError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out is not None:
        harness.write_csv(result, args.out)
    print(_summary_line(result))
    if isinstance(result, harness.DiagnosticReport) and not result.passed:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
