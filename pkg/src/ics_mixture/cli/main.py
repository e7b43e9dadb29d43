"""
ICS Mixture CLI Main Module.

This module provides the command-line interface: `fit` runs one chain and
writes density summaries, `benchmark` measures sampler efficiency over a
parameter grid, and `truncation` studies the number of sticks a slice
sampler must draw.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 numerical or sampler failure.

Created by: Barrhann
Created on: 2026-10-16
Last Updated: 2026-10-17 14:40:51
"""

import argparse
import concurrent.futures
import logging
import sys
from typing import Any, Dict, List, Optional

from ..core import fit, ingest_csv, load_run_config, run_benchmark, synthetic_dataset
from ..exceptions import EXIT_OK, ConfigurationError, ICSMixtureError
from ..models.config import ALGORITHMS, DEVIANCE_MODES, RunConfig
from ..models.dataset import Dataset
from ..reporting import create_report_generator
from ..samplers import PACKAGE_INFO as SAMPLER_INFO
from ..truncation import truncation_study

logger = logging.getLogger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')
GMDDP_SYNTHETIC_GROUPS = 2
_NON_CONFIG = {'config', 'log_level', 'verbose', 'list_algorithms'}


class CLIArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as ConfigurationError."""

    def error(self, message: str):
        raise ConfigurationError(f"{self.prog}: {message}")


def _int_like(text: str) -> int:
    """Integer flag that also accepts scientific notation such as 1e6."""
    value = float(text)
    if not value.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'")
    return int(value)


def _common_arguments() -> argparse.ArgumentParser:
    parser = CLIArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parser.add_argument("--config", type=str, default=None,
                        help="Flat key = value configuration file; flags override its values")
    parser.add_argument("-o", "--output", type=str,
                        help="Directory for the result files (default: results)")
    parser.add_argument("--seed", type=_int_like, help="Root seed (default: 0)")
    parser.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=None,
                        help="Logging level (default: WARNING)")
    parser.add_argument("-v", "--verbose", action="store_true", default=False,
                        help="Enable progress logging (same as --log-level INFO)")
    return parser


def _model_arguments() -> argparse.ArgumentParser:
    parser = CLIArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parser.add_argument("--input", type=str, help="CSV file with 1 or 2 value columns")
    parser.add_argument("--synthetic", type=str, choices=["two-gaussian"],
                        help="Use a built-in synthetic data set instead of --input")
    parser.add_argument("--n", type=_int_like, help="Synthetic sample size (default: 200)")
    parser.add_argument("--iterations", type=_int_like, help="Total iterations (default: 1500)")
    parser.add_argument("--burnin", type=_int_like, help="Burn-in iterations (default: 500)")
    parser.add_argument("--jump-cap", dest="jump_cap", type=_int_like,
                        help="Maximum sticks for the slice samplers (default: 1e5)")
    parser.add_argument("--threads", type=_int_like, help="Worker threads for allocation (default: 1)")
    parser.add_argument("--deviance-mode", dest="deviance_mode", choices=DEVIANCE_MODES,
                        help="Deviance as -2 sum log f ('log', default) or -2 sum f ('literal')")
    parser.add_argument("--no-standardize", dest="standardize", action="store_false",
                        help="Fit the data on its original scale")
    parser.add_argument("--z", type=float, help="GM-DDP idiosyncratic share in (0, 1) (default: 0.5)")
    for name, help_text in (("m0", "Base measure mean"), ("k0", "Base measure mean-precision scale"),
                            ("a0", "NIG shape"), ("b0", "NIG rate"), ("nu0", "NIW degrees of freedom"),
                            ("s0", "NIW scale multiplier of the identity")):
        parser.add_argument(f"--{name}", type=float, help=help_text)
    return parser


def build_parser() -> CLIArgumentParser:
    """
    Build the command-line parser.

    Returns:
        CLIArgumentParser: Parser with the fit, benchmark and truncation commands
    """
    parser = CLIArgumentParser(
        prog="ics-mixture",
        description="Posterior sampling for Pitman-Yor and GM-DDP Gaussian mixtures."
    )
    parser.add_argument("--list-algorithms", action="store_true",
                        help="List available algorithms and exit")
    subparsers = parser.add_subparsers(dest="command", parser_class=CLIArgumentParser)
    common, model = _common_arguments(), _model_arguments()

    fit_parser = subparsers.add_parser("fit", parents=[common, model], argument_default=argparse.SUPPRESS,
                                       help="Fit one data set and write density summaries")
    fit_parser.add_argument("--algorithm", choices=ALGORITHMS, help="Sampler (default: ics)")
    fit_parser.add_argument("--sigma", type=float, help="Discount in [0, 1) (default: 0)")
    fit_parser.add_argument("--theta", type=float, help="Strength, greater than -sigma (default: 1)")
    fit_parser.add_argument("--m", type=_int_like, help="ICS auxiliary sample size (default: 10)")
    fit_parser.add_argument("--grid-min", dest="grid_min", type=float, nargs="+",
                            help="Grid lower end per axis, original scale")
    fit_parser.add_argument("--grid-max", dest="grid_max", type=float, nargs="+",
                            help="Grid upper end per axis, original scale")
    fit_parser.add_argument("--grid-points", dest="grid_points", type=_int_like,
                            help="Grid points per axis (default: 512 for 1-D, 64 for 2-D)")
    fit_parser.add_argument("--band-level", dest="band_level", type=float,
                            help="Credible band level (default: 0.9)")
    fit_parser.add_argument("--threshold", type=float,
                            help="Cut-off c of the curve P(X_a < c | X_b = x), bivariate data only")
    fit_parser.add_argument("--threshold-axis", dest="threshold_axis", type=_int_like, choices=[0, 1],
                            help="Coordinate a of the threshold event, 0 or 1 (default: 0)")

    bench_parser = subparsers.add_parser("benchmark", parents=[common, model],
                                         argument_default=argparse.SUPPRESS,
                                         help="Time/ESS benchmark over a parameter grid")
    bench_parser.add_argument("--algorithms", nargs="+", choices=ALGORITHMS,
                              help="Samplers to compare (default: ics marginal slice-dep slice-indep)")
    bench_parser.add_argument("--sigmas", nargs="+", type=float, help="Discount values (default: 0)")
    bench_parser.add_argument("--thetas", nargs="+", type=float, help="Strength values (default: 1)")
    bench_parser.add_argument("--ns", nargs="+", type=_int_like, help="Synthetic sample sizes (default: 100)")
    bench_parser.add_argument("--m", dest="ms", nargs="+", type=_int_like,
                              help="Auxiliary sample sizes for the ICS samplers (default: 10)")
    bench_parser.add_argument("--replicates", type=_int_like, help="Replicates per cell (default: 1)")
    bench_parser.add_argument("--workers", type=_int_like, help="Replicates run concurrently (default: 1)")

    trunc_parser = subparsers.add_parser("truncation", parents=[common], argument_default=argparse.SUPPRESS,
                                         help="Distribution of the number of sticks M_n")
    trunc_parser.add_argument("--sigmas", nargs="+", type=float, help="Discount values (default: 0)")
    trunc_parser.add_argument("--thetas", nargs="+", type=float, help="Strength values (default: 1)")
    trunc_parser.add_argument("--ns", nargs="+", type=_int_like, help="Sample sizes (default: 100)")
    trunc_parser.add_argument("--thresholds", nargs="+", type=_int_like,
                              help="Thresholds K of P(M_n > K) (default: 1e3 1e6 1e9)")
    trunc_parser.add_argument("--reps", type=_int_like, help="Draws per cell (default: 100)")
    trunc_parser.add_argument("--cap", type=_int_like, help="Cap on directly simulated sticks (default: 1e7)")
    trunc_parser.add_argument("--workers", type=_int_like, help="Worker threads for draw batches (default: 1)")
    return parser


def parse_args(args: List[str]) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Args:
        args (List[str]): Command-line arguments

    Returns:
        argparse.Namespace: Parsed arguments; only flags actually given carry config values

    Raises:
        ConfigurationError: On usage errors
    """
    namespace = build_parser().parse_args(args)
    if not namespace.list_algorithms and namespace.command is None:
        raise ConfigurationError("A command is required: fit, benchmark or truncation")
    return namespace


def configure_logging(level: Optional[str], verbose: bool) -> None:
    """Configure the root logger once for the whole run."""
    name = level or ('INFO' if verbose else 'WARNING')
    logging.basicConfig(
        level=getattr(logging, name),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def cli_values(namespace: argparse.Namespace) -> Dict[str, Any]:
    """Configuration values given on the command line."""
    return {key: value for key, value in vars(namespace).items() if key not in _NON_CONFIG}


def list_algorithms() -> None:
    """Display available algorithms."""
    print("\nAvailable algorithms:")
    for name in SAMPLER_INFO['samplers']:
        print(f"  - {name}")


def load_dataset(config: RunConfig) -> Dataset:
    """
    Data set of a fit run: the input file, or the synthetic generator.

    Raises:
        ConfigurationError: If neither an input file nor a generator is given
        DataFormatError: If the input file cannot be read
    """
    grouped = config.algorithm == 'gmddp-ics'
    if config.input:
        return ingest_csv(config.input, require_groups=grouped)
    if config.synthetic:
        return synthetic_dataset(config.synthetic, config.n, config.seed,
                                 GMDDP_SYNTHETIC_GROUPS if grouped else 0)
    raise ConfigurationError("fit needs --input or --synthetic")


def cmd_fit(config: RunConfig) -> List[str]:
    """Run the fit command; returns the paths written."""
    dataset = load_dataset(config)
    print(f"Data: {dataset}")
    trace, summaries, chain, standardizer = fit(config, dataset)
    paths = create_report_generator(config.output).write_fit(trace, summaries, config, chain,
                                                             dataset, standardizer)
    summary = trace.get_summary()
    print(f"{config.algorithm}: {summary['retained_iterations']} retained iterations, "
          f"mean k_n {summary['mean_k_n']:.2f}, cap hits {summary['cap_hit_count']}, "
          f"{summary['total_seconds']:.2f} s")
    return paths


def cmd_benchmark(config: RunConfig) -> List[str]:
    """Run the benchmark command; returns the paths written."""
    grouped = 'gmddp-ics' in config.algorithms
    dataset = ingest_csv(config.input, require_groups=grouped) if config.input else None
    records = run_benchmark(config, dataset)
    print(f"Benchmark: {len(records)} replicate run(s)")
    return create_report_generator(config.output).write_benchmark(records, config)


def cmd_truncation(config: RunConfig) -> List[str]:
    """Run the truncation command; returns the paths written."""
    executor = concurrent.futures.ThreadPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        reports = truncation_study(config.seed, config.ns, config.sigmas, config.thetas,
                                   config.thresholds, config.reps, config.cap, executor)
    finally:
        if executor is not None:
            executor.shutdown(wait=True)
    for report in reports:
        print(f"sigma={report.sigma} theta={report.theta} n={report.n}: "
              f"median M_n {report.quantiles['median']:g}, "
              + ", ".join(f"P(M_n > {k:g}) = {p:.3f}" for k, p in zip(report.thresholds, report.exceedance)))
    return create_report_generator(config.output).write_truncation(reports, config)


COMMAND_HANDLERS = {
    'fit': cmd_fit,
    'benchmark': cmd_benchmark,
    'truncation': cmd_truncation,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point for the CLI.

    Args:
        argv (Optional[List[str]]): Arguments; defaults to sys.argv[1:]

    Returns:
        int: Process exit code
    """
    try:
        namespace = parse_args(sys.argv[1:] if argv is None else argv)
        configure_logging(namespace.log_level if 'log_level' in namespace else None,
                          getattr(namespace, 'verbose', False))
        if namespace.list_algorithms:
            list_algorithms()
            return EXIT_OK

        config = load_run_config(cli_values(namespace), getattr(namespace, 'config', None))
        paths = COMMAND_HANDLERS[config.command](config)
        print(f"Results saved to: {config.output} ({len(paths)} files)")
        return EXIT_OK

    except ICSMixtureError as e:
        logger.debug("Run failed", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
