import argparse
import logging
from typing import Optional, Sequence

from rdc_app.config import CHOICES, load_config, resolve_options
from rdc_app.logger import configure_logger
from rdc_app.services.curves import CurveService
from rdc_app.services.emission import EmissionService
from rdc_app.services.verification import VerificationService
from rdc_kernels.enumerators import VerifyScope
from rdc_kernels.errors import ConfigurationError, ConvergenceError, InfeasibleProblemError, LinearSubproblemError, \
    SolverDisagreementError

EXIT_SUCCESS = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_SOLVER_FAILED = 4

REQUIRED_OPTIONS = {
    "rdc": ("q_x", "q_s1", "c"),
    "drc": ("q_x", "q_s1"),
    "dc": ("channel", "q_s1"),
    "universal": ("q_x", "q_s1", "r"),
    "verify": (),
}


def _add_shared_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=CHOICES["format"])
    parser.add_argument("--output", help="output file; stdout when omitted")
    parser.add_argument("--workers", type=int, help="sweep worker threads")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--config", help="TOML file with one table per command and a [solver] table")
    parser.add_argument("--log-level", type=str.upper, choices=CHOICES["log_level"])
    parser.add_argument("--log-file")


def _add_model_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q-x", type=float, help="P(X = 1)")
    parser.add_argument("--q-s1", type=float, help="P(S1 = 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdc_app", description="Rate-distortion-classification curves")
    commands = parser.add_subparsers(dest="command", required=True)

    rdc = commands.add_parser("rdc", help="rate versus distortion at a fixed classification budget")
    _add_model_options(rdc)
    rdc.add_argument("--c", type=float)
    rdc.add_argument("--d-min", type=float)
    rdc.add_argument("--d-max", type=float)
    rdc.add_argument("--samples", type=int)
    rdc.add_argument("--mode", choices=CHOICES["mode"])

    drc = commands.add_parser("drc", help="distortion versus rate or classification budget")
    _add_model_options(drc)
    drc.add_argument("--axis", choices=CHOICES["axis"], help="swept budget")
    drc.add_argument("--r", type=float, help="fixed rate when sweeping c")
    drc.add_argument("--c", type=float, help="fixed classification budget when sweeping r")
    drc.add_argument("--min", type=float)
    drc.add_argument("--max", type=float)
    drc.add_argument("--samples", type=int)
    drc.add_argument("--mode", choices=CHOICES["mode"])

    dc = commands.add_parser("dc", help="lower boundary of the distortion-classification region")
    dc.add_argument("--channel", help='JSON file {"q": [...], "eps": [...]}')
    dc.add_argument("--q-s1", type=float)
    dc.add_argument("--c-min", type=float)
    dc.add_argument("--c-max", type=float)
    dc.add_argument("--samples", type=int)

    universal = commands.add_parser("universal", help="distortion at the universal rate bounds")
    _add_model_options(universal)
    universal.add_argument("--r", type=float)
    universal.add_argument("--c-min", type=float)
    universal.add_argument("--c-max", type=float)
    universal.add_argument("--c-samples", type=int)
    universal.add_argument("--starts", type=int)
    universal.add_argument("--max-iterations", type=int)
    universal.add_argument("--gap-tolerance", type=float)
    universal.add_argument("--step-rule", choices=CHOICES["step_rule"])
    universal.add_argument("--literal-upper", action="store_const", const=True)

    verify = commands.add_parser("verify", help="run the oracle suite")
    verify.add_argument("--scope", choices=CHOICES["scope"])
    verify.add_argument("--resolution", type=int)

    for subparser in (rdc, drc, dc, universal, verify):
        _add_shared_options(subparser)
    return parser


def _check_required(command: str, options: dict) -> None:
    required = list(REQUIRED_OPTIONS[command])
    if command == "drc":
        required.append("c" if options["axis"] == "r" else "r")
    missing = [key for key in required if options[key] is None]
    if missing:
        flags = ", ".join("--" + key.replace("_", "-") for key in missing)
        raise ConfigurationError(f"{command}: missing required option(s) {flags}")


def run_command(command: str, options: dict, logger: logging.Logger) -> int:
    if command == "verify":
        service = VerificationService(VerifyScope(options["scope"]), options["resolution"], options["seed"], logger)
        checks = service.run()
        for check in checks:
            print(check.describe())
        failed = sum(not check.passed for check in checks)
        print(f"{len(checks) - failed} passed, {failed} failed")
        return EXIT_VERIFICATION_FAILED if failed else EXIT_SUCCESS

    curves = CurveService(options["workers"], logger)
    emission = EmissionService(options["format"], options["output"], logger)
    if command == "universal":
        lower, upper = curves.universal_curves(options)
        emission.emit([("lb", lower), ("ub", upper)])
    else:
        build = {"rdc": curves.rdc_curve, "drc": curves.drc_curve, "dc": curves.dc_curve}[command]
        emission.emit([(None, build(options))])
    return EXIT_SUCCESS


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as error:
        return error.code if isinstance(error.code, int) else EXIT_INVALID_INPUT

    logger = configure_logger()
    try:
        options = resolve_options(args.command, args, load_config(args.config))
        _check_required(args.command, options)
        logger = configure_logger(options["log_level"], options["log_file"])
        return run_command(args.command, options, logger)
    except InfeasibleProblemError as error:
        logger.error(f"Infeasible problem: {error}")
        return EXIT_INFEASIBLE
    except ConvergenceError as error:
        logger.error(f"Solver did not converge: {error}")
        logger.info(f"Best iterate {error.best_iterate} with gap {error.gap:.3e}")
        return EXIT_SOLVER_FAILED
    except (SolverDisagreementError, LinearSubproblemError) as error:
        logger.error(f"Solver failure: {error}")
        return EXIT_SOLVER_FAILED
    except (ValueError, OSError) as error:
        logger.error(f"Invalid input: {error}")
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
