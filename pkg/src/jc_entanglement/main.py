"""Command-line entry point."""

import logging
import sys
from collections.abc import Sequence

from pydantic import ValidationError

from jc_entanglement import __version__
from jc_entanglement.commands import build_parser
from jc_entanglement.commands.common import load_run_config
from jc_entanglement.config import Settings, get_settings
from jc_entanglement.services.base import CheckFailedError, SimulationError

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
CONFIG_ERROR_EXIT = 2

logger = logging.getLogger(__name__)


def configure_logging(level: str, verbose: bool = False, debug: bool = False) -> None:
    """Log to stderr; --debug beats --verbose beats JC_LOG_LEVEL."""
    if debug:
        level = "DEBUG"
    elif verbose:
        level = "INFO"
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("jc_entanglement").setLevel(level)


def log_startup(settings: Settings) -> None:
    """Report the version, key settings and configuration warnings."""
    logger.info("Starting %s v%s", settings.app_name, __version__)
    logger.info("Default truncation: n_max=%d", settings.default_n_max)
    logger.info(
        "Tolerances: spectrum=%g evolution=%g lindblad=%g",
        settings.spectrum_tolerance,
        settings.evolution_tolerance,
        settings.lindblad_tolerance,
    )

    warnings = settings.validate_runtime_config()
    if warnings:
        logger.warning("Configuration warnings:")
        for warning in warnings:
            logger.warning("  - %s", warning)
    else:
        logger.info("Configuration validation passed - no warnings")


def validation_error_handler(exc: ValidationError) -> int:
    """Invalid flags, config-file values or settings."""
    messages = "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}" for err in exc.errors()
    )
    print(f"error: invalid configuration: {messages}", file=sys.stderr)
    return CONFIG_ERROR_EXIT


def missing_file_handler(exc: FileNotFoundError) -> int:
    """Config file given with --config does not exist."""
    print(f"error: {exc}", file=sys.stderr)
    return CONFIG_ERROR_EXIT


def check_failed_handler(exc: CheckFailedError) -> int:
    """Tolerance breach in --check or verify."""
    print(f"error: {exc}", file=sys.stderr)
    for failure in exc.failures:
        logger.info("Failed: %s", failure)
    return exc.exit_code


def simulation_error_handler(exc: SimulationError) -> int:
    """Every other simulation error, with the exit code it carries."""
    print(f"error: {exc}", file=sys.stderr)
    return exc.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)

    try:
        settings = get_settings()
    except ValidationError as e:
        configure_logging("WARNING")
        return validation_error_handler(e)

    configure_logging(settings.log_level, verbose=args.verbose, debug=args.debug)
    log_startup(settings)

    try:
        config = load_run_config(args)
        return args.handler(config, settings)
    except ValidationError as e:
        return validation_error_handler(e)
    except FileNotFoundError as e:
        return missing_file_handler(e)
    except CheckFailedError as e:
        return check_failed_handler(e)
    except SimulationError as e:
        return simulation_error_handler(e)


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
