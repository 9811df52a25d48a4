"""Merges command-line flags, the optional TOML file and built-in defaults."""

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from rdc_kernels.enumerators import StepRule, VerifyScope
from rdc_kernels.errors import ConfigurationError
from rdc_kernels.solver import DEFAULT_SEED

OUTPUT_DIR_VARIABLE = "RDC_OUTPUT_DIR"

COMMAND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "rdc": {
        "q_x": None,
        "q_s1": None,
        "c": None,
        "d_min": 0.0,
        "d_max": 1.0,
        "samples": 101,
        "mode": "oneshot",
    },
    "drc": {
        "q_x": None,
        "q_s1": None,
        "axis": "r",
        "r": None,
        "c": None,
        "min": 0.0,
        "max": 1.0,
        "samples": 101,
        "mode": "oneshot",
    },
    "dc": {
        "channel": None,
        "q_s1": None,
        "c_min": None,
        "c_max": 1.0,
        "samples": 101,
    },
    "universal": {
        "q_x": None,
        "q_s1": None,
        "r": None,
        "c_min": None,
        "c_max": 1.0,
        "c_samples": 101,
    },
    "verify": {
        "scope": VerifyScope.ALL.value,
        "resolution": None,
    },
}
SHARED_DEFAULTS: Dict[str, Any] = {
    "format": "csv",
    "output": None,
    "workers": 1,
    "log_level": "WARNING",
    "log_file": None,
}
SOLVER_DEFAULTS: Dict[str, Any] = {
    "seed": DEFAULT_SEED,
    "starts": 16,
    "max_iterations": 100_000,
    "gap_tolerance": 1e-9,
    "step_rule": StepRule.OPEN_LOOP.value,
    "literal_upper": False,
}

OPTION_TYPES = {
    "samples": int,
    "c_samples": int,
    "resolution": int,
    "workers": int,
    "seed": int,
    "starts": int,
    "max_iterations": int,
    "literal_upper": bool,
    "mode": str,
    "axis": str,
    "scope": str,
    "format": str,
    "output": str,
    "channel": str,
    "log_level": str,
    "log_file": str,
    "step_rule": str,
}
CHOICES = {
    "mode": ("oneshot", "asymptotic"),
    "axis": ("r", "c"),
    "scope": tuple(scope.value for scope in VerifyScope),
    "format": ("csv", "json"),
    "step_rule": tuple(rule.value for rule in StepRule),
    "log_level": ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"),
}


def load_config(path: Optional[str]) -> Dict[str, Dict[str, Any]]:
    if path is None:
        return {}
    with open(path, "rb") as config_file:
        config = tomllib.load(config_file)

    known = set(COMMAND_DEFAULTS) | {"solver"}
    for table, values in config.items():
        if table not in known:
            raise ConfigurationError(f"{path}: unknown table [{table}]")
        if not isinstance(values, dict):
            raise ConfigurationError(f"{path}: [{table}] must be a table")
    return config


def _coerce(key: str, value: Any) -> Any:
    if value is None:
        return None
    kind = OPTION_TYPES.get(key, float)
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigurationError(f"option {key} must be true or false, got {value!r}")
        return value
    if kind is not str and isinstance(value, str):
        raise ConfigurationError(f"option {key} must be a number, got {value!r}")
    if kind is int and (isinstance(value, bool) or not float(value).is_integer()):
        raise ConfigurationError(f"option {key} must be an integer, got {value!r}")
    value = kind(value)
    if key == "log_level":
        value = value.upper()
    if key in CHOICES and value not in CHOICES[key]:
        raise ConfigurationError(f"option {key} must be one of {', '.join(CHOICES[key])}, got {value!r}")
    return value


def resolve_options(command: str, args: argparse.Namespace, config: Dict[str, Dict[str, Any]]) -> Dict[str, Any]:
    """
    Returns every option of a command with precedence flag > config file > default.

    Command options and the shared output options are read from the command's table; solver options
    and the seed from the [solver] table.
    """
    sections = [(config.get(command, {}), {**COMMAND_DEFAULTS[command], **SHARED_DEFAULTS})]
    sections.append((config.get("solver", {}), SOLVER_DEFAULTS))

    options = {}
    for table, defaults in sections:
        unknown = set(table) - set(defaults)
        if unknown:
            raise ConfigurationError(f"unknown option(s) for {command}: {', '.join(sorted(unknown))}")
        for key, default in defaults.items():
            flag = getattr(args, key, None)
            value = flag if flag is not None else table.get(key, default)
            options[key] = _coerce(key, value)
    return options


def output_path(output: str) -> Path:
    path = Path(output)
    directory = os.environ.get(OUTPUT_DIR_VARIABLE)
    if directory and not path.is_absolute():
        return Path(directory) / path
    return path
