"""
Configuration file support for ccuc.

Reads settings from ``~/.ccuc/config.toml`` (TOML format). On Python 3.11+
the built-in ``tomllib`` is used; on 3.10 a minimal TOML subset parser is
provided so we don't require an extra dependency. The same parser loads
experiment config files.
"""

import copy
import logging
import os
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

# Default config directory and file
CONFIG_DIR = os.path.join(os.path.expanduser("~"), ".ccuc")
CONFIG_FILE = os.path.join(CONFIG_DIR, "config.toml")

# Environment variable overriding solver.backend
SOLVER_ENV_VAR = "CCUC_SOLVER"

# Default configuration values
DEFAULTS: Dict[str, Any] = {
    "solver": {
        "backend": "scipy",
        "mip_gap": 1e-4,
        "time_limit": 0.0,  # 0 = no limit
        "pyomo_solver": "appsi_highs",
    },
    "run": {
        "jobs": 1,
        "seed": 0,
        "out": ".",
    },
}


def _parse_scalar(value: str) -> Any:
    """Parse a single TOML scalar (string, bool, int or float)."""
    if value.lower() == "true":
        return True
    if value.lower() == "false":
        return False
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        return value[1:-1]
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        return value


def _parse_toml(text: str) -> Dict[str, Any]:
    """Parse TOML using tomllib (3.11+) or a minimal fallback."""
    try:
        import tomllib  # noqa: F811  (Python 3.11+)

        return tomllib.loads(text)
    except ModuleNotFoundError:
        pass

    # Minimal fallback: handles key = "value", key = true/false, numbers,
    # flat arrays of scalars and [section] headers.
    result: Dict[str, Any] = {}
    current_section: Optional[Dict[str, Any]] = None

    for raw_line in text.splitlines():
        line = raw_line.split(" #", 1)[0].strip()
        if not line or line.startswith("#"):
            continue

        if line.startswith("[") and line.endswith("]"):
            section_name = line[1:-1].strip()
            current_section = result.setdefault(section_name, {})
            continue

        if "=" not in line:
            continue

        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()

        parsed_value: Any
        if value.startswith("[") and value.endswith("]"):
            inner = value[1:-1].strip()
            if not inner:
                parsed_value = []
            else:
                parsed_value = [
                    _parse_scalar(item.strip())
                    for item in inner.split(",")
                    if item.strip()
                ]
        else:
            parsed_value = _parse_scalar(value)

        target = current_section if current_section is not None else result
        target[key] = parsed_value

    return result


def load_toml(path: str) -> Dict[str, Any]:
    """Read and parse a TOML document.

    Raises:
        OSError: If the file cannot be read.
    """
    with open(path, "r", encoding="utf-8") as f:
        return _parse_toml(f.read())


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Load configuration from a TOML file.

    Args:
        path: Path to the config file. Defaults to ``~/.ccuc/config.toml``.

    Returns:
        Nested dict of defaults overlaid with file values. If the file does
        not exist or cannot be parsed, defaults are returned.
    """
    config_path = path or CONFIG_FILE

    merged = copy.deepcopy(DEFAULTS)

    if not os.path.isfile(config_path):
        return merged

    try:
        parsed = load_toml(config_path)

        for key, value in parsed.items():
            if isinstance(value, dict) and isinstance(merged.get(key), dict):
                merged[key].update(value)
            else:
                merged[key] = value

        logger.debug("Loaded config from %s", config_path)
    except Exception as e:
        logger.warning("Could not parse config %s: %s", config_path, e)

    return merged


def get_setting(config: Dict[str, Any], dotted_key: str, default: Any = None) -> Any:
    """Look up ``section.key`` in a nested config dict."""
    node: Any = config
    for part in dotted_key.split("."):
        if not isinstance(node, dict) or part not in node:
            return default
        node = node[part]
    return node


def solver_backend_name(config: Optional[Dict[str, Any]] = None) -> str:
    """Resolve the MILP backend name: ``CCUC_SOLVER`` beats the config file."""
    env_value = os.environ.get(SOLVER_ENV_VAR, "").strip()
    if env_value:
        return env_value
    if config is None:
        config = load_config()
    return str(get_setting(config, "solver.backend", DEFAULTS["solver"]["backend"]))


def init_config(path: Optional[str] = None) -> str:
    """Create a default config file if one doesn't exist.

    Args:
        path: Path to write. Defaults to ``~/.ccuc/config.toml``.

    Returns:
        The path of the config file.
    """
    config_path = path or CONFIG_FILE
    config_dir = os.path.dirname(config_path)

    os.makedirs(config_dir or ".", mode=0o700, exist_ok=True)

    if os.path.exists(config_path):
        return config_path

    template = """\
# ccuc configuration
# The CCUC_SOLVER environment variable overrides solver.backend.

[solver]
# MILP backend: "scipy" (HiGHS through scipy.optimize.milp) or "pyomo"
backend = "scipy"

# Relative MIP gap at which solving stops
mip_gap = 0.0001

# Time limit per solve in seconds (0 = none)
time_limit = 0

# Solver used by the pyomo backend
pyomo_solver = "appsi_highs"

[run]
# Worker threads for independent solves
jobs = 1

# Base seed for scenario sampling
seed = 0

# Directory for output files
out = "."
"""

    try:
        with open(config_path, "w", encoding="utf-8") as f:
            f.write(template)
        logger.info("Created default config at %s", config_path)
    except OSError as e:
        logger.warning("Could not write config file: %s", e)

    return config_path


def apply_config_to_args(args, config: Dict[str, Any]) -> None:
    """Apply config values as defaults for CLI args.

    CLI flags always take precedence. Config values are only applied
    when the CLI flag was not explicitly set (left at ``None``).
    """
    fallbacks = {
        "mip_gap": get_setting(config, "solver.mip_gap"),
        "time_limit": get_setting(config, "solver.time_limit"),
        "jobs": get_setting(config, "run.jobs"),
        "seed": get_setting(config, "run.seed"),
        "out": get_setting(config, "run.out"),
    }
    for flag, value in fallbacks.items():
        if getattr(args, flag, None) is None:
            setattr(args, flag, value)

    if getattr(args, "backend", None) is None:
        args.backend = solver_backend_name(config)
