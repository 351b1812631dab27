"""INI-style configuration with environment and command-line overrides.

Precedence, lowest first: built-in defaults, config file, LACSPHERE_* variables,
command-line flags. The file has a [run] section for the common settings and
one section per experiment:

    [run]
    seed = 3
    jobs = 2

    [count]
    dims = 4, 5
    enum_max = 300
"""
import configparser
import os
import re

from ..errors import ConfigError
from .experiments import EXPERIMENTS, SweepConfig

ENV_PREFIX = "LACSPHERE_"
RUN_KEYS = {"seed": int, "jobs": int, "out": str, "budget": int, "tol": float}


def _key_lines(text):
    """(section, key) -> line number, for diagnostics."""
    where, section = {}, None
    for n, line in enumerate(text.splitlines(), 1):
        m = re.match(r"\s*\[([^\]]+)\]", line)
        if m:
            section = m.group(1).strip()
            continue
        m = re.match(r"\s*([^#;=:\s][^=:]*?)\s*[=:]", line)
        if m and section:
            where[(section, m.group(1).strip().lower())] = n
    return where


def read_config_file(path):
    """Parse ``path`` into {section: {key: (raw value, line)}}."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None
    lines = _key_lines(text)
    out = {}
    for section in cp.sections():
        if section != "run" and section not in EXPERIMENTS:
            raise ConfigError(f"{path}: unknown section [{section}]")
        out[section] = {k: (v, lines.get((section, k))) for k, v in cp.items(section)}
    return out


def _parse(converter, raw, where):
    try:
        return converter(raw)
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value {raw!r} ({exc})") from None


def build_config(experiment, path=None, cli=None, env=None):
    """Merge defaults, file, environment and CLI values into a SweepConfig.

    ``cli`` maps run keys and experiment parameter names to already-typed
    values (None means not given).
    """
    env = os.environ if env is None else env
    cli = cli or {}
    exp = EXPERIMENTS[experiment]
    params = {p.name: p for p in exp.params}
    run = {"seed": 0, "jobs": None, "out": "results", "budget": None, "tol": None}
    values = {}

    if path:
        data = read_config_file(path)
        for key, (raw, line) in data.get("run", {}).items():
            where = f"{path}:{line} [run] {key}"
            if key not in RUN_KEYS:
                raise ConfigError(f"{where}: unknown field")
            run[key] = _parse(RUN_KEYS[key], raw, where)
        for key, (raw, line) in data.get(experiment, {}).items():
            where = f"{path}:{line} [{experiment}] {key}"
            if key not in params:
                raise ConfigError(f"{where}: unknown field (expected one of {', '.join(params)})")
            values[key] = _parse(params[key].parse, raw, where)

    for key, conv in RUN_KEYS.items():
        raw = env.get(ENV_PREFIX + key.upper())
        if raw is not None:
            run[key] = _parse(conv, raw, f"${ENV_PREFIX}{key.upper()}")
    for key, p in params.items():
        raw = env.get(ENV_PREFIX + key.upper())
        if raw is not None:
            values[key] = _parse(p.parse, raw, f"${ENV_PREFIX}{key.upper()}")

    for key, v in cli.items():
        if v is None:
            continue
        if key in RUN_KEYS:
            run[key] = v
        elif key in params:
            values[key] = v
        else:
            raise ConfigError(f"unknown option {key}")

    if run["jobs"] is None:
        run["jobs"] = os.cpu_count() or 1
    try:
        return SweepConfig(experiment, values, **run)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
