"""JSON experiment-config parsing and serialization (schema "dnls-1").

A config document is one JSON object.  Required keys: alpha, beta, gamma,
eta, L, N, dt, T, u0 (an object {type, center, width}).  Optional keys:
protocol, scheme, snapshots, dealias, norm, levels, sweep ({param, values}).
Unknown keys are rejected with the offending key path.
"""

import json
from dataclasses import replace

from .experiments import NORMS, PROTOCOLS, U0_PROFILES, ExperimentConfig
from .model import ModelParams
from .steppers import SCHEMES

__all__ = ["ConfigError", "parse_config", "serialize_config", "config_to_dict"]

SCHEMA_VERSION = "dnls-1"

_REQUIRED = ("alpha", "beta", "gamma", "eta", "L", "N", "dt", "T", "u0")
_OPTIONAL = ("protocol", "scheme", "snapshots", "dealias", "norm", "levels", "sweep")


class ConfigError(ValueError):
    """Config document rejected; `path` names the offending key."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _require_number(obj, key, path, integer=False):
    if key not in obj:
        raise ConfigError(f"{path}{key}", "missing required key")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}{key}", f"expected a number, got {value!r}")
    if integer:
        if int(value) != value:
            raise ConfigError(f"{path}{key}", f"expected an integer, got {value!r}")
        return int(value)
    return float(value)


def _check_choice(value, choices, path):
    if not isinstance(value, str) or value not in choices:
        raise ConfigError(path, f"expected one of {sorted(choices)}, got {value!r}")
    return value


def parse_config(text):
    """Parse and validate a JSON config document into an ExperimentConfig."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError("", f"invalid JSON: {err}") from None
    if not isinstance(raw, dict):
        raise ConfigError("", f"expected a JSON object, got {type(raw).__name__}")

    missing = [key for key in _REQUIRED if key not in raw]
    if missing:
        raise ConfigError("", "missing required keys: " + ", ".join(missing))
    unknown = [key for key in raw if key not in _REQUIRED + _OPTIONAL]
    if unknown:
        raise ConfigError(unknown[0], "unknown key")

    u0 = raw["u0"]
    if not isinstance(u0, dict):
        raise ConfigError("u0", f"expected an object, got {u0!r}")
    unknown = [key for key in u0 if key not in ("type", "center", "width")]
    if unknown:
        raise ConfigError(f"u0.{unknown[0]}", "unknown key")
    profile = _check_choice(u0.get("type"), U0_PROFILES, "u0.type")
    center = 0.0
    width = 1.0
    if profile == "gaussian":
        center = _require_number(u0, "center", "u0.")
        if "width" in u0:
            width = _require_number(u0, "width", "u0.")
    elif "center" in u0 or "width" in u0:
        raise ConfigError("u0", "profile 'zero' takes no parameters")

    kwargs = {}
    if "sweep" in raw:
        sweep = raw["sweep"]
        if not isinstance(sweep, dict):
            raise ConfigError("sweep", f"expected an object, got {sweep!r}")
        unknown = [key for key in sweep if key not in ("param", "values")]
        if unknown:
            raise ConfigError(f"sweep.{unknown[0]}", "unknown key")
        if "param" in sweep:
            kwargs["sweep_param"] = _check_choice(sweep["param"], ("eta", "beta"), "sweep.param")
        if "values" in sweep:
            values = sweep["values"]
            if not isinstance(values, list) or not all(
                isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
            ):
                raise ConfigError("sweep.values", f"expected a list of numbers, got {values!r}")
            kwargs["sweep_values"] = tuple(float(v) for v in values)
    if "protocol" in raw:
        kwargs["protocol"] = _check_choice(raw["protocol"], PROTOCOLS, "protocol")
    if "scheme" in raw:
        kwargs["scheme"] = _check_choice(raw["scheme"], tuple(SCHEMES), "scheme")
    if "dealias" in raw:
        kwargs["dealias"] = _check_choice(raw["dealias"], ("pad2", "none"), "dealias")
    if "norm" in raw:
        kwargs["norm"] = _check_choice(raw["norm"], NORMS, "norm")
    if "snapshots" in raw:
        kwargs["snapshots"] = _require_number(raw, "snapshots", "", integer=True)
    if "levels" in raw:
        kwargs["levels"] = _require_number(raw, "levels", "", integer=True)

    try:
        params = ModelParams(
            alpha=_require_number(raw, "alpha", ""),
            beta=_require_number(raw, "beta", ""),
            gamma=_require_number(raw, "gamma", ""),
            eta=_require_number(raw, "eta", ""),
        )
        return ExperimentConfig(
            params=params,
            L=_require_number(raw, "L", ""),
            N=_require_number(raw, "N", "", integer=True),
            dt=_require_number(raw, "dt", ""),
            T=_require_number(raw, "T", ""),
            u0_profile=profile,
            u0_center=center,
            u0_width=width,
            **kwargs,
        )
    except ConfigError:
        raise
    except ValueError as err:
        raise ConfigError("", str(err)) from None


def config_to_dict(config):
    """Flatten an ExperimentConfig back into its JSON-document form."""
    doc = {
        "alpha": config.params.alpha,
        "beta": config.params.beta,
        "gamma": config.params.gamma,
        "eta": config.params.eta,
        "L": config.L,
        "N": config.N,
        "dt": config.dt,
        "T": config.T,
        "u0": {"type": config.u0_profile},
        "protocol": config.protocol,
        "scheme": config.scheme,
        "snapshots": config.snapshots,
        "dealias": config.dealias,
        "norm": config.norm,
    }
    if config.u0_profile == "gaussian":
        doc["u0"]["center"] = config.u0_center
        doc["u0"]["width"] = config.u0_width
    if config.levels is not None:
        doc["levels"] = config.levels
    if config.sweep_param is not None or config.sweep_values is not None:
        doc["sweep"] = {}
        if config.sweep_param is not None:
            doc["sweep"]["param"] = config.sweep_param
        if config.sweep_values is not None:
            doc["sweep"]["values"] = list(config.sweep_values)
    return doc


def serialize_config(config):
    """JSON text such that parse_config(serialize_config(c)) == c."""
    return json.dumps(config_to_dict(config), indent=2)
