"""
Description: experiment configuration. YAML text is bound strictly to
dataclasses: every key must be known, omitted keys take the dataclass
defaults, and any failure is reported as a ConfigError naming the dotted path
of the offending field (and the line, for YAML syntax errors).
"""
from __future__ import annotations

import copy
import math
import os
from dataclasses import MISSING, asdict, dataclass, field, fields, is_dataclass
from typing import Any, Dict, List, Optional, Tuple

import yaml

from experimentManager.registry import MODELS
from simModel.common.errors import MarketSimError
from simModel.common.rng import SEED_MASK
from simModel.thurner import FundSpec, ThurnerParams
from utils.load_config import load_config as read_config_file, parse_config

PRESET_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "presets")

# list-valued parameters whose items are mappings bound to a dataclass
LIST_ITEM_TYPES = {(ThurnerParams, "funds"): FundSpec}


class ConfigError(MarketSimError):
    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None) -> None:
        location = f"line {line}: " if line is not None else ""
        super().__init__(f"{location}{message}")
        self.line = line
        self.field = field


@dataclass
class SweepConfig:
    param: str
    values: List[Any]


@dataclass
class AnalysisConfig:
    max_lag: int = 100
    tail_fraction: float = 0.01
    vol_proxy: str = "abs"
    vol_lag_range: List[int] = field(default_factory=lambda: [1, 100])
    aggregation_lags: List[int] = field(default_factory=lambda: [1, 10, 100])
    return_kind: str = "log"
    active_only: bool = True
    equilibrium_check: bool = False
    histogram_bins: int = 50
    predictability_window: int = 0
    soc_band: Optional[List[float]] = None

    def __post_init__(self):
        if self.max_lag < 1:
            raise ValueError(f"max_lag must be >= 1, got {self.max_lag}")
        if not 0.0 < self.tail_fraction < 1.0:
            raise ValueError(f"tail_fraction must lie in (0, 1), got {self.tail_fraction}")
        if self.vol_proxy not in ("abs", "square"):
            raise ValueError(f"vol_proxy must be abs or square, got {self.vol_proxy}")
        if len(self.vol_lag_range) != 2 or not 1 <= self.vol_lag_range[0] < self.vol_lag_range[1]:
            raise ValueError(f"vol_lag_range must be [lo, hi] with 1 <= lo < hi, got {self.vol_lag_range}")
        if any(lag < 1 for lag in self.aggregation_lags):
            raise ValueError("aggregation_lags must be >= 1")
        if self.return_kind not in ("log", "difference"):
            raise ValueError(f"return_kind must be log or difference, got {self.return_kind}")
        if self.histogram_bins < 2:
            raise ValueError(f"histogram_bins must be >= 2, got {self.histogram_bins}")
        if self.predictability_window < 0:
            raise ValueError("predictability_window must be >= 0")
        if self.soc_band is not None and (len(self.soc_band) != 2 or self.soc_band[0] >= self.soc_band[1]):
            raise ValueError(f"soc_band must be [lo, hi] with lo < hi, got {self.soc_band}")


@dataclass
class ExperimentConfig:
    model: str
    steps: int
    params: Dict[str, Any] = field(default_factory=dict)
    burn_in: int = 0
    seed: int = 0
    sweep: Optional[SweepConfig] = None
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    output_dir: str = "output"
    workers: int = 1
    name: str = "experiment"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def params_for(self, value: Any = MISSING) -> Dict[str, Any]:
        """raw parameter mapping with the sweep value applied"""
        params = copy.deepcopy(self.params)
        if value is not MISSING and self.sweep is not None:
            set_dotted(params, self.sweep.param, value)
        return params


def set_dotted(mapping: Dict[str, Any], dotted: str, value: Any) -> None:
    keys = dotted.split(".")
    for key in keys[:-1]:
        mapping = mapping.setdefault(key, {})
    mapping[keys[-1]] = value


def _init_fields(cls) -> Dict[str, Any]:
    return {f.name: f for f in fields(cls) if f.init}


def _default_of(f) -> Any:
    if f.default is not MISSING:
        return f.default
    if f.default_factory is not MISSING:
        return f.default_factory()
    return MISSING


def _check_type(value: Any, default: Any, path: str) -> None:
    if default is MISSING or default is None or value is None:
        return
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"'{path}' must be true or false, got {value!r}", field=path)
    elif isinstance(default, int) and not isinstance(default, bool):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or \
                (isinstance(value, float) and not value.is_integer()):
            raise ConfigError(f"'{path}' must be an integer, got {value!r}", field=path)
    elif isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"'{path}' must be a number, got {value!r}", field=path)
    elif isinstance(default, list) and not isinstance(value, list):
        raise ConfigError(f"'{path}' must be a list, got {value!r}", field=path)


def _coerce(value: Any, default: Any) -> Any:
    if isinstance(default, int) and not isinstance(default, bool) and isinstance(value, float):
        return int(value)
    if isinstance(default, float) and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    return value


def bind_dataclass(cls, data: Any, path: str):
    """Build `cls` from a mapping, rejecting unknown keys and mistyped scalars."""
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"'{path}' must be a mapping, got {data!r}", field=path)
    known = _init_fields(cls)
    kwargs = {}
    for key, value in data.items():
        dotted = f"{path}.{key}"
        if key not in known:
            raise ConfigError(f"unknown key '{dotted}'", field=dotted)
        default = _default_of(known[key])
        if is_dataclass(default) and not isinstance(default, type):
            value = bind_dataclass(type(default), value, dotted)
        elif (cls, key) in LIST_ITEM_TYPES and value is not None:
            if not isinstance(value, list):
                raise ConfigError(f"'{dotted}' must be a list", field=dotted)
            item_cls = LIST_ITEM_TYPES[(cls, key)]
            value = [bind_dataclass(item_cls, item, f"{dotted}[{i}]") for i, item in enumerate(value)]
        else:
            _check_type(value, default, dotted)
            value = _coerce(value, default)
        kwargs[key] = value
    try:
        return cls(**kwargs)
    except (ValueError, TypeError) as exc:
        message = str(exc)
        name = message.split()[0].strip("|'") if message else ""
        dotted = f"{path}.{name}" if name in known else path
        raise ConfigError(f"'{dotted}': {message}", field=dotted) from exc


def bind_params(model: str, params: Dict[str, Any], path: str = "params"):
    if model not in MODELS:
        raise ConfigError(f"unknown model '{model}', expected one of {sorted(MODELS)}", field="model")
    return bind_dataclass(MODELS[model].params_cls, params, path)


def _require(data: Dict[str, Any], key: str) -> Any:
    if key not in data:
        raise ConfigError(f"missing required key '{key}'", field=key)
    return data[key]


def config_from_dict(data: Dict[str, Any]) -> ExperimentConfig:
    known = _init_fields(ExperimentConfig)
    for key in data:
        if key not in known:
            raise ConfigError(f"unknown key '{key}'", field=key)

    model = _require(data, "model")
    if model not in MODELS:
        raise ConfigError(f"unknown model '{model}', expected one of {sorted(MODELS)}", field="model")
    steps = _require(data, "steps")
    _check_type(steps, 1, "steps")
    defaults = ExperimentConfig(model=model, steps=int(steps))
    for key in ("burn_in", "seed", "workers"):
        _check_type(data.get(key), getattr(defaults, key), key)
    for key in ("output_dir", "name"):
        if key in data and not isinstance(data[key], str):
            raise ConfigError(f"'{key}' must be a string", field=key)

    sweep = None
    if data.get("sweep") is not None:
        sweep = bind_dataclass(SweepConfig, data["sweep"], "sweep")
        if not isinstance(sweep.values, list) or not sweep.values:
            raise ConfigError("'sweep.values' needs at least one value", field="sweep.values")
        for value in sweep.values:
            if isinstance(value, float) and not math.isfinite(value):
                raise ConfigError(f"'sweep.values' must be finite, got {value}", field="sweep.values")

    params = data.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigError("'params' must be a mapping", field="params")

    config = ExperimentConfig(
        model=model,
        steps=int(steps),
        params=params,
        burn_in=int(data.get("burn_in", 0)),
        seed=int(data.get("seed", 0)),
        sweep=sweep,
        analysis=bind_dataclass(AnalysisConfig, data.get("analysis"), "analysis"),
        output_dir=data.get("output_dir", "output"),
        workers=int(data.get("workers", 1)),
        name=data.get("name", "experiment"),
    )
    if config.steps < 1:
        raise ConfigError(f"'steps' must be >= 1, got {config.steps}", field="steps")
    if not 0 <= config.burn_in < config.steps:
        raise ConfigError(f"'burn_in' must lie in [0, steps), got {config.burn_in}", field="burn_in")
    if not 0 <= config.seed <= SEED_MASK:
        raise ConfigError(f"'seed' must be a 64-bit unsigned integer, got {config.seed}", field="seed")
    if config.workers < 1:
        raise ConfigError(f"'workers' must be >= 1, got {config.workers}", field="workers")

    # bind every point now so a bad value fails before any run starts
    for value in (sweep.values if sweep else [MISSING]):
        path = "params" if value is MISSING else f"params[{sweep.param}={value}]"
        bind_params(model, config.params_for(value), path)
    return config


def _parsed(parse, source: str) -> Dict[str, Any]:
    try:
        return parse(source)
    except yaml.MarkedYAMLError as exc:
        line = exc.problem_mark.line + 1 if exc.problem_mark is not None else None
        raise ConfigError(f"cannot parse configuration: {exc.problem}", line=line) from exc
    except (yaml.YAMLError, TypeError) as exc:
        raise ConfigError(f"cannot parse configuration: {exc}") from exc


def load_config(text: str) -> ExperimentConfig:
    """Parse and validate experiment configuration text.

    Raises:
        ConfigError: syntax error (with line number) or validation error (with field).
    """
    return config_from_dict(_parsed(parse_config, text))


def load_config_file(path: str) -> ExperimentConfig:
    try:
        data = _parsed(read_config_file, path)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    return config_from_dict(data)


def preset_names() -> List[str]:
    return sorted(os.path.splitext(name)[0] for name in os.listdir(PRESET_DIR) if name.endswith(".yaml"))


def load_preset(name: str) -> ExperimentConfig:
    path = os.path.join(PRESET_DIR, f"{name}.yaml")
    if not os.path.isfile(path):
        raise ConfigError(f"unknown preset '{name}', expected one of {preset_names()}", field="preset")
    return load_config_file(path)


def preset_description(name: str) -> Tuple[str, str]:
    """(model, first comment line) of a preset file"""
    with open(os.path.join(PRESET_DIR, f"{name}.yaml"), "r", encoding="utf-8") as f:
        text = f.read()
    comment = next((line.lstrip("# ").strip() for line in text.splitlines() if line.startswith("#")), "")
    return parse_config(text).get("model", ""), comment
