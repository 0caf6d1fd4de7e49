"""Run configuration: a flat key = value text file shared by all CLI commands.

Lines are `key = value`; blank lines and lines starting with '#' are ignored.
Relative paths resolve against the directory containing the config file, so a
bundled dataset can carry its own runnable config.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import ConfigurationError, ParseError
from .gated import SimilarityGate
from .similarity import Metric


class ModelKind(Enum):
    GATED_USER_USER = "gated_user_user"
    GATED_USER_CONTENT = "gated_user_content"
    SIR = "sir"
    TIPPING = "tipping"
    IC = "ic"


GATED_MODELS = (ModelKind.GATED_USER_USER, ModelKind.GATED_USER_CONTENT)


class EvaluationPolicy(Enum):
    # once: an agent checks its sources only at its wake-up step
    ONCE = "once"
    # every-step: an agent rechecks each step from wake-up until absorbed
    EVERY_STEP = "every-step"


_DEFAULT_SWEEP = (Metric.COSINE, Metric.JACCARD_SET, Metric.DICE, Metric.AVERAGE)


@dataclass
class SimulationConfig:
    edges_path: Path
    users_path: Path
    rumor_path: Path | None = None
    decisions_path: Path | None = None
    out_dir: Path = Path(".")
    max_time: int = 1296
    trials: int = 2
    seed: int = 0
    model: ModelKind = ModelKind.GATED_USER_USER
    metric: Metric = Metric.COSINE
    threshold: float = 0.5
    evaluation_policy: EvaluationPolicy = EvaluationPolicy.ONCE
    initials: tuple = ()
    beta: float | None = None
    gamma: float | None = None
    theta: float | None = None
    ic_default_p: float | None = None
    metrics: tuple = _DEFAULT_SWEEP

    def __post_init__(self):
        if self.max_time < 1:
            raise ConfigurationError(f"max_time must be >= 1, got {self.max_time}")
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < (1 << 64):
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigurationError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.model is ModelKind.GATED_USER_CONTENT and self.rumor_path is None:
            raise ConfigurationError("model gated_user_content requires rumor_path")

    def gate(self, decisions=None) -> SimilarityGate:
        return SimilarityGate(self.metric, self.threshold, decisions)

    def model_param(self, name: str) -> float:
        value = getattr(self, name)
        if value is None:
            raise ConfigurationError(f"model {self.model.value} requires config key {name}")
        return value


_CONFIG_KEYS = (
    "max_time",
    "trials",
    "seed",
    "model",
    "metric",
    "threshold",
    "evaluation_policy",
    "beta",
    "gamma",
    "theta",
    "ic_default_p",
    "initials",
    "edges_path",
    "users_path",
    "rumor_path",
    "decisions_path",
    "out_dir",
    "metrics",
)


def load_config(path, overrides: dict | None = None) -> SimulationConfig:
    """Parse a config file, then apply string-valued overrides (CLI flags win)."""
    raw = {}
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ParseError(path, line_no, f"expected key = value, got {stripped!r}")
            key, _, value = stripped.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ParseError(path, line_no, f"unknown config key {key!r}")
            raw[key] = value.strip()
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in _CONFIG_KEYS:
            raise ConfigurationError(f"unknown config key {key!r}")
        raw[key] = str(value)
    return _build(raw, base_dir=path.parent)


def _build(raw: dict, base_dir: Path) -> SimulationConfig:
    if "edges_path" not in raw:
        raise ConfigurationError("config is missing required key edges_path")
    if "users_path" not in raw:
        raise ConfigurationError("config is missing required key users_path")
    kwargs = {
        "edges_path": _resolve(base_dir, raw["edges_path"]),
        "users_path": _resolve(base_dir, raw["users_path"]),
    }
    if "rumor_path" in raw:
        kwargs["rumor_path"] = _resolve(base_dir, raw["rumor_path"])
    if "decisions_path" in raw:
        kwargs["decisions_path"] = _resolve(base_dir, raw["decisions_path"])
    if "out_dir" in raw:
        kwargs["out_dir"] = _resolve(base_dir, raw["out_dir"])
    for key in ("max_time", "trials", "seed"):
        if key in raw:
            kwargs[key] = _to_int(key, raw[key])
    for key in ("threshold", "beta", "gamma", "theta", "ic_default_p"):
        if key in raw:
            kwargs[key] = _to_float(key, raw[key])
    if "model" in raw:
        kwargs["model"] = _to_enum("model", ModelKind, raw["model"])
    if "evaluation_policy" in raw:
        text = raw["evaluation_policy"].strip().lower().replace("_", "-")
        kwargs["evaluation_policy"] = _to_enum("evaluation_policy", EvaluationPolicy, text)
    if "metric" in raw:
        kwargs["metric"] = _to_metric("metric", raw["metric"])
    if "metrics" in raw:
        names = [part.strip() for part in raw["metrics"].split(",") if part.strip()]
        if not names:
            raise ConfigurationError("metrics must list at least one metric")
        kwargs["metrics"] = tuple(_to_metric("metrics", name) for name in names)
    if "initials" in raw:
        ids = []
        for part in raw["initials"].split(","):
            part = part.strip()
            if not part:
                continue
            ids.append(_to_int("initials", part))
        kwargs["initials"] = tuple(ids)
    return SimulationConfig(**kwargs)


def _resolve(base_dir: Path, value: str) -> Path:
    p = Path(value)
    return p if p.is_absolute() else base_dir / p


def _to_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigurationError(f"config key {key} must be an integer, got {value!r}") from None


def _to_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigurationError(f"config key {key} must be a number, got {value!r}") from None


def _to_enum(key: str, enum_cls, value: str):
    try:
        return enum_cls(value.strip().lower())
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise ConfigurationError(f"config key {key} must be one of {allowed}; got {value!r}") from None


def _to_metric(key: str, value: str) -> Metric:
    try:
        return Metric.from_name(value)
    except ValueError:
        allowed = ", ".join(m.value for m in Metric)
        raise ConfigurationError(f"config key {key} must be one of {allowed}; got {value!r}") from None
