"""Line-oriented ``key = value`` configuration files.

Blank lines and ``#`` comments are ignored; list values are comma
separated. Command-line flags override what a file sets.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Callable, Mapping

from ..core.records import AGGREGATIONS
from ..data.errors import ParseError
from . import settings

METRICS = ("raw", "best-behavioral", "min-max")


def read_config(path: str | Path) -> dict[str, tuple[str, int]]:
    """``key -> (raw value, line number)``."""
    path = Path(path)
    entries: dict[str, tuple[str, int]] = {}
    with path.open("r", encoding="utf-8") as fh:
        for number, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ParseError(path, number, f"expected 'key = value', got {text!r}")
            key, value = (part.strip() for part in text.split("=", 1))
            if not key:
                raise ParseError(path, number, "empty key")
            if key in entries:
                raise ParseError(path, number, f"duplicate key {key!r} (line {entries[key][1]})")
            entries[key] = (value, number)
    return entries


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(item.strip() for item in text.split(",") if item.strip())


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(item) for item in _str_list(text))


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(item) for item in _str_list(text))


def _bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _optional_float(text: str) -> float | None:
    return None if text.lower() in ("", "none") else float(text)


def _build(
    cls,
    path: str | Path,
    converters: Mapping[str, Callable[[str], Any]],
    overrides: Mapping[str, Any],
):
    """Instance from the file at ``path`` with non-None ``overrides`` applied on top."""
    entries = read_config(path)
    known = {f.name for f in fields(cls)}
    values: dict[str, Any] = {}
    for key, (raw, line) in entries.items():
        if key not in known:
            raise ParseError(path, line, f"unknown key {key!r}")
        try:
            values[key] = converters.get(key, str)(raw)
        except ValueError as exc:
            raise ParseError(path, line, f"bad value for {key!r}: {exc}") from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return cls(**values)
    except ValueError as exc:
        raise ParseError(path, 0, str(exc)) from None


@dataclass(frozen=True)
class PipelineConfig:
    """What the tabular testbed runs."""

    mdp: str = "windy"
    levels: tuple[str, ...] = ("medium",)
    dataset_sizes: tuple[int, ...] = (99,)
    epsilons: tuple[float, ...] = settings.DEFAULT_EPSILONS
    algorithms: tuple[str, ...] = ("bc", "cq")
    n_assignments: int = 5
    seeds: int = 3
    master_seed: int = settings.DEFAULT_SEED
    split_ratio: float = settings.DEFAULT_SPLIT_RATIO
    fqe_iterations: int = settings.DEFAULT_FQE_ITERATIONS
    aggregation: str = "mean"
    vi_tol: float = settings.DEFAULT_VI_TOL

    def __post_init__(self) -> None:
        for level in self.levels:
            if level not in settings.LEVELS:
                raise ValueError(f"unknown level {level!r}")
        if not self.levels:
            raise ValueError("levels must not be empty")
        for size in self.dataset_sizes:
            if size not in settings.TRAJECTORY_SCHEME:
                raise ValueError(f"dataset size {size} not in {settings.TRAJECTORY_SCHEME}")
        if not self.dataset_sizes:
            raise ValueError("dataset_sizes must not be empty")
        for algorithm in self.algorithms:
            if algorithm not in settings.ALGORITHM_GRIDS:
                raise ValueError(f"unknown algorithm {algorithm!r}")
        if not self.algorithms:
            raise ValueError("algorithms must not be empty")
        if self.n_assignments < 1:
            raise ValueError("n_assignments must be positive")
        if self.seeds < 1:
            raise ValueError("seeds must be positive")
        if self.master_seed < 0:
            raise ValueError("master_seed must be non-negative")
        if not 0.0 < self.split_ratio < 1.0:
            raise ValueError("split_ratio must be in (0, 1)")
        if self.fqe_iterations < 1:
            raise ValueError("fqe_iterations must be positive")
        if self.aggregation not in AGGREGATIONS:
            raise ValueError(f"aggregation must be one of {AGGREGATIONS}")
        self.mdp_path  # validates the mdp choice

    @property
    def mdp_path(self) -> Path:
        if self.mdp == "windy":
            return settings.DEFAULT_MDP_FILE
        if self.mdp == "calm":
            return settings.CALM_MDP_FILE
        path = Path(self.mdp)
        if not path.is_file():
            raise ValueError(f"MDP file not found: {self.mdp}")
        return path

    @classmethod
    def from_file(cls, path: str | Path, **overrides: Any) -> "PipelineConfig":
        return _build(cls, path, _PIPELINE_CONVERTERS, overrides)

    def replace(self, **changes: Any) -> "PipelineConfig":
        current = {f.name: getattr(self, f.name) for f in fields(self)}
        current.update({k: v for k, v in changes.items() if v is not None})
        return PipelineConfig(**current)


_PIPELINE_CONVERTERS: dict[str, Callable[[str], Any]] = {
    "levels": _str_list,
    "dataset_sizes": _int_list,
    "epsilons": _float_list,
    "algorithms": _str_list,
    "n_assignments": int,
    "seeds": int,
    "master_seed": int,
    "split_ratio": float,
    "fqe_iterations": int,
    "vi_tol": float,
}


@dataclass(frozen=True)
class ReportConfig:
    """What a report subcommand reads, computes and writes."""

    runs: str | None = None
    scores: tuple[str, ...] = ()
    metric: str = "raw"
    v_best: float | None = None
    offset: float = 0.0
    aggregation: str = "mean"
    budget_max: int | None = None
    strategies: tuple[str, ...] = ()
    output_dir: str = "."
    master_seed: int = settings.DEFAULT_SEED
    replacement: bool = True
    environment: str | None = None
    algorithm: str | None = None
    budgets: tuple[int, ...] = settings.DEFAULT_TABLE_BUDGETS

    def __post_init__(self) -> None:
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        if self.metric == "best-behavioral" and self.v_best is None:
            raise ValueError("metric best-behavioral needs v_best")
        if self.aggregation not in AGGREGATIONS:
            raise ValueError(f"aggregation must be one of {AGGREGATIONS}")
        if self.budget_max is not None and self.budget_max < 1:
            raise ValueError("budget_max must be positive")
        if self.master_seed < 0:
            raise ValueError("master_seed must be non-negative")
        for path in ([self.runs] if self.runs else []) + list(self.scores):
            if not Path(path).is_file():
                raise ValueError(f"input file not found: {path}")

    @classmethod
    def from_file(cls, path: str | Path, **overrides: Any) -> "ReportConfig":
        return _build(cls, path, _REPORT_CONVERTERS, overrides)

    def replace(self, **changes: Any) -> "ReportConfig":
        current = {f.name: getattr(self, f.name) for f in fields(self)}
        current.update({k: v for k, v in changes.items() if v is not None})
        return ReportConfig(**current)


_REPORT_CONVERTERS: dict[str, Callable[[str], Any]] = {
    "scores": _str_list,
    "v_best": _optional_float,
    "offset": float,
    "budget_max": int,
    "strategies": _str_list,
    "master_seed": int,
    "replacement": _bool,
    "budgets": _int_list,
}
