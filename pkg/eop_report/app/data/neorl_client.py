"""One-shot adapter from the public NeoRL benchmark results into run records.

The external release has no documented schema, so everything that knows
about its layout lives here and nowhere else. The adapter reads a JSON
document (local file or http(s) URL): either a list of result objects or an
object holding one under ``"results"``. Each result names the algorithm,
the task, the hyperparameters, the seed and the online return under one of
the aliases below.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Iterable

import httpx

from ..config import settings
from ..core.records import RunRecord

logger = logging.getLogger(__name__)

ALIASES = {
    "algorithm": ("algorithm", "algo", "algo_name"),
    "environment": ("environment", "task", "env", "domain"),
    "hyperparams": ("hyperparameters", "hyperparams", "params", "exp_name", "config"),
    "seed": ("seed", "random_seed"),
    "value": ("reward", "return", "value", "score", "mean_reward"),
}


class NeoRLClient:
    """Fetches a NeoRL results document and maps it to RunRecords."""

    def __init__(self, timeout: float = settings.DEFAULT_NEORL_TIMEOUT) -> None:
        self.timeout = timeout

    def fetch(self, source: str) -> Any:
        if source.startswith(("http://", "https://")):
            try:
                with httpx.Client(timeout=self.timeout, follow_redirects=True) as client:
                    resp = client.get(source)
                    resp.raise_for_status()
            except Exception as exc:  # noqa: BLE001
                raise RuntimeError(f"NeoRL download failed: {exc}") from exc
            logger.info("downloaded %d bytes from %s", len(resp.content), source)
            return resp.json()
        return json.loads(Path(source).read_text(encoding="utf-8"))

    def to_records(self, document: Any, environment: str | None = None) -> list[RunRecord]:
        results = document.get("results", document) if isinstance(document, dict) else document
        if not isinstance(results, list):
            raise ValueError("NeoRL document must hold a list of results")

        records = []
        seen: set[tuple] = set()
        for index, entry in enumerate(results):
            if not isinstance(entry, dict):
                raise ValueError(f"NeoRL result {index} is not an object")
            env = str(_pick(entry, "environment", index))
            if environment is not None and env != environment:
                continue
            value = float(_pick(entry, "value", index))
            if not math.isfinite(value):
                raise ValueError(f"NeoRL result {index} has a non-finite return")
            record = RunRecord(
                algorithm=str(_pick(entry, "algorithm", index)),
                environment=env,
                hyperparam_id=hyperparam_id(_pick(entry, "hyperparams", index)),
                seed=int(_pick(entry, "seed", index, default=0)),
                value=value,
            )
            if record.key in seen:
                raise ValueError(f"NeoRL result {index} duplicates an earlier run")
            seen.add(record.key)
            records.append(record)
        logger.info("mapped %d NeoRL results", len(records))
        return records

    def import_runs(self, source: str, environment: str | None = None) -> list[RunRecord]:
        return self.to_records(self.fetch(source), environment)


_MISSING = object()


def _pick(entry: dict, field: str, index: int, default: Any = _MISSING) -> Any:
    for alias in ALIASES[field]:
        if alias in entry:
            return entry[alias]
    if default is not _MISSING:
        return default
    raise ValueError(f"NeoRL result {index} has no {field} (tried {', '.join(ALIASES[field])})")


def hyperparam_id(params: Any) -> str:
    """Stable id for a hyperparameter assignment."""
    if isinstance(params, dict):
        return ";".join(f"{k}={params[k]}" for k in sorted(params))
    return str(params)


def import_neorl(source: str, environment: str | None = None, records_filter: Iterable[str] | None = None) -> list[RunRecord]:
    """Records from ``source``, optionally keeping only some algorithms."""
    records = NeoRLClient().import_runs(source, environment)
    if records_filter is not None:
        keep = set(records_filter)
        records = [r for r in records if r.algorithm in keep]
    return records
