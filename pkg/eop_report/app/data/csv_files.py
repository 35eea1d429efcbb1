"""Canonical comma-separated files: runs, scores, curves, rankings.

Headers are matched exactly; numbers use '.' as decimal separator and are
written as the shortest decimal that round-trips.
"""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from ..core.estimator import EopCurve, EopPoint
from ..core.metrics import RankedList
from ..core.records import RunRecord
from ..core.selection import DIRECTIONS, ScoreTable
from .errors import ParseError

RUNS_HEADER = ("algorithm", "environment", "hyperparam_id", "seed", "value")
SCORES_HEADER = ("round", "policy_id", "method", "score", "direction")
CURVE_HEADER = ("budget", "mean", "std", "n")
RANKING_HEADER = ("policy_id", "rank")


def format_float(x: float) -> str:
    return repr(float(x))


def _rows(path: str | Path, header: Sequence[str]) -> Iterator[tuple[int, dict[str, str]]]:
    """Yield ``(line_number, row)`` after checking the header."""
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        found = next(reader, None)
        if found is None:
            raise ParseError(path, 0, "no rows")
        found = [c.strip() for c in found]
        missing = [c for c in header if c not in found]
        if missing:
            raise ParseError(path, 1, f"missing column {missing[0]!r}")
        if tuple(found) != tuple(header):
            raise ParseError(path, 1, f"expected header {','.join(header)}")
        for row in reader:
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ParseError(path, reader.line_num, f"expected {len(header)} fields, got {len(row)}")
            yield reader.line_num, {k: v.strip() for k, v in zip(header, row)}


def _number(path: Path | str, line: int, text: str, what: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(path, line, f"unparsable number {text!r} for {what}") from None
    if not math.isfinite(value):
        raise ParseError(path, line, f"non-finite value at line {line}")
    return value


def _integer(path: Path | str, line: int, text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(path, line, f"unparsable integer {text!r} for {what}") from None


def _write(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


# --- runs ---

def parse_runs(path: str | Path) -> list[RunRecord]:
    records: list[RunRecord] = []
    seen: dict[tuple, int] = {}
    for line, row in _rows(path, RUNS_HEADER):
        record = RunRecord(
            algorithm=row["algorithm"],
            environment=row["environment"],
            hyperparam_id=row["hyperparam_id"],
            seed=_integer(path, line, row["seed"], "seed"),
            value=_number(path, line, row["value"], "value"),
        )
        if record.key in seen:
            raise ParseError(path, line, f"duplicate run (first seen at line {seen[record.key]})")
        seen[record.key] = line
        records.append(record)
    if not records:
        raise ParseError(path, 0, "no rows")
    return records


def write_runs(records: Iterable[RunRecord], path: str | Path) -> Path:
    rows = (
        (r.algorithm, r.environment, r.hyperparam_id, str(r.seed), format_float(r.value))
        for r in records
    )
    return _write(path, RUNS_HEADER, rows)


# --- scores ---

def parse_scores(path: str | Path) -> list[ScoreTable]:
    """One ScoreTable per round, ordered by round."""
    cells: dict[int, dict[str, dict[str, float]]] = defaultdict(lambda: defaultdict(dict))
    directions: dict[str, tuple[str, int]] = {}
    for line, row in _rows(path, SCORES_HEADER):
        round_index = _integer(path, line, row["round"], "round")
        method, direction = row["method"], row["direction"]
        if direction not in DIRECTIONS:
            raise ParseError(path, line, f"direction must be one of {DIRECTIONS}, got {direction!r}")
        if method in directions and directions[method][0] != direction:
            raise ParseError(
                path, line, f"conflicting direction for method {method!r} (line {directions[method][1]})"
            )
        directions.setdefault(method, (direction, line))
        policy_cells = cells[round_index][row["policy_id"]]
        if method in policy_cells:
            raise ParseError(path, line, f"duplicate score for {row['policy_id']!r}/{method!r}")
        policy_cells[method] = _number(path, line, row["score"], "score")

    if not cells:
        raise ParseError(path, 0, "no rows")
    tables = []
    for round_index in sorted(cells):
        try:
            tables.append(
                ScoreTable(
                    scores=cells[round_index],
                    directions={m: d for m, (d, _) in directions.items()},
                    round=round_index,
                )
            )
        except ValueError as exc:
            raise ParseError(path, 0, f"round {round_index}: {exc}") from None
    return tables


def write_scores(tables: Iterable[ScoreTable], path: str | Path) -> Path:
    rows = []
    for table in sorted(tables, key=lambda t: t.round):
        for pid in table.policy_ids:
            for method in table.methods:
                rows.append(
                    (
                        str(table.round),
                        pid,
                        method,
                        format_float(table.scores[pid][method]),
                        table.directions[method],
                    )
                )
    return _write(path, SCORES_HEADER, rows)


# --- curves ---

def emit_curve(curve: EopCurve, path: str | Path) -> Path:
    rows = (
        (str(p.budget), format_float(p.mean), format_float(p.std), str(curve.n))
        for p in curve.points
    )
    return _write(path, CURVE_HEADER, rows)


def parse_curve(path: str | Path, label: str | None = None) -> EopCurve:
    points = []
    n = 0
    for line, row in _rows(path, CURVE_HEADER):
        points.append(
            EopPoint(
                budget=_integer(path, line, row["budget"], "budget"),
                mean=_number(path, line, row["mean"], "mean"),
                std=_number(path, line, row["std"], "std"),
            )
        )
        n = _integer(path, line, row["n"], "n")
    if not points:
        raise ParseError(path, 0, "no rows")
    return EopCurve(points=tuple(points), n=n, label=label if label is not None else Path(path).stem)


# --- rankings ---

def parse_ranking(path: str | Path) -> RankedList:
    ranks: dict[str, float] = {}
    for line, row in _rows(path, RANKING_HEADER):
        if row["policy_id"] in ranks:
            raise ParseError(path, line, f"duplicate policy id {row['policy_id']!r}")
        ranks[row["policy_id"]] = _number(path, line, row["rank"], "rank")
    if not ranks:
        raise ParseError(path, 0, "no rows")
    return RankedList.from_ranks(ranks)


def write_ranking(ranking: RankedList, path: str | Path) -> Path:
    return _write(path, RANKING_HEADER, ((pid, str(i + 1)) for i, pid in enumerate(ranking)))
