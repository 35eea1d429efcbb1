"""Text budget table: expected best return per algorithm at a few budgets."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping, Sequence

from ..config import settings
from ..core.estimator import ValueSample, eop_plugin
from ..core.metrics import ValueMap
from ..core.records import RunRecord, aggregate_runs

DASH = "-"


@dataclass(frozen=True)
class TableRow:
    environment: str
    algorithm: str
    cells: tuple[float | None, ...]  # None where the budget exceeds n
    final: float
    n: int


def round_half_away(x: float) -> int:
    return int(Decimal(repr(float(x))).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def rows_from_values(
    values: Mapping[tuple[str, str], ValueMap],
    budgets: Sequence[int] = settings.DEFAULT_TABLE_BUDGETS,
) -> list[TableRow]:
    if not budgets or any(b < 1 for b in budgets):
        raise ValueError("budgets must be positive integers")
    rows = []
    for (env, alg), value_map in sorted(values.items()):
        sample = ValueSample.from_values(value_map.values.values(), label=alg)
        curve = eop_plugin(sample, max(budgets))
        cells = tuple(curve.at(b).mean if b <= sample.n else None for b in budgets)
        rows.append(TableRow(env, alg, cells, value_map.best, sample.n))
    return rows


def budget_table(
    runs: Iterable[RunRecord],
    budgets: Sequence[int] = settings.DEFAULT_TABLE_BUDGETS,
    aggregation: str = "mean",
) -> list[TableRow]:
    return rows_from_values(aggregate_runs(runs, aggregation), budgets)


def format_row(row: TableRow) -> str:
    cells = " ".join(DASH if c is None else str(round_half_away(c)) for c in row.cells)
    return f"{row.algorithm} {cells} | {round_half_away(row.final)} {row.n}"


def format_table(rows: Sequence[TableRow], budgets: Sequence[int] = settings.DEFAULT_TABLE_BUDGETS) -> str:
    """One block per environment, each headed by ``# <environment>``."""
    header = "Algorithm " + " ".join(str(b) for b in budgets) + " | Final N"
    lines: list[str] = []
    current = None
    for row in rows:
        if row.environment != current:
            if lines:
                lines.append("")
            lines.extend([f"# {row.environment}", header])
            current = row.environment
        lines.append(format_row(row))
    return "\n".join(lines) + "\n"
