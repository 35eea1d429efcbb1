from __future__ import annotations

from pathlib import Path


class ParseError(ValueError):
    """Malformed input file; ``line`` is 1-based (0 when the whole file is at fault)."""

    def __init__(self, path: str | Path, line: int, problem: str) -> None:
        self.path = str(path)
        self.line = line
        self.problem = problem
        where = f"{self.path}:{line}" if line else self.path
        super().__init__(f"{where}: {problem}")
