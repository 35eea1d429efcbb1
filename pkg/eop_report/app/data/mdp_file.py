"""Plain-text MDP fixture format.

::

    # comments and blank lines are ignored
    name gridworld-windy
    S 64
    A 4
    gamma 0.95
    horizon 50
    rho0
    <S numbers>
    P
    <S*A lines of S numbers; line s*A + a holds P[s, a, :]>
    R
    <S lines of A numbers>

Numbers are whitespace separated. ``name`` is optional.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..core.testbed.state import TabularMdp
from .errors import ParseError

HEADER_KEYS = ("S", "A", "gamma", "horizon")


def _content_lines(path: Path) -> list[tuple[int, str]]:
    lines = []
    with path.open("r", encoding="utf-8") as fh:
        for number, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if text:
                lines.append((number, text))
    return lines


def _floats(path: Path, line: int, text: str, expected: int) -> list[float]:
    parts = text.split()
    if len(parts) != expected:
        raise ParseError(path, line, f"expected {expected} numbers, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError:
        raise ParseError(path, line, "unparsable number") from None


def load_mdp(path: str | Path) -> TabularMdp:
    path = Path(path)
    lines = _content_lines(path)
    header: dict[str, str] = {}
    name = path.stem
    pos = 0
    while pos < len(lines) and lines[pos][1] not in ("rho0", "P", "R"):
        number, text = lines[pos]
        parts = text.split()
        if len(parts) != 2:
            raise ParseError(path, number, f"expected 'key value', got {text!r}")
        key, value = parts
        if key == "name":
            name = value
        elif key in HEADER_KEYS:
            header[key] = value
        else:
            raise ParseError(path, number, f"unknown header key {key!r}")
        pos += 1

    for key in HEADER_KEYS:
        if key not in header:
            raise ParseError(path, 0, f"missing header key {key!r}")
    try:
        n_states, n_actions = int(header["S"]), int(header["A"])
        gamma, horizon = float(header["gamma"]), int(header["horizon"])
    except ValueError as exc:
        raise ParseError(path, 0, f"bad header value: {exc}") from None

    def block(title: str, rows: int, width: int) -> np.ndarray:
        nonlocal pos
        if pos >= len(lines) or lines[pos][1] != title:
            where = lines[pos][0] if pos < len(lines) else 0
            raise ParseError(path, where, f"expected block {title!r}")
        pos += 1
        if pos + rows > len(lines):
            raise ParseError(path, 0, f"block {title!r} is truncated")
        data = [_floats(path, n, text, width) for n, text in lines[pos:pos + rows]]
        pos += rows
        return np.array(data, dtype=float)

    rho0 = block("rho0", 1, n_states)[0]
    P = block("P", n_states * n_actions, n_states).reshape(n_states, n_actions, n_states)
    R = block("R", n_states, n_actions)
    if pos != len(lines):
        raise ParseError(path, lines[pos][0], "trailing content")
    try:
        return TabularMdp(P=P, R=R, gamma=gamma, rho0=rho0, horizon=horizon, name=name)
    except ValueError as exc:
        raise ParseError(path, 0, str(exc)) from None


def write_mdp(mdp: TabularMdp, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    def fmt(row) -> str:
        return " ".join(repr(float(x)) for x in row)

    out = [
        f"name {mdp.name}",
        f"S {mdp.n_states}",
        f"A {mdp.n_actions}",
        f"gamma {float(mdp.gamma)!r}",
        f"horizon {mdp.horizon}",
        "rho0",
        fmt(mdp.rho0),
        "P",
    ]
    out.extend(fmt(mdp.P[s, a]) for s in range(mdp.n_states) for a in range(mdp.n_actions))
    out.append("R")
    out.extend(fmt(mdp.R[s]) for s in range(mdp.n_states))
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path
