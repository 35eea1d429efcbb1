"""SVG line charts of EOP curves, rendered offscreen with Qt.

Each curve is one ``<polyline>`` for the mean and one filled ``<path>`` for
the mean +/- std band. Frame, ticks and legend swatches are rectangles so the
element counts stay predictable.
"""

from __future__ import annotations

import math
import os
from pathlib import Path
from typing import Mapping, Sequence

from ..config import settings
from ..core.estimator import EopCurve

os.environ.setdefault("QT_QPA_PLATFORM", "offscreen")

from PySide6.QtCore import QBuffer, QIODevice, QPointF, QRectF, QSize, Qt  # noqa: E402
from PySide6.QtGui import QBrush, QColor, QFont, QGuiApplication, QPainter, QPen, QPolygonF  # noqa: E402
from PySide6.QtSvg import QSvgGenerator  # noqa: E402

WIDTH, HEIGHT = 720, 440
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 190, 20, 56
BAND_ALPHA = 60
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)

_app: QGuiApplication | None = None


def _ensure_app() -> None:
    global _app
    if QGuiApplication.instance() is None:
        _app = QGuiApplication([])


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    span = hi - lo
    raw = span / count
    step = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 5, 10):
        if raw <= mult * step:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _y_range(curves: Sequence[EopCurve]) -> tuple[float, float]:
    lo = min(p.mean - p.std for c in curves for p in c.points)
    hi = max(p.mean + p.std for c in curves for p in c.points)
    if hi - lo < 1e-12:
        pad = max(abs(hi), 1.0) * 0.05
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


class FigureRenderer:
    """Maps data coordinates into the plot rectangle and paints one chart."""

    def __init__(self, curves: Sequence[EopCurve]) -> None:
        self.curves = curves
        budgets = [b for c in curves for b in c.budgets]
        self.x_lo, self.x_hi = min(budgets), max(budgets)
        if self.x_hi == self.x_lo:
            self.x_lo, self.x_hi = self.x_lo - 1, self.x_hi + 1
        self.y_lo, self.y_hi = _y_range(curves)
        self.plot = QRectF(
            MARGIN_LEFT,
            MARGIN_TOP,
            WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
            HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
        )

    def to_px(self, x: float, y: float) -> QPointF:
        fx = (x - self.x_lo) / (self.x_hi - self.x_lo)
        fy = (y - self.y_lo) / (self.y_hi - self.y_lo)
        return QPointF(self.plot.left() + fx * self.plot.width(), self.plot.bottom() - fy * self.plot.height())

    def paint(self, painter: QPainter) -> None:
        painter.setRenderHint(QPainter.RenderHint.Antialiasing, True)
        painter.setFont(QFont("DejaVu Sans", 9))
        for index, curve in enumerate(self.curves):
            self._band(painter, curve, QColor(PALETTE[index % len(PALETTE)]))
        for index, curve in enumerate(self.curves):
            self._line(painter, curve, QColor(PALETTE[index % len(PALETTE)]))
        self._axes(painter)
        self._legend(painter)

    def _band(self, painter: QPainter, curve: EopCurve, color: QColor) -> None:
        upper = [self.to_px(p.budget, p.mean + p.std) for p in curve.points]
        lower = [self.to_px(p.budget, p.mean - p.std) for p in reversed(curve.points)]
        fill = QColor(color)
        fill.setAlpha(BAND_ALPHA)
        painter.setPen(Qt.PenStyle.NoPen)
        painter.setBrush(QBrush(fill))
        painter.drawPolygon(QPolygonF(upper + lower))

    def _line(self, painter: QPainter, curve: EopCurve, color: QColor) -> None:
        points = [self.to_px(p.budget, p.mean) for p in curve.points]
        if len(points) == 1:
            points = points * 2
        painter.setPen(QPen(color, 2.0))
        painter.setBrush(Qt.BrushStyle.NoBrush)
        painter.drawPolyline(QPolygonF(points))

    def _axes(self, painter: QPainter) -> None:
        black = QColor("#000000")
        painter.setPen(QPen(black, 1.0))
        painter.setBrush(Qt.BrushStyle.NoBrush)
        painter.drawRect(self.plot)

        painter.setPen(Qt.PenStyle.NoPen)
        painter.setBrush(QBrush(black))
        for x in _ticks(self.x_lo, self.x_hi):
            px = self.to_px(x, self.y_lo).x()
            painter.drawRect(QRectF(px - 0.5, self.plot.bottom(), 1.0, 5.0))
            self._text(painter, QRectF(px - 30, self.plot.bottom() + 6, 60, 16), f"{x:g}", Qt.AlignmentFlag.AlignHCenter)
        for y in _ticks(self.y_lo, self.y_hi):
            py = self.to_px(self.x_lo, y).y()
            painter.drawRect(QRectF(self.plot.left() - 5.0, py - 0.5, 5.0, 1.0))
            self._text(painter, QRectF(0, py - 8, self.plot.left() - 8, 16), f"{y:g}", Qt.AlignmentFlag.AlignRight)

        self._text(
            painter,
            QRectF(self.plot.left(), HEIGHT - 24, self.plot.width(), 18),
            settings.X_AXIS_LABEL,
            Qt.AlignmentFlag.AlignHCenter,
        )
        painter.save()
        painter.translate(14, self.plot.center().y())
        painter.rotate(-90)
        self._text(painter, QRectF(-self.plot.height() / 2, -8, self.plot.height(), 18), settings.Y_AXIS_LABEL, Qt.AlignmentFlag.AlignHCenter)
        painter.restore()

    def _legend(self, painter: QPainter) -> None:
        left = self.plot.right() + 16
        for index, curve in enumerate(self.curves):
            top = self.plot.top() + 6 + index * 20
            painter.setPen(Qt.PenStyle.NoPen)
            painter.setBrush(QBrush(QColor(PALETTE[index % len(PALETTE)])))
            painter.drawRect(QRectF(left, top + 3, 14, 10))
            self._text(painter, QRectF(left + 20, top, MARGIN_RIGHT - 40, 16), curve.label, Qt.AlignmentFlag.AlignLeft)

    @staticmethod
    def _text(painter: QPainter, rect: QRectF, text: str, align: Qt.AlignmentFlag) -> None:
        painter.setPen(QPen(QColor("#000000")))
        painter.drawText(rect, align | Qt.AlignmentFlag.AlignVCenter, text)


def render_svg(curves: Sequence[EopCurve]) -> bytes:
    if not curves:
        raise ValueError("empty curve set")
    if any(len(c) == 0 for c in curves):
        raise ValueError("curve without points")
    _ensure_app()

    buffer = QBuffer()
    buffer.open(QIODevice.OpenModeFlag.WriteOnly)
    generator = QSvgGenerator()
    generator.setOutputDevice(buffer)
    generator.setSize(QSize(WIDTH, HEIGHT))
    generator.setViewBox(QRectF(0, 0, WIDTH, HEIGHT))
    generator.setTitle("Expected online performance")

    painter = QPainter()
    if not painter.begin(generator):
        raise RuntimeError("could not start SVG painter")
    try:
        FigureRenderer(curves).paint(painter)
    finally:
        painter.end()
    svg = bytes(buffer.data().data())
    buffer.close()
    return svg


def emit_figure(curves: Sequence[EopCurve] | Mapping[str, EopCurve], path: str | Path) -> Path:
    """Write ``curves`` as a standalone SVG file; a mapping relabels by key."""
    if isinstance(curves, Mapping):
        curves = [EopCurve(points=c.points, n=c.n, label=label) for label, c in curves.items()]
    svg = render_svg(list(curves))
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(svg)
    return path
