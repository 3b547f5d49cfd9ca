"""CSV and SVG emission for density curves and comparison reports.

CSV: UTF-8; `# key=value` comment header (model, seed, trials, version, and
report fields); then `x,value[,value2...]` rows with 17-significant-digit
floats (string-exact round trip).  SVG: static 800x500 line plot, one polyline
per curve, legend from curve metadata.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .. import __version__
from ..spectra import DensityCurve
from .config import ComparisonReport

__all__ = ["emit_csv", "parse_csv", "emit_svg"]

_FMT = "{:.17g}"


def _fmt(x: float) -> str:
    return _FMT.format(float(x))


def emit_csv(curves: Sequence[DensityCurve], report: Optional[ComparisonReport], path) -> Path:
    """Write curves (sharing one grid) and the report header to a CSV file."""
    path = Path(path)
    if not curves:
        raise ValueError("need at least one curve")
    grid = curves[0].grid
    for c in curves[1:]:
        if c.grid.shape != grid.shape or not np.array_equal(c.grid, grid):
            raise ValueError("CSV emission requires curves on a common grid")
    lines = [f"# version={__version__}"]
    for i, c in enumerate(curves):
        for key, value in sorted(c.meta.items()):
            lines.append(f"# curve{i}.{key}={value}")
    if report is not None:
        lines.append("# report=" + json.dumps(report.as_dict(), sort_keys=True))
    header = "x," + ",".join(
        str(c.meta.get("kind", f"value{i}")) + str(i) for i, c in enumerate(curves)
    )
    lines.append(header)
    cols = [grid] + [c.values for c in curves]
    for row in zip(*cols):
        lines.append(",".join(_fmt(v) for v in row))
    try:
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"failed writing CSV to {path}: {exc}") from exc
    return path


def parse_csv(path):
    """Invert emit_csv: returns (header dict, grid, list of value columns)."""
    path = Path(path)
    meta = {}
    grid = []
    columns = None
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            meta[key] = value
            continue
        if line.startswith("x,"):
            columns = [[] for _ in line.split(",")[1:]]
            continue
        parts = line.split(",")
        grid.append(float(parts[0]))
        for col, val in zip(columns, parts[1:]):
            col.append(float(val))
    return meta, np.array(grid), [np.array(c) for c in columns]


_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"]
_WIDTH, _HEIGHT = 800, 500
_MARGIN = 55


def emit_svg(curves: Sequence[DensityCurve], path) -> Path:
    """Static SVG line plot: fixed 800x500 viewBox, one polyline per curve."""
    path = Path(path)
    if not curves:
        raise ValueError("need at least one curve")
    x_lo = min(float(c.grid[0]) for c in curves)
    x_hi = max(float(c.grid[-1]) for c in curves)
    y_hi = max(float(np.max(c.values)) for c in curves) or 1.0
    y_lo = 0.0

    def sx(x):
        return _MARGIN + (x - x_lo) / (x_hi - x_lo) * (_WIDTH - 2 * _MARGIN)

    def sy(y):
        return _HEIGHT - _MARGIN - (y - y_lo) / (y_hi - y_lo) * (_HEIGHT - 2 * _MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<line x1="{_MARGIN}" y1="{_HEIGHT-_MARGIN}" x2="{_WIDTH-_MARGIN}" '
        f'y2="{_HEIGHT-_MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" y2="{_HEIGHT-_MARGIN}" stroke="black"/>',
        f'<text x="{_WIDTH//2}" y="{_HEIGHT-12}" font-size="13" text-anchor="middle">x</text>',
        f'<text x="14" y="{_HEIGHT//2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 14 {_HEIGHT//2})">density</text>',
        f'<text x="{_MARGIN-6}" y="{_HEIGHT-_MARGIN+14}" font-size="11" text-anchor="middle">{x_lo:g}</text>',
        f'<text x="{_WIDTH-_MARGIN}" y="{_HEIGHT-_MARGIN+14}" font-size="11" text-anchor="middle">{x_hi:g}</text>',
        f'<text x="{_MARGIN-8}" y="{_MARGIN+4}" font-size="11" text-anchor="end">{y_hi:.3g}</text>',
    ]
    for i, c in enumerate(curves):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(c.grid, c.values))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        label = c.meta.get("model", c.meta.get("kind", f"curve {i}"))
        ly = _MARGIN + 16 * i
        parts.append(
            f'<line x1="{_WIDTH-_MARGIN-170}" y1="{ly}" x2="{_WIDTH-_MARGIN-150}" '
            f'y2="{ly}" stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{_WIDTH-_MARGIN-144}" y="{ly+4}" font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    try:
        path.write_text("\n".join(parts) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"failed writing SVG to {path}: {exc}") from exc
    return path
