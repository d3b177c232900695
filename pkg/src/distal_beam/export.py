"""Deterministic CSV and SVG writers.

All numbers are formatted with 12 significant digits, '.' decimal separator
and '\n' line endings, so identical inputs produce byte-identical files.
SVG path data is emitted directly (no plotting library) for the same reason.
"""

from __future__ import annotations

import numpy as np


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def write_csv(path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_curve_csv(path, curve) -> None:
    """One rod curve: s, theta, x, y per grid node."""
    rows = zip(curve.grid.nodes, curve.theta, curve.points[:, 0], curve.points[:, 1])
    write_csv(path, ["s", "theta", "x", "y"], rows)


class SvgPlot:
    """Minimal static SVG canvas mapping data coordinates to a fixed viewport."""

    def __init__(self, xlim, ylim, size: int = 640, margin: float = 0.05):
        span_x = xlim[1] - xlim[0] or 1.0
        span_y = ylim[1] - ylim[0] or 1.0
        pad_x, pad_y = margin * span_x, margin * span_y
        self.x0, self.x1 = xlim[0] - pad_x, xlim[1] + pad_x
        self.y0, self.y1 = ylim[0] - pad_y, ylim[1] + pad_y
        self.width = size
        self.height = max(1, round(size * (self.y1 - self.y0) / (self.x1 - self.x0)))
        self.elements: list[str] = []

    def _map(self, pts: np.ndarray) -> np.ndarray:
        # SVG y axis points down
        sx = self.width / (self.x1 - self.x0)
        sy = self.height / (self.y1 - self.y0)
        out = np.empty_like(np.asarray(pts, dtype=float))
        out[:, 0] = (pts[:, 0] - self.x0) * sx
        out[:, 1] = (self.y1 - pts[:, 1]) * sy
        return out

    def polyline(self, pts, color: str = "#1f77b4", width: float = 1.5, dashed: bool = False):
        mapped = self._map(np.asarray(pts, dtype=float))
        coords = " ".join(f"{p[0]:.3f},{p[1]:.3f}" for p in mapped)
        dash = ' stroke-dasharray="6,4"' if dashed else ""
        self.elements.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="{width:g}"{dash} '
            f'points="{coords}"/>'
        )

    def write(self, path) -> None:
        body = "\n".join(self.elements)
        svg = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f'<rect width="100%" height="100%" fill="white"/>\n{body}\n</svg>\n'
        )
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)


def data_limits(point_sets) -> tuple[tuple[float, float], tuple[float, float]]:
    all_pts = np.vstack([np.asarray(p, dtype=float) for p in point_sets])
    return (
        (float(all_pts[:, 0].min()), float(all_pts[:, 0].max())),
        (float(all_pts[:, 1].min()), float(all_pts[:, 1].max())),
    )
