"""Static SVG scatter export: pinned feature on y, classes as colors."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from .embedding import Embedding

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


@dataclass(frozen=True)
class PlotSpec:
    width: int = 640
    height: int = 480
    point_radius: float = 3.0
    axis_labels: tuple[str, str] = ("dim0", "dim1")

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0 or self.point_radius <= 0:
            raise ValueError("width, height and point_radius must be positive")


def color_map(labels) -> dict[str, str]:
    """Deterministic label -> color assignment, by sorted label order."""
    distinct = sorted(set(labels))
    return {lab: PALETTE[i % len(PALETTE)] for i, lab in enumerate(distinct)}


def _axis_mapper(values: np.ndarray, size: float, flip: bool):
    """Linear data -> pixel map with a 5% data margin; degenerate axes center."""
    lo, hi = float(values.min()), float(values.max())
    span = hi - lo
    if span == 0.0:
        return lambda v: size / 2.0
    margin = 0.05 * span
    lo, span = lo - margin, span + 2.0 * margin
    if flip:
        return lambda v: size - (v - lo) / span * size
    return lambda v: (v - lo) / span * size


def _scatter_body(coords: np.ndarray, labels, spec: PlotSpec,
                  draw_legend: bool = True) -> list[str]:
    to_x = _axis_mapper(coords[:, 0], spec.width, flip=False)
    to_y = _axis_mapper(coords[:, 1], spec.height, flip=True)  # data-space y goes up
    colors = color_map(labels) if labels is not None else None
    parts = []
    for i in range(coords.shape[0]):
        fill = colors[labels[i]] if colors is not None else PALETTE[0]
        parts.append(
            f'<circle cx="{to_x(coords[i, 0]):.2f}" cy="{to_y(coords[i, 1]):.2f}" '
            f'r="{spec.point_radius:.2f}" fill="{fill}"/>'
        )
    # axis captions
    parts.append(
        f'<text x="{spec.width / 2:.2f}" y="{spec.height - 6:.2f}" '
        f'font-size="12" text-anchor="middle">{escape(spec.axis_labels[0])}</text>'
    )
    parts.append(
        f'<text x="14" y="{spec.height / 2:.2f}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 14 {spec.height / 2:.2f})">'
        f'{escape(spec.axis_labels[1])}</text>'
    )
    if colors is not None and draw_legend:
        x0 = spec.width - 16
        for i, (lab, color) in enumerate(sorted(colors.items())):
            y0 = 16 + 18 * i
            parts.append(
                f'<rect x="{x0 - 12}" y="{y0 - 9}" width="10" height="10" fill="{color}"/>'
            )
            parts.append(
                f'<text x="{x0 - 16}" y="{y0}" font-size="12" text-anchor="end">'
                f'{escape(str(lab))}</text>'
            )
    return parts


def _document(width: int, height: int, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def render_scatter(e: Embedding, labels=None, spec: PlotSpec = PlotSpec()) -> str:
    """Standalone SVG scatter of a 2-D embedding, one circle per point."""
    if e.n_dims != 2:
        raise ValueError(f"render_scatter needs a 2-D embedding, got {e.n_dims}-D")
    if labels is not None and len(labels) != e.n_points:
        raise ValueError(f"{len(labels)} labels for {e.n_points} points")
    return _document(spec.width, spec.height, _scatter_body(e.coords, labels, spec))


def render_panels(e: Embedding, labels=None, spec: PlotSpec = PlotSpec()) -> str:
    """A 3-D embedding as three side-by-side pairwise-axis panels."""
    if e.n_dims != 3:
        raise ValueError(f"render_panels needs a 3-D embedding, got {e.n_dims}-D")
    if labels is not None and len(labels) != e.n_points:
        raise ValueError(f"{len(labels)} labels for {e.n_points} points")
    gap = 12
    body = []
    for p, (ax, ay) in enumerate([(0, 1), (0, 2), (1, 2)]):
        panel_spec = PlotSpec(spec.width, spec.height, spec.point_radius,
                              (f"dim{ax}", f"dim{ay}"))
        offset = p * (spec.width + gap)
        body.append(f'<g transform="translate({offset} 0)">')
        body.extend(_scatter_body(e.coords[:, [ax, ay]], labels, panel_spec,
                                  draw_legend=p == 0))
        body.append("</g>")
    return _document(3 * spec.width + 2 * gap, spec.height, body)
