"""Minimal SVG 1.1 line plots, written by hand so no plotting backend is needed."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

__all__ = ["Line", "line_plot"]

PALETTE = ["#d62728", "#222222", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"]


@dataclass
class Line:
    x: np.ndarray
    y: np.ndarray
    label: str
    color: str = "#222222"
    width: float = 1.0
    opacity: float = 1.0


def _nice_range(lo: float, hi: float) -> tuple[float, float]:
    if hi - lo <= 0:
        return lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def line_plot(lines: list[Line], width: int = 800, height: int = 400, title: str = "") -> str:
    """Render ``lines`` as one SVG document; each line becomes one ``<polyline>``."""
    margin_l, margin_r, margin_t, margin_b = 60, 150, 30 if title else 15, 40
    pw, ph = width - margin_l - margin_r, height - margin_t - margin_b
    xs = np.concatenate([ln.x for ln in lines]) if lines else np.array([0.0, 1.0])
    ys = np.concatenate([ln.y for ln in lines]) if lines else np.array([0.0, 1.0])
    x0, x1 = (float(xs.min()), float(xs.max())) if xs.size else (0.0, 1.0)
    y0, y1 = _nice_range(float(ys.min()), float(ys.max())) if ys.size else (0.0, 1.0)
    if x1 <= x0:
        x0, x1 = x0 - 0.5, x1 + 0.5

    def px(x):
        return margin_l + (np.asarray(x) - x0) / (x1 - x0) * pw

    def py(y):
        return margin_t + (y1 - np.asarray(y)) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin_l}" y="{margin_t}" width="{pw}" height="{ph}" fill="none" stroke="#888888" stroke-width="1"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-family="sans-serif" '
                   f'font-size="14">{escape(title)}</text>')
    for v, anchor in ((x0, "start"), (x1, "end")):
        out.append(f'<text x="{px(v):.2f}" y="{height - margin_b + 16}" text-anchor="{anchor}" '
                   f'font-family="sans-serif" font-size="11">{v:.4g}</text>')
    for v in (y0, y1):
        out.append(f'<text x="{margin_l - 6}" y="{py(v) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{v:.3g}</text>')
    for i, ln in enumerate(lines):
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px(ln.x), py(ln.y)))
        out.append(f'<polyline fill="none" stroke="{ln.color}" stroke-width="{ln.width:g}" '
                   f'stroke-opacity="{ln.opacity:g}" points="{pts}"><title>{escape(ln.label)}</title></polyline>')
        ly = margin_t + 14 + 16 * i
        lx = width - margin_r + 10
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 20}" y2="{ly - 4}" stroke="{ln.color}" '
                   f'stroke-width="{ln.width:g}"/>')
        out.append(f'<text x="{lx + 26}" y="{ly}" font-family="sans-serif" font-size="11">{escape(ln.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
