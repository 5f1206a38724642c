"""Minimal static SVG line plots (no plotting dependency)."""

from __future__ import annotations

import math
from html import escape
from typing import Optional, Sequence

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
WIDTH, HEIGHT = 640, 420
LEFT, RIGHT, TOP, BOTTOM = 70, 20, 40, 55


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def line_plot(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    xlabel: str,
    ylabel: str,
    title: str = "",
    log_x: bool = False,
    annotation: Optional[str] = None,
) -> str:
    """Render ``(label, xs, ys)`` series as polylines with markers.

    ``log_x`` plots against log10(x). Non-finite points are dropped.
    """
    pts = []
    for label, xs, ys in series:
        keep = [
            (math.log10(x) if log_x else x, y)
            for x, y in zip(xs, ys)
            if y is not None and math.isfinite(y) and (x > 0 or not log_x)
        ]
        pts.append((label, keep))
    allx = [p[0] for _, s in pts for p in s] or [0.0, 1.0]
    ally = [p[1] for _, s in pts for p in s] or [0.0, 1.0]
    x0, x1 = min(allx), max(allx)
    y0, y1 = min(ally), max(ally)
    if x1 == x0:
        x0, x1 = x0 - 1, x1 + 1
    if y1 == y0:
        y0, y1 = y0 - 1, y1 + 1
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(x):
        return LEFT + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return TOP + (1 - (y - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>',
    ]
    for t in _ticks(x0, x1):
        lab = f"{10 ** t:.4g}" if log_x else f"{t:.4g}"
        out.append(f'<line x1="{sx(t):.2f}" y1="{TOP + ph}" x2="{sx(t):.2f}" y2="{TOP + ph + 5}" stroke="#444"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{TOP + ph + 18}" text-anchor="middle">{lab}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{LEFT - 5}" y1="{sy(t):.2f}" x2="{LEFT}" y2="{sy(t):.2f}" stroke="#444"/>')
        out.append(f'<text x="{LEFT - 8}" y="{sy(t) + 4:.2f}" text-anchor="end">{t:.4g}</text>')
    out.append(f'<text x="{LEFT + pw / 2}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="16" y="{TOP + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {TOP + ph / 2})">{escape(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for i, (label, s) in enumerate(pts):
        color = COLORS[i % len(COLORS)]
        if s:
            path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in s)
            out.append(f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>')
            out.extend(
                f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" fill="{color}"/>' for x, y in s
            )
        ly = TOP + 16 + 16 * i
        out.append(f'<line x1="{LEFT + 10}" y1="{ly}" x2="{LEFT + 30}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{LEFT + 36}" y="{ly + 4}">{escape(label)}</text>')
    if annotation:
        out.append(f'<text x="{LEFT + pw - 8}" y="{TOP + ph - 10}" text-anchor="end">{escape(annotation)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
