"""Minimal static SVG output: barcodes and step plots of spectral-gap curves."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 360
MARGIN = 48


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _frame(title: str, body: list[str], xlabel: str, ylabel: str) -> str:
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 10}" text-anchor="middle" font-size="12">{escape(xlabel)}</text>',
        f'<text x="14" y="{HEIGHT / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 14 {HEIGHT / 2})">{escape(ylabel)}</text>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _xscale(lo: float, hi: float):
    span = hi - lo if hi > lo else 1.0
    return lambda x: MARGIN + (x - lo) / span * (WIDTH - 2 * MARGIN)


def _ticks(lo: float, hi: float, to_x) -> list[str]:
    out = []
    for k in range(5):
        v = lo + (hi - lo) * k / 4
        x = to_x(v)
        out.append(f'<text x="{_fmt(x)}" y="{HEIGHT - MARGIN + 16}" text-anchor="middle" '
                   f'font-size="10">{v:.3g}</text>')
    return out


def barcode_svg(bars: list[tuple[float, float]], degree: int, xmax: float | None = None) -> str:
    """Horizontal segments, one per bar; infinite bars run to the right edge."""
    finite = [x for b in bars for x in b if math.isfinite(x)]
    hi = xmax if xmax is not None else (max(finite) * 1.1 if finite and max(finite) > 0 else 1.0)
    to_x = _xscale(0.0, hi)
    body = _ticks(0.0, hi, to_x)
    n = max(len(bars), 1)
    step = (HEIGHT - 2 * MARGIN) / (n + 1)
    for k, (b, d) in enumerate(bars):
        y = MARGIN + step * (k + 1)
        x2 = to_x(min(d, hi)) if math.isfinite(d) else WIDTH - MARGIN
        body.append(f'<line x1="{_fmt(to_x(b))}" y1="{_fmt(y)}" x2="{_fmt(x2)}" y2="{_fmt(y)}" '
                    f'stroke="#1f4e9a" stroke-width="3"/>')
        if not math.isfinite(d):
            body.append(f'<polygon points="{_fmt(x2)},{_fmt(y - 4)} {_fmt(x2 + 6)},{_fmt(y)} '
                        f'{_fmt(x2)},{_fmt(y + 4)}" fill="#1f4e9a"/>')
    return _frame(f"Interaction barcode, degree {degree}", body, "filtration value", "bars")


def step_svg(ts: list[float], values: list[float], degree: int, title: str | None = None) -> str:
    """Right-continuous step plot of ``values`` over ``ts``."""
    title = title or f"Spectral gap, degree {degree}"
    if not ts:
        return _frame(title, [], "filtration value", "smallest positive eigenvalue")
    lo, hi = min(ts), max(ts)
    if hi <= lo:
        hi = lo + 1.0
    vmax = max(max(values), 1e-12) * 1.1
    to_x = _xscale(lo, hi)

    def to_y(v):
        return HEIGHT - MARGIN - v / vmax * (HEIGHT - 2 * MARGIN)

    pts = []
    for k, (t, v) in enumerate(zip(ts, values)):
        if k:
            pts.append(f"{_fmt(to_x(t))},{_fmt(to_y(values[k - 1]))}")
        pts.append(f"{_fmt(to_x(t))},{_fmt(to_y(v))}")
    pts.append(f"{_fmt(WIDTH - MARGIN)},{_fmt(to_y(values[-1]))}")
    body = _ticks(lo, hi, to_x)
    body.append(f'<text x="{MARGIN - 4}" y="{_fmt(to_y(vmax / 1.1))}" text-anchor="end" '
                f'font-size="10">{vmax / 1.1:.3g}</text>')
    body.append(f'<polyline points="{" ".join(pts)}" fill="none" stroke="#b22222" stroke-width="2"/>')
    return _frame(title, body, "filtration value", "smallest positive eigenvalue")
