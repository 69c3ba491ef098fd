"""Standalone SVG 1.1 plot of a discriminant with the levels +-2 and the bands
drawn bold on the energy axis.  Output depends only on the inputs."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .bands import BandStructure, spectral_hull
from .model import OperatorSpec
from .transfer import discriminant_eval

WIDTH, HEIGHT = 800, 500
LEFT, RIGHT, TOP, BOTTOM = 60, 20, 40, 70
Y_LIMIT = 4.0


def _f(x: float, digits: int = 2) -> str:
    # "-0.00" would make the bytes depend on the sign of rounding noise
    text = f"{x:.{digits}f}"
    return text[1:] if text.startswith("-") and float(text) == 0 else text


def render_discriminant(spec: OperatorSpec, bs: BandStructure, grid: int = 800,
                        energy_range: tuple[float, float] | None = None) -> str:
    if grid < 2:
        raise ValueError("grid needs at least 2 points")
    lo, hi = energy_range if energy_range is not None else spectral_hull(spec)
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def sx(E):
        return LEFT + (E - lo) / (hi - lo) * plot_w

    def sy(v):
        return TOP + (Y_LIMIT - v) / (2 * Y_LIMIT) * plot_h

    energies = np.linspace(lo, hi, grid)
    values = np.clip(discriminant_eval(spec, energies), -Y_LIMIT, Y_LIMIT)
    points = " ".join(f"{_f(sx(E))},{_f(sy(v))}" for E, v in zip(energies, values))

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<title>{escape(spec.label or "discriminant")}</title>',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black" stroke-width="1"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">'
        f'Discriminant of {escape(spec.label or f"period-{spec.period} operator")}</text>',
    ]
    for level in (2.0, -2.0):
        y = _f(sy(level))
        out.append(f'<line x1="{LEFT}" y1="{y}" x2="{LEFT + plot_w}" y2="{y}" stroke="gray" '
                   f'stroke-dasharray="4 3" stroke-width="1"/>')
        out.append(f'<text x="{LEFT - 6}" y="{y}" text-anchor="end" dominant-baseline="middle" '
                   f'font-family="sans-serif" font-size="11">{level:+.0f}</text>')
    zero = _f(sy(0.0))
    out.append(f'<line x1="{LEFT}" y1="{zero}" x2="{LEFT + plot_w}" y2="{zero}" stroke="black" stroke-width="0.5"/>')
    out.append(f'<polyline points="{points}" fill="none" stroke="steelblue" stroke-width="1.5"/>')

    edges = sorted({round(x, 12) for band in bs.bands for x in band})
    out.append('<g stroke="black" stroke-width="5" stroke-linecap="butt">')
    for l, r in bs.bands:
        out.append(f'<line x1="{_f(sx(l))}" y1="{zero}" x2="{_f(sx(r))}" y2="{zero}"/>')
    out.append("</g>")
    base = TOP + plot_h
    for E in edges:
        x = _f(sx(E))
        out.append(f'<line x1="{x}" y1="{base}" x2="{x}" y2="{base + 5}" stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{x}" y="{base + 8}" transform="rotate(60 {x} {base + 8})" '
                   f'font-family="sans-serif" font-size="10">{_f(E, 4)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
