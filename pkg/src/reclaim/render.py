"""Deterministic time-space SVG diagrams of schedules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import FREE, PRECEDENCE, Instance, Schedule, makespan, validate_schedule


@dataclass(frozen=True)
class RenderSpec:
    width_px: int = 800
    height_px: int = 400
    colors: tuple[str, str] = ("#1f77b4", "#d62728")
    dashes: tuple[str, str] = ("", "6 3")
    margin_px: int = 40

    def __post_init__(self):
        if self.width_px <= 0 or self.height_px <= 0:
            raise ValueError("render dimensions must be positive")
        if 2 * self.margin_px >= min(self.width_px, self.height_px):
            raise ValueError("margin leaves no room for the plot")


def fmt(v) -> str:
    """Six decimals, rounded half to even, computed exactly."""
    micro = round(Fraction(v) * 10 ** 6)  # Fraction rounding is half-even
    sign = "-" if micro < 0 else ""
    whole, frac = divmod(abs(micro), 10 ** 6)
    return f"{sign}{whole}.{frac:06d}"


def render_svg(inst: Instance, sched: Schedule, spec: RenderSpec = RenderSpec()) -> str:
    mode = FREE if inst.precedence is None else PRECEDENCE
    preemptive = any(a.lo is not None or a.hi is not None for a in sched.assignments)
    bad = validate_schedule(inst, sched, mode, preemptive=preemptive)
    if bad:
        raise ValueError(f"refusing to render an invalid schedule: {bad[0]}")
    m = spec.margin_px
    w, h = spec.width_px - 2 * m, spec.height_px - 2 * m
    span = makespan(sched) or Fraction(1)
    L = Fraction(inst.L) or Fraction(1)

    def X(t):
        return fmt(m + Fraction(t) * w / span)

    def Y(x):
        return fmt(m + h - Fraction(x) * h / L)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width_px}" '
           f'height="{spec.height_px}" viewBox="0 0 {spec.width_px} {spec.height_px}">']
    shades = {1: "#bbbbbb", 2: "#e0c080"}
    for p in inst.piles:
        out.append(f'<rect class="pile p{p.pad}" x="{X(0)}" y="{Y(p.r)}" width="{fmt(w)}" '
                   f'height="{fmt(Fraction(p.length) * h / L)}" fill="{shades[p.pad]}" '
                   f'fill-opacity="0.35"><title>pile {p.id} pad {p.pad}</title></rect>')
    out.append(f'<line class="axis" x1="{X(0)}" y1="{Y(0)}" x2="{X(span)}" y2="{Y(0)}" stroke="black"/>')
    out.append(f'<line class="axis" x1="{X(0)}" y1="{Y(0)}" x2="{X(0)}" y2="{Y(L)}" stroke="black"/>')
    out.append(f'<text x="{X(span)}" y="{fmt(m + h + 16)}" text-anchor="end" font-size="12">'
               f't = {fmt(makespan(sched))}</text>')
    out.append(f'<text x="{fmt(m - 4)}" y="{Y(L)}" text-anchor="end" font-size="12">L = {inst.L}</text>')
    for k, path in enumerate((sched.path0, sched.path1)):
        pts = " ".join(f"{X(t)},{Y(x)}" for t, x in path)
        dash = f' stroke-dasharray="{spec.dashes[k]}"' if spec.dashes[k] else ""
        out.append(f'<polyline class="R{k}" points="{pts}" fill="none" stroke="{spec.colors[k]}" '
                   f'stroke-width="2"{dash}/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
