"""Optimal preemptive two-reclaimer schedules via the balanced split point."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import elementary_segments, occupancy_decomposition, preemptive_bounds, segment_weight
from .model import LR, RL, Instance, Schedule, SolveResult, UnsupportedVariant
from .routes import free_route, sweep_of


@dataclass(frozen=True)
class SplitFunctions:
    breakpoints: tuple[Fraction, ...]
    f_values: tuple[Fraction, ...]
    g_values: tuple[Fraction, ...]


def split_functions(inst: Instance) -> SplitFunctions:
    segs = elementary_segments(inst)
    xs = [Fraction(0)]
    fs = [Fraction(0)]
    for a, b, kind in segs:
        xs.append(b)
        fs.append(fs[-1] + (b - a) * segment_weight(kind, inst.s))
    total = fs[-1]
    return SplitFunctions(tuple(xs), tuple(fs), tuple(total - v for v in fs))


def split_point(inst: Instance) -> tuple[Fraction, SplitFunctions]:
    """Point where clearing the left part costs as much as clearing the right."""
    if inst.precedence is not None:
        raise UnsupportedVariant("split_point is defined for the free-order variant only")
    funcs = split_functions(inst)
    xs, fs = funcs.breakpoints, funcs.f_values
    k0 = fs[-1] / 2
    if len(xs) == 1:  # zero-length pad
        return xs[0], funcs
    for k in range(1, len(xs)):
        if fs[k - 1] <= k0 < fs[k]:
            slope = (fs[k] - fs[k - 1]) / (xs[k] - xs[k - 1])
            return xs[k - 1] + (k0 - fs[k - 1]) / slope, funcs
    raise AssertionError("f is not strictly increasing")


def _left_part(inst: Instance, x: Fraction):
    """Sweeps for R0 clearing everything left of ``x`` out and back."""
    out = [sweep_of(p, LR, p.l, min(p.r, x)) for p in inst.piles_p1 if p.l < x]
    back = [sweep_of(p, RL, p.l, min(p.r, x)) for p in reversed(inst.piles_p2) if p.l < x]
    return out + back


def _right_part(inst: Instance, x: Fraction):
    out = [sweep_of(p, RL, max(p.l, x), p.r) for p in reversed(inst.piles_p1) if p.r > x]
    back = [sweep_of(p, LR, max(p.l, x), p.r) for p in inst.piles_p2 if p.r > x]
    return out + back


def preemptive_schedule(inst: Instance) -> SolveResult:
    if inst.precedence is not None:
        raise UnsupportedVariant("preemptive_schedule is defined for the free-order variant only")
    bounds = preemptive_bounds(inst)
    x_star, _ = split_point(inst)
    if bounds.argmin is not None:
        a, b = occupancy_decomposition(inst).e[bounds.argmin]
        left, right = _left_part(inst, a), _right_part(inst, b)
        detail = {"case": "gap", "gap": (a, b), "x_star": x_star}
    else:
        left, right = _left_part(inst, x_star), _right_part(inst, x_star)
        detail = {"case": "split", "x_star": x_star}
    p0, j0 = free_route(0, Fraction(0), inst.s, left)
    p1, j1 = free_route(1, Fraction(inst.L), inst.s, right)
    sched = Schedule(p0, p1, tuple(j0 + j1))
    span = max(p0[-1][0], p1[-1][0])
    cut = any(sw.cut for sw in left + right)
    if span != bounds.k_star:
        raise AssertionError(f"preemptive schedule {span} differs from bound {bounds.k_star}")
    return SolveResult(span, sched, "preemptive", detail, preemptive=cut)
