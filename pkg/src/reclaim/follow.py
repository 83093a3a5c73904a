"""Earliest execution of a route by a reclaimer that yields to a fixed leader.

The yielding reclaimer (the follower) must stay on its own side of the
leader's path at all times.  The computation is done for a follower that has
to stay at or above the leader; a follower on the low side is handled by
reflecting positions through ``x -> L - x``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .model import Point, position_clamped, simplify
from .routes import Sweep


def _hover(lead: Sequence[Point], t0: Fraction, y0: Fraction, target: Fraction,
           s: Fraction) -> list[Point]:
    """Move down towards ``target`` as fast as the leader allows, then hold.

    Returns breakpoints of the follower from ``t0`` until the leader has come
    to rest and the follower sits at ``target``; the path is constant after.
    The leader may push the follower upwards while it holds.
    """
    pts = [(t0, y0)]
    t, y = t0, y0
    stops = sorted(tb for tb, _ in lead if tb > t0)
    idx = 0
    while True:
        lead_now = position_clamped(lead, t)
        if idx < len(stops):
            tb = stops[idx]
            v = (position_clamped(lead, tb) - lead_now) / (tb - t)
        else:
            tb, v = None, Fraction(0)
        if y > target and y > lead_now:
            steps = [(y - target) / s]
            if v > -s:
                steps.append((y - lead_now) / (s + v))
            if tb is not None:
                steps.append(tb - t)
            dt = min(steps)
            t, y = t + dt, y - s * dt
        elif y > target:
            if tb is None:
                raise AssertionError("leader came to rest above the follower's target")
            dt = tb - t if v >= 0 else min((y - target) / -v, tb - t)
            t, y = t + dt, y + v * dt
        else:
            if tb is None:
                return simplify(pts)
            if v > 0 and lead_now == y:
                t, y = tb, y + v * (tb - t)
            elif v > 0:
                t = t + min((y - lead_now) / v, tb - t)
            else:
                t = tb
        pts.append((t, y))
        if tb is not None and t == tb:
            idx += 1


def _sweep_ok(lead: Sequence[Point], T: Fraction, a: Fraction, b: Fraction) -> bool:
    d = 1 if b > a else -1
    end = T + abs(b - a)
    checks = [T, end] + [tb for tb, _ in lead if T < tb < end]
    return all(a + d * (t - T) >= position_clamped(lead, t) for t in checks)


def _earliest_sweep(lead: Sequence[Point], hover: list[Point], t_arr: Fraction,
                    a: Fraction, b: Fraction) -> Fraction:
    d = 1 if b > a else -1
    p = abs(b - a)
    cands = {t_arr}
    cands.update(t for t, x in hover if x == a and t >= t_arr)
    for (t0, x0), (t1, x1) in zip(lead, lead[1:]):
        cands.update((t0, t1, t0 - p, t1 - p))
        for tb, xb in ((t0, x0), (t1, x1)):
            cands.add(tb - (xb - a) / d)
        if x1 != x0:
            v = (x1 - x0) / (t1 - t0)
            for level, shift in ((a, 0), (b, p)):
                tc = t0 + (level - x0) / v
                if t0 <= tc <= t1:
                    cands.add(tc - shift)
    end = lead[-1][0]
    cands.update((end, end - p))
    for T in sorted(c for c in cands if c >= t_arr):
        if position_clamped(hover, T) == a and _sweep_ok(lead, T, a, b):
            return T
    raise AssertionError("no feasible sweep start found")


def follow(lead: Sequence[Point], start: Fraction, anchor: Fraction, s: Fraction,
           sweeps: Sequence[Sweep]) -> tuple[list[Point], list[Fraction]]:
    """Earliest path for a follower kept at or above ``lead``.

    Returns the follower's breakpoints (ending at ``anchor``) and the start
    time of each sweep.
    """
    pts: list[Point] = [(Fraction(0), start)]
    starts = []
    for sw in sweeps:
        t, y = pts[-1]
        if sw.start > y:
            t = t + (sw.start - y) / s
            pts.append((t, sw.start))
            y = sw.start
        hover = _hover(lead, t, y, sw.start, s)
        t_arr = next(tt for tt, x in hover if x == sw.start)
        T = _earliest_sweep(lead, hover, t_arr, sw.start, sw.end)
        pts.extend(pt for pt in hover if t < pt[0] < T)
        pts.append((T, sw.start))
        pts.append((T + abs(sw.end - sw.start), sw.end))
        starts.append(T)
    t, y = pts[-1]
    if y != anchor:
        pts.append((t + abs(anchor - y) / s, anchor))
    return simplify(pts), starts
