"""Exact solvers when stockpiles must be reclaimed in a fixed chain order."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .model import (LR, RL, Instance, PathBuilder, Point, ReclaimAssignment, ResourceLimit,
                    Schedule, SolveResult, UnsupportedVariant, envelope, parked, position_clamped, simplify)

DEFAULT_MAX_STATES = 50_000_000


def _chain(inst: Instance):
    if inst.precedence is None:
        raise UnsupportedVariant("a precedence chain is required")
    return [inst.pile(i) for i in inst.precedence]


def dp_single_precedence(inst: Instance) -> SolveResult:
    """Backward recursion over the chain; at each pile choose the entry side."""
    chain = _chain(inst)
    s = inst.s
    n = len(chain)
    # dummy piles at the origin on both ends of the chain
    ls = [0] + [p.l for p in chain] + [0]
    rs = [0] + [p.r for p in chain] + [0]
    # end_r[j]: best remaining time standing at r_j; end_l[j]: standing at l_j
    end_r = [Fraction(0)] * (n + 2)
    end_l = [Fraction(0)] * (n + 2)
    go_r = [False] * (n + 2)  # from r_j, enter pile j+1 from its left end?
    go_l = [False] * (n + 2)
    for j in range(n, -1, -1):
        p = rs[j + 1] - ls[j + 1]
        for here, table, choice in ((rs[j], end_r, go_r), (ls[j], end_l, go_l)):
            via_left = Fraction(abs(here - ls[j + 1])) / s + end_r[j + 1]
            via_right = Fraction(abs(here - rs[j + 1])) / s + end_l[j + 1]
            choice[j] = via_left <= via_right
            table[j] = p + min(via_left, via_right)

    path = PathBuilder(0, s)
    jobs = []
    at_left = True
    for j in range(n):
        enter_left = go_l[j] if at_left else go_r[j]
        pile = chain[j]
        start, end = (pile.l, pile.r) if enter_left else (pile.r, pile.l)
        if path.x != start:
            path.travel(start)
        t0 = path.t
        path.sweep(end)
        jobs.append(ReclaimAssignment(pile.id, 0, t0, path.t, LR if enter_left else RL))
        at_left = not enter_left
    if path.x != 0:
        path.travel(0)
    if path.t != end_l[0]:
        raise AssertionError("reconstruction disagrees with the recursion")
    sched = Schedule(path.freeze(), parked(1, inst.L), tuple(jobs))
    return SolveResult(end_l[0], sched, "dp-single-precedence")


# ---------------------------------------------------------------------------
# two reclaimers


@dataclass(frozen=True)
class ReachableSet:
    lo: int
    hi: int

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def points(self) -> range:
        return range(self.lo, self.hi + 1)


def reach_right(x: int, y: int, dist: int, top: int) -> ReachableSet:
    """Grid points in [y, top] within ``dist`` of ``x``."""
    return ReachableSet(max(y, x - dist), min(top, x + dist))


def reach_left(x: int, y: int, dist: int) -> ReachableSet:
    """Grid points in [0, y] within ``dist`` of ``x``."""
    return ReachableSet(max(0, x - dist), min(y, x + dist))


@dataclass(frozen=True)
class _Grid:
    scale: int        # positions are multiplied by this
    travel: int       # travel speed in grid units per time unit
    reclaim: int      # reclaim speed in grid units per time unit
    top: int
    chain: tuple      # (l, r) per chain position, grid units

    def stage(self, x: int, j: int, enter_left: bool) -> tuple[Fraction, int, int]:
        """Duration, travel distance reachable by the passive side, and end point."""
        l, r = self.chain[j]
        start, end = (l, r) if enter_left else (r, l)
        # distance covered by the other reclaimer = time * travel speed
        t = Fraction(abs(x - start), self.travel) + Fraction(r - l, self.reclaim)
        reach = abs(x - start) + (r - l) * self.travel // self.reclaim
        return t, reach, end


def _grid(inst: Instance) -> _Grid:
    s = inst.s
    a, b = s.numerator, s.denominator
    chain = tuple((p.l * b, p.r * b) for p in _chain(inst))
    return _Grid(b, a, b, inst.L * b, chain)


def _terminal(g: _Grid, x0: int, x1: int) -> Fraction:
    return max(Fraction(x0, g.travel), Fraction(g.top - x1, g.travel))


def dp_two_precedence(inst: Instance, max_states: int = DEFAULT_MAX_STATES) -> SolveResult:
    """Stage DP over integer positions of both reclaimers.

    At each stage one reclaimer (the active one) handles the next pile of the
    chain, entering from either end; the other repositions to any grid point
    it can reach in the same time without crossing the active reclaimer's
    end point.  For s = a/b positions are scaled by b so all reachable points
    stay on the grid.
    """
    g = _grid(inst)
    n = len(g.chain)
    est = max(n, 1) * 4 * (g.top + 1) ** 2
    if est > max_states:
        raise ResourceLimit(f"estimated {est} state evaluations exceed cap {max_states}")

    memo: list[dict] = [dict() for _ in range(n + 1)]

    def value(j: int, x0: int, x1: int) -> Fraction:
        if j == n:
            return _terminal(g, x0, x1)
        cell = memo[j].get((x0, x1))
        if cell is not None:
            return cell[0]
        best = None
        for option in range(4):
            r0_active = option < 2
            enter_left = option % 2 == 0
            here = x0 if r0_active else x1
            t, reach, end = g.stage(here, j, enter_left)
            if r0_active:
                pts = reach_right(x1, end, reach, g.top).points()
                cands = ((value(j + 1, end, x), x) for x in pts)
            else:
                pts = reach_left(x0, end, reach).points()
                cands = ((value(j + 1, x, end), x) for x in pts)
            for v, x in cands:
                total = t + v
                if best is None or total < best[0]:
                    best = (total, option, x)
        memo[j][(x0, x1)] = best
        return best[0]

    opt = value(0, 0, g.top)

    plan = []
    x0, x1 = 0, g.top
    for j in range(n):
        _, option, x = memo[j][(x0, x1)]
        plan.append((option < 2, option % 2 == 0, x))
        _, _, end = g.stage(x0 if option < 2 else x1, j, option % 2 == 0)
        x0, x1 = (end, x) if option < 2 else (x, end)
    sched = stage_schedule(inst, plan)
    span = max(sched.path0[-1][0], sched.path1[-1][0])
    if span != opt:
        raise AssertionError(f"reconstructed makespan {span} differs from DP value {opt}")
    states = sum(len(m) for m in memo)
    return SolveResult(opt, sched, "dp-two-precedence", {"states": states, "plan": plan})


def stage_schedule(inst: Instance, plan) -> Schedule:
    """Build explicit paths from stage decisions.

    ``plan`` holds ``(r0_active, enter_left, passive_target)`` per chain pile,
    with the target in grid units of the scaled instance.  The passive
    reclaimer heads for its target at full speed but never crosses the active
    one (it is pushed ahead or trails behind as needed).
    """
    g = _grid(inst)
    s = inst.s
    chain = _chain(inst)
    scale = Fraction(g.scale)
    p0: list[Point] = [(Fraction(0), Fraction(0))]
    p1: list[Point] = [(Fraction(0), Fraction(inst.L))]
    jobs = []
    for pile, (r0_active, enter_left, target) in zip(chain, plan):
        target = target / scale
        act, pas = (p0, p1) if r0_active else (p1, p0)
        t0, xa = act[-1]
        start, end = (pile.l, pile.r) if enter_left else (pile.r, pile.l)
        seg = PathBuilder(xa, s, t0)
        seg.travel(start)
        t_sweep = seg.t
        seg.sweep(end)
        t1 = seg.t
        jobs.append(ReclaimAssignment(pile.id, 0 if r0_active else 1, t_sweep, t1,
                                      LR if enter_left else RL))
        # passive: straight move towards its target, then hold
        tp, xp = pas[-1]
        if tp != t0:
            raise AssertionError("stage boundaries out of sync")
        aim = PathBuilder(xp, s, t0)
        aim.travel(target)
        if aim.t > t1:
            raise AssertionError("passive target not reachable within the stage")
        aim.wait_until(t1)
        moved = envelope(aim.points, seg.points, t0, t1, upper=r0_active)
        act.extend(seg.points[1:])
        pas.extend(moved[1:])
    # return home
    t = p0[-1][0]
    home0 = PathBuilder(p0[-1][1], s, t)
    home0.travel(0)
    home1 = PathBuilder(p1[-1][1], s, t)
    home1.travel(inst.L)
    p0.extend(home0.points[1:])
    p1.extend(home1.points[1:])
    return Schedule(tuple(simplify(p0)), tuple(simplify(p1)), tuple(jobs))
