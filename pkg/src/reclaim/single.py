"""Optimal single-reclaimer schedule for fixed positions and free order."""

from __future__ import annotations

from .bounds import single_reclaimer_lower_bound
from .model import parked, LR, RL, Instance, PathBuilder, ReclaimAssignment, Schedule, SolveResult, UnsupportedVariant


def forward_backward(inst: Instance) -> SolveResult:
    """Sweep P1 outward left to right, then P2 back right to left.

    R1 stays parked at L.  The makespan matches the single-reclaimer bound.
    """
    if inst.precedence is not None:
        raise UnsupportedVariant("forward_backward does not take a precedence chain; use dp_single_precedence")
    path = PathBuilder(0, inst.s)
    jobs = []
    for p in inst.piles_p1:
        if path.x != p.l:
            path.travel(p.l)
        t0 = path.t
        jobs.append(ReclaimAssignment(p.id, 0, t0, path.sweep(p.r), LR))
    for p in reversed(inst.piles_p2):
        if path.x != p.r:
            path.travel(p.r)
        t0 = path.t
        jobs.append(ReclaimAssignment(p.id, 0, t0, path.sweep(p.l), RL))
    if path.x != 0:
        path.travel(0)
    sched = Schedule(path.freeze(), parked(1, inst.L), tuple(jobs))
    span = path.t
    assert span == single_reclaimer_lower_bound(inst)
    return SolveResult(span, sched, "forward-backward")
