"""Helpers for turning an ordered list of sweeps into a free-running path."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .model import LR, RL, PathBuilder, Point, ReclaimAssignment


@dataclass(frozen=True)
class Sweep:
    pile: int
    start: Fraction
    end: Fraction
    cut: bool = False  # True when only part of the pile is swept

    @property
    def direction(self) -> str:
        return LR if self.end > self.start else RL

    def assignment(self, k: int, t0: Fraction) -> ReclaimAssignment:
        lo, hi = min(self.start, self.end), max(self.start, self.end)
        t1 = t0 + hi - lo
        if self.cut:
            return ReclaimAssignment(self.pile, k, t0, t1, self.direction, lo, hi)
        return ReclaimAssignment(self.pile, k, t0, t1, self.direction)


def sweep_of(pile, direction: str, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> Sweep:
    a = Fraction(pile.l if lo is None else lo)
    b = Fraction(pile.r if hi is None else hi)
    cut = (a, b) != (pile.l, pile.r)
    return Sweep(pile.id, a, b, cut) if direction == LR else Sweep(pile.id, b, a, cut)


def free_route(k: int, anchor: Fraction, s: Fraction, sweeps: Sequence[Sweep],
               home: bool = True) -> tuple[tuple[Point, ...], list[ReclaimAssignment]]:
    """Execute sweeps in order without any waiting, then return to the anchor."""
    path = PathBuilder(anchor, s)
    jobs = []
    for sw in sweeps:
        if path.x != sw.start:
            path.travel(sw.start)
        jobs.append(sw.assignment(k, path.t))
        path.sweep(sw.end)
    if home and path.x != anchor:
        path.travel(anchor)
    return path.freeze(), jobs
