"""Placing stockpiles for one reclaimer that must follow a given chain order."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from .model import (LR, RL, InfeasibleInput, Instance, PathBuilder, ReclaimAssignment, Schedule,
                    SolveResult, Stockpile, parked, q)

GUARANTEED = "guaranteed"
UNKNOWN = "unknown"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LengthsInstance:
    lengths: tuple[int, ...]
    L: int
    s: Fraction

    @classmethod
    def build(cls, lengths, L: int, s) -> "LengthsInstance":
        inst = cls(tuple(int(p) for p in lengths), int(L), q(s))
        bad = [p for p in inst.lengths if not 0 < p <= inst.L]
        if bad:
            raise ValueError(f"lengths must lie in (0, L]: {bad}")
        if inst.s < 1:
            raise ValueError("travel speed must be >= 1")
        return inst

    @property
    def total(self) -> int:
        return sum(self.lengths)

    def prefix(self) -> list[int]:
        return [0] + list(accumulate(self.lengths))


def check_positioning_feasibility(inst: LengthsInstance) -> str:
    P = inst.total
    if 2 * P <= 3 * inst.L:
        return GUARANTEED
    if P > 2 * inst.L:
        return INFEASIBLE
    return UNKNOWN


def positioning_lower_bound(inst: LengthsInstance) -> Fraction:
    P = inst.total
    gap = min(abs(2 * pt - P) for pt in inst.prefix())
    return P + Fraction(gap) / inst.s


def balance_index(inst: LengthsInstance) -> int:
    """Largest k in 1..n with P^{k-1} + P^k <= P (the chain split point)."""
    return _split_index(inst.prefix())


def _split_index(pre: list[int]) -> int:
    P = pre[-1]
    return max([t for t in range(1, len(pre)) if pre[t - 1] + pre[t] <= P], default=1)


def fb_positioning(inst: LengthsInstance) -> tuple[list[Stockpile], SolveResult]:
    """Place piles so one out-and-back pass in chain order is optimal.

    Returns the placed piles, with ids equal to chain positions, and the
    schedule.  ``detail["instance"]`` holds the fixed-position instance the
    schedule refers to; its ids are renumbered pad by pad (``detail["id_map"]``).
    """
    n = len(inst.lengths)
    if check_positioning_feasibility(inst) != GUARANTEED:
        raise InfeasibleInput("total length exceeds 3L/2; a placement is not guaranteed")
    if n == 0:
        empty = Instance(inst.L, inst.s, (), (), ())
        sched = Schedule(parked(0, inst.L), parked(1, inst.L), ())
        return [], SolveResult(Fraction(0), sched, "fb-positioning", {"instance": empty})
    laid = _layout(inst.lengths, inst.L)
    reversed_chain = laid is None
    if reversed_chain:
        # the layout overflows a pad; lay out the reversed chain and walk it backwards
        laid = _layout(inst.lengths[::-1], inst.L)
        if laid is None:
            raise AssertionError("neither chain direction gives a layout that fits")
        case, k, back, fwd = laid
        place = {n + 1 - i: v for i, v in back.items()}
        forward = {n + 1 - i for i in back if i not in fwd}
    else:
        case, k, place, forward = laid

    inst_fixed, id_of = _fixed_instance(inst, place)
    path = PathBuilder(0, inst.s)
    jobs = []
    for i in range(1, n + 1):
        pad, l, r = place[i]
        start, end = (l, r) if i in forward else (r, l)
        if path.x != start:
            path.travel(start)
        t0 = path.t
        path.sweep(end)
        jobs.append(ReclaimAssignment(id_of[i], 0, t0, path.t, LR if i in forward else RL))
    if path.x != 0:
        path.travel(0)
    sched = Schedule(path.freeze(), parked(1, inst.L), tuple(jobs))
    span = path.t
    if span != positioning_lower_bound(inst):
        raise AssertionError(f"placement makespan {span} misses the lower bound")
    piles = [Stockpile(i, *place[i]) for i in range(1, n + 1)]
    detail = {"case": case, "k": k, "reversed": reversed_chain, "instance": inst_fixed,
              "id_map": id_of}
    return piles, SolveResult(span, sched, "fb-positioning", detail)


def _layout(p, L):
    """Two-case layout for chain lengths ``p``; None if a pad would overflow.

    Returns (case, k, place, forward) with ``place`` mapping chain index to
    (pad, l, r) and ``forward`` the set of piles swept left to right.
    """
    n = len(p)
    pre = [0] + list(accumulate(p))
    P = pre[-1]
    suf = [P - x for x in pre]
    k = _split_index(pre)
    place = {}
    if min(pre[k], suf[k - 1]) <= L:
        case = 1
        cut = k if pre[k] < suf[k - 1] else k - 1
        for i in range(1, cut + 1):
            place[i] = (1, pre[i - 1], pre[i])
        for i in range(cut + 1, n + 1):
            place[i] = (2, suf[i], suf[i - 1])
        forward = set(range(1, cut + 1))
    else:
        case = 2
        for i in range(1, k):
            place[i] = (1, pre[i - 1], pre[i])
        for i in range(k + 1, n + 1):
            place[i] = (1, pre[k - 1] + suf[i], pre[k - 1] + suf[i - 1])
        place[k] = (2, max(P - 2 * p[k - 1], 0), max(P - p[k - 1], p[k - 1]))
        forward = set(range(1, k + 1))
    if any(r > L for _, _, r in place.values()):
        return None
    return case, k, place, forward


def _fixed_instance(inst: LengthsInstance, place) -> tuple[Instance, dict[int, int]]:
    """Turn chain-indexed placements into an Instance with pad-ordered ids."""
    pads = {1: [], 2: []}
    for i, (pad, l, r) in place.items():
        pads[pad].append((l, r, i))
    for v in pads.values():
        v.sort()
    id_of = {}
    for pos, (_, _, i) in enumerate(pads[1] + pads[2]):
        id_of[i] = pos + 1
    chain = [id_of[i] for i in sorted(place)]
    fixed = Instance.build(inst.L, inst.s, [(l, r) for l, r, _ in pads[1]],
                           [(l, r) for l, r, _ in pads[2]], chain)
    return fixed, id_of
