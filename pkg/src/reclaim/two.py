"""Non-preemptive two-reclaimer schedules for fixed positions and free order.

A contiguous unimodal schedule is fixed by a pair ``(j, j')``: R0 takes P1
piles ``1..j`` and P2 piles ``n1+1..j'``, R1 takes the rest.  Each reclaimer
goes out on one pad and comes back on the other, and one of them (``k``)
yields whenever the two would collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .bounds import preemptive_bounds
from .follow import follow
from .model import LR, RL, Instance, Schedule, SolveResult, UnsupportedVariant
from .preemptive import split_point
from .routes import Sweep, free_route, sweep_of


@dataclass(frozen=True)
class PairChoice:
    j: int
    j_prime: int
    p: int = 1
    q: int = 1
    k: int = 1


class BoundaryFunctions:
    """Per-pad return times f1, f2 (from the left) and g1, g2 (from the right)."""

    def __init__(self, inst: Instance):
        self.inst = inst

    @staticmethod
    def _occupied(piles, lo, hi) -> Fraction:
        return sum((Fraction(max(0, min(p.r, hi) - max(p.l, lo))) for p in piles), Fraction(0))

    def _left(self, piles, x) -> Fraction:
        x = Fraction(x)
        occ = self._occupied(piles, 0, x)
        return occ + (x - occ) / self.inst.s

    def _right(self, piles, x) -> Fraction:
        x = Fraction(x)
        occ = self._occupied(piles, x, self.inst.L)
        return occ + (self.inst.L - x - occ) / self.inst.s

    def f1(self, x) -> Fraction:
        return self._left(self.inst.piles_p1, x)

    def f2(self, x) -> Fraction:
        return self._left(self.inst.piles_p2, x)

    def g1(self, x) -> Fraction:
        return self._right(self.inst.piles_p1, x)

    def g2(self, x) -> Fraction:
        return self._right(self.inst.piles_p2, x)

    def table(self) -> dict[int, tuple[Fraction, Fraction, Fraction, Fraction]]:
        xs = sorted({0, self.inst.L} | {e for p in self.inst.piles for e in (p.l, p.r)})
        return {x: (self.f1(x), self.f2(x), self.g1(x), self.g2(x)) for x in xs}


def _endpoints(inst: Instance, choice: PairChoice):
    """(r_j, r_j', l_{j+1}, l_{j'+1}) with the sentinel conventions."""
    n1, n = inst.n1, inst.n
    j, jp = choice.j, choice.j_prime
    if not (0 <= j <= n1 and n1 <= jp <= n):
        raise ValueError(f"pair ({j},{jp}) outside 0..{n1} x {n1}..{n}")
    if choice.p not in (1, 2) or choice.q not in (1, 2) or choice.k not in (0, 1):
        raise ValueError(f"bad routing choice {choice}")
    p1, p2 = inst.piles_p1, inst.piles_p2
    r_j = p1[j - 1].r if j > 0 else 0
    r_jp = p2[jp - n1 - 1].r if jp > n1 else 0
    l_j1 = p1[j].l if j < n1 else inst.L
    l_jp1 = p2[jp - n1].l if jp < n else inst.L
    return r_j, r_jp, l_j1, l_jp1


def pair_bounds(inst: Instance, choice: PairChoice, bf: BoundaryFunctions | None = None):
    """Earliest return times F (for R0) and G (for R1) when nobody waits."""
    bf = bf or BoundaryFunctions(inst)
    r_j, r_jp, l_j1, l_jp1 = _endpoints(inst, choice)
    s = inst.s
    F = bf.f1(r_j) + Fraction(abs(r_j - r_jp)) / s + bf.f2(r_jp)
    G = bf.g1(l_j1) + Fraction(abs(l_j1 - l_jp1)) / s + bf.g2(l_jp1)
    clash = not (l_jp1 >= r_j and l_j1 >= r_jp)
    return F, G, clash


def _routes(inst: Instance, choice: PairChoice):
    n1 = inst.n1
    a1 = inst.piles_p1[:choice.j]
    a2 = inst.piles_p2[:choice.j_prime - n1]
    b1 = inst.piles_p1[choice.j:]
    b2 = inst.piles_p2[choice.j_prime - n1:]
    if choice.p == 1:
        r0 = [sweep_of(p, LR) for p in a1] + [sweep_of(p, RL) for p in reversed(a2)]
    else:
        r0 = [sweep_of(p, LR) for p in a2] + [sweep_of(p, RL) for p in reversed(a1)]
    if choice.q == 1:
        r1 = [sweep_of(p, RL) for p in reversed(b1)] + [sweep_of(p, LR) for p in b2]
    else:
        r1 = [sweep_of(p, RL) for p in reversed(b2)] + [sweep_of(p, LR) for p in b1]
    return r0, r1


def _mirror(points, L):
    return [(t, L - x) for t, x in points]


def run_with_yield(inst: Instance, r0: list[Sweep], r1: list[Sweep], k: int) -> Schedule:
    """R(1-k) runs its route freely; R(k) executes its route as early as possible around it."""
    L = Fraction(inst.L)
    s = inst.s
    if k == 1:
        lead, lead_jobs = free_route(0, Fraction(0), s, r0)
        path, starts = follow(lead, L, L, s, r1)
        jobs = [sw.assignment(1, t) for sw, t in zip(r1, starts)]
        return Schedule(tuple(lead), tuple(path), tuple(lead_jobs + jobs))
    lead, lead_jobs = free_route(1, L, s, r1)
    flipped = [Sweep(sw.pile, L - sw.start, L - sw.end, sw.cut) for sw in r0]
    path, starts = follow(_mirror(lead, L), L, L, s, flipped)
    jobs = [sw.assignment(0, t) for sw, t in zip(r0, starts)]
    return Schedule(tuple(_mirror(path, L)), tuple(lead), tuple(jobs + lead_jobs))


def evaluate_pair(inst: Instance, choice: PairChoice) -> SolveResult:
    if inst.precedence is not None:
        raise UnsupportedVariant("unimodal schedules are for the free-order variant")
    F, G, clash = pair_bounds(inst, choice)
    r0, r1 = _routes(inst, choice)
    sched = run_with_yield(inst, r0, r1, choice.k)
    c0, c1 = sched.path0[-1][0], sched.path1[-1][0]
    if not clash and (c0, c1) != (F, G):
        raise AssertionError(f"waiting without a clash for {choice}")
    detail = {"choice": choice, "F": F, "G": G, "clash": clash,
              "waiting": (c1 - G) if choice.k == 1 else (c0 - F)}
    return SolveResult(max(c0, c1), sched, "unimodal-pair", detail)


def _all_choices(j: int, jp: int):
    for p, qq, k in product((1, 2), (1, 2), (0, 1)):
        yield PairChoice(j, jp, p, qq, k)


def _best(inst: Instance, choices) -> SolveResult:
    best = None
    for c in choices:
        res = evaluate_pair(inst, c)
        if best is None or res.makespan < best.makespan:
            best = res
    return best


def best_contiguous_unimodal(inst: Instance) -> SolveResult:
    if inst.precedence is not None:
        raise UnsupportedVariant("unimodal schedules are for the free-order variant")
    n1, n = inst.n1, inst.n
    choices = (c for j in range(n1 + 1) for jp in range(n1, n + 1) for c in _all_choices(j, jp))
    best = _best(inst, choices)
    best.solver = "best-contiguous-unimodal"
    return best


def approx_assignment(inst: Instance) -> tuple[int, int]:
    """Pair (j, j') produced by the split-point assignment rules."""
    x, _ = split_point(inst)
    s = inst.s
    to_r0 = {}
    straddle = []
    for p in inst.piles:
        if p.r <= x:
            to_r0[p.id] = True
        elif p.l >= x:
            to_r0[p.id] = False
        else:
            straddle.append(p)
    if len(straddle) == 1:
        p = straddle[0]
        to_r0[p.id] = x - p.l >= p.r - x
    elif len(straddle) == 2:
        a, b = straddle
        lhs = (x - a.l) + (x - b.l) + Fraction(abs(a.l - b.l)) / s
        rhs = (a.r - x) + (b.r - x) + Fraction(abs(a.r - b.r)) / s
        to_r0[a.id] = to_r0[b.id] = lhs >= rhs
    j = sum(to_r0[p.id] for p in inst.piles_p1)
    jp = inst.n1 + sum(to_r0[p.id] for p in inst.piles_p2)
    return j, jp


def two_approximation(inst: Instance) -> SolveResult:
    if inst.precedence is not None:
        raise UnsupportedVariant("the 2-approximation is for the free-order variant")
    j, jp = approx_assignment(inst)
    best = _best(inst, _all_choices(j, jp))
    best.solver = "two-approximation"
    k_star = preemptive_bounds(inst).k_star
    best.detail["k_star"] = k_star
    return best
