"""Random instances and the hardness-reduction constructions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .model import LR, RL, Instance, PathBuilder, ReclaimAssignment, Schedule, Stockpile, q
from .positioning import LengthsInstance
from .precedence import stage_schedule

FREE_MODE = "free"
PRECEDENCE_MODE = "precedence"
LENGTHS_MODE = "lengths"


class GenerationError(ValueError):
    pass


@dataclass
class ReductionArtifact:
    instance: Union[Instance, LengthsInstance]
    target_makespan: Fraction
    yes_witness: Optional[tuple[int, ...]] = None
    fixed_assignment: Optional[dict[int, int]] = None
    witness: Optional[Schedule] = None
    # positioning families: the fixed-position instance the witness runs on
    placement: Optional[Instance] = None


# ---------------------------------------------------------------------------
# random instances


def _pack(rng: random.Random, m: int, L: int) -> list[tuple[int, int]]:
    """m disjoint integer piles in [0, L], touching allowed."""
    v = sorted(rng.sample(range(L + m), 2 * m))
    return [(v[2 * i] - i, v[2 * i + 1] - i) for i in range(m)]


def gen_random(seed, n: int, L: int, s=1, mode: str = FREE_MODE):
    """Seeded random instance; the same arguments always give the same result."""
    if n < 0 or L <= 0:
        raise GenerationError("n must be >= 0 and L positive")
    rng = random.Random(seed)
    if mode == LENGTHS_MODE:
        cap = 3 * L // 2
        if n > cap:
            raise GenerationError(f"{n} unit piles already exceed 3L/2 = {cap}")
        if n == 0:
            return LengthsInstance.build((), L, s)
        total = rng.randint(n, min(cap, n * L))
        lengths = [1] * n
        for _ in range(total - n):
            i = rng.choice([j for j in range(n) if lengths[j] < L])
            lengths[i] += 1
        return LengthsInstance.build(lengths, L, s)
    if mode not in (FREE_MODE, PRECEDENCE_MODE):
        raise GenerationError(f"unknown mode {mode!r}")
    if n > 2 * L:
        raise GenerationError(f"{n} piles do not fit on two pads of length {L}")
    n1 = rng.randint(max(0, n - L), min(n, L))
    inst = Instance.build(L, s, _pack(rng, n1, L), _pack(rng, n - n1, L))
    if mode == PRECEDENCE_MODE:
        order = list(range(1, n + 1))
        rng.shuffle(order)
        inst = inst.with_precedence(order)
    return inst


# ---------------------------------------------------------------------------
# witness construction helpers


class _Walker:
    def __init__(self, k: int, x, s):
        self.k = k
        self.path = PathBuilder(x, s)
        self.jobs: list[ReclaimAssignment] = []

    def reclaim(self, pile: Stockpile, direction: str) -> None:
        start, end = (pile.l, pile.r) if direction == LR else (pile.r, pile.l)
        if self.path.x != start:
            self.path.travel(start)
        t0 = self.path.t
        self.path.sweep(end)
        self.jobs.append(ReclaimAssignment(pile.id, self.k, t0, self.path.t, direction))

    def pass_over(self, pile: Stockpile, direction: str) -> None:
        self.path.travel(pile.r if direction == LR else pile.l)

    def go(self, x) -> None:
        if self.path.x != x:
            self.path.travel(x)


def _schedule(w0: _Walker, w1: _Walker) -> Schedule:
    return Schedule(w0.path.freeze(), w1.path.freeze(), tuple(w0.jobs + w1.jobs))


def _half(a: Iterable[int]) -> int:
    a = [int(v) for v in a]
    if any(v <= 0 for v in a):
        raise GenerationError("Partition items must be positive integers")
    if sum(a) % 2:
        raise GenerationError(f"sum {sum(a)} is odd")
    return sum(a) // 2


def _subset(a, subset, B) -> Optional[frozenset[int]]:
    if subset is None:
        return None
    chosen = frozenset(int(i) for i in subset)
    if not chosen <= set(range(len(a))) or sum(a[i] for i in chosen) != B:
        raise GenerationError(f"indices {sorted(chosen)} do not pick items summing to {B}")
    return chosen


# ---------------------------------------------------------------------------
# reductions


def gen_partition_thm2(a, subset=None) -> ReductionArtifact:
    """All piles on P1: [0,2B], the items from 2B on, then [4B,6B]; L=6B, s=5B.

    ``subset`` (0-based item indices summing to B) produces the witness where
    R0 clears [0,2B] plus the chosen items and R1 clears the rest.
    """
    a = [int(v) for v in a]
    B = _half(a)
    L = 6 * B
    piles = [(0, 2 * B)]
    x = 2 * B
    for v in a:
        piles.append((x, x + v))
        x += v
    piles.append((4 * B, 6 * B))
    inst = Instance.build(L, 5 * B, piles)
    target = Fraction(3 * B + 1)
    chosen = _subset(a, subset, B)
    if chosen is None:
        return ReductionArtifact(inst, target)
    p = inst.piles_p1
    items = p[1:-1]
    w0, w1 = _Walker(0, 0, inst.s), _Walker(1, L, inst.s)
    w0.reclaim(p[0], LR)
    w1.go(2 * B)
    for i, pile in enumerate(items):
        (w0.reclaim if i in chosen else w0.pass_over)(pile, LR)
        (w1.pass_over if i in chosen else w1.reclaim)(pile, LR)
    w0.go(0)
    w1.reclaim(p[-1], LR)
    return ReductionArtifact(inst, target, tuple(sorted(chosen)), None, _schedule(w0, w1))


def gen_contiguous_thm6(a, subset=None) -> ReductionArtifact:
    """L=53B, s=2, with a fixed pile-to-reclaimer assignment; target 75B.

    P1 holds [0,9B], [9B,35B], [35B,51B] and the items packed right to left
    from L (item 1 rightmost).  P2 holds [0,35B], [35B,41B], [41B,43B].
    """
    a = [int(v) for v in a]
    B = _half(a)
    m = len(a)
    L = 53 * B
    tops = [L - sum(a[:j]) for j in range(m + 1)]
    items = [(tops[j + 1], tops[j]) for j in range(m)]  # item j+1 at [l_j, r_j]
    p1 = [(0, 9 * B), (9 * B, 35 * B), (35 * B, 51 * B)] + items[::-1]
    p2 = [(0, 35 * B), (35 * B, 41 * B), (41 * B, 43 * B)]
    inst = Instance.build(L, 2, p1, p2)
    item_id = {j: 3 + m - j for j in range(m)}  # 0-based item -> pile id
    d1, d2, d3 = inst.piles_p1[:3]
    e1, e2, e3 = inst.piles_p2
    fixed = {pid: 1 for pid in item_id.values()}
    fixed.update({d2.id: 1, d3.id: 1, e3.id: 1, d1.id: 0, e1.id: 0, e2.id: 0})
    target = Fraction(75 * B)
    chosen = _subset(a, subset, B)
    if chosen is None:
        return ReductionArtifact(inst, target, None, fixed)
    w0, w1 = _Walker(0, 0, 2), _Walker(1, L, 2)
    w0.reclaim(e2, LR)
    w0.go(35 * B)
    w0.reclaim(e1, RL)
    w0.reclaim(d1, LR)
    w0.go(0)
    for j in range(m):
        pile = inst.pile(item_id[j])
        (w1.reclaim if j in chosen else w1.pass_over)(pile, RL)
    w1.reclaim(d3, RL)
    w1.reclaim(e3, RL)
    w1.go(35 * B)
    w1.reclaim(d2, RL)
    w1.go(51 * B)
    for j in reversed(range(m)):
        pile = inst.pile(item_id[j])
        (w1.pass_over if j in chosen else w1.reclaim)(pile, LR)
    return ReductionArtifact(inst, target, tuple(sorted(chosen)), fixed, _schedule(w0, w1))


def gen_positioning_partition(a, two_reclaimers: bool = False, subset=None) -> ReductionArtifact:
    """Lengths a (plus two dummies of length B for two reclaimers), L=2B, s=1, target 2B."""
    a = [int(v) for v in a]
    B = _half(a)
    lengths = a + ([B, B] if two_reclaimers else [])
    inst = LengthsInstance.build(lengths, 2 * B, 1)
    target = Fraction(2 * B)
    chosen = _subset(a, subset, B)
    if chosen is None:
        return ReductionArtifact(inst, target)

    def packed(idx, start=0):
        out, x = [], start
        for i in idx:
            out.append((x, x + a[i]))
            x += a[i]
        return out

    mine = sorted(chosen)
    rest = [i for i in range(len(a)) if i not in chosen]
    if two_reclaimers:
        fixed = Instance.build(2 * B, 1, packed(mine) + packed(rest, B), [(0, B), (B, 2 * B)])
        w0, w1 = _Walker(0, 0, 1), _Walker(1, 2 * B, 1)
        for pile in fixed.piles_p1[:len(mine)]:
            w0.reclaim(pile, LR)
        w0.reclaim(fixed.piles_p2[0], RL)
        for pile in reversed(fixed.piles_p1[len(mine):]):
            w1.reclaim(pile, RL)
        w1.reclaim(fixed.piles_p2[1], LR)
    else:
        fixed = Instance.build(2 * B, 1, packed(mine), packed(rest))
        w0, w1 = _Walker(0, 0, 1), _Walker(1, 2 * B, 1)
        for pile in fixed.piles_p1:
            w0.reclaim(pile, LR)
        w0.go(B)
        for pile in reversed(fixed.piles_p2):
            w0.reclaim(pile, RL)
    return ReductionArtifact(inst, target, tuple(mine), None, _schedule(w0, w1), fixed)


def gen_one_six_prec(a, split=None) -> ReductionArtifact:
    """Chain of lengths (10B, 29B, B, 7B, a...) with L=36B, s=3; target 54B.

    ``split`` gives the 0-based indices of the items forming the part of sum
    B; the other items (sum 6B) form the second part.  With a split the
    witness placement and two-reclaimer schedule are produced.
    """
    a = [int(v) for v in a]
    if not a or any(v <= 0 for v in a):
        raise GenerationError("items must be positive integers")
    if sum(a) % 7:
        raise GenerationError(f"sum {sum(a)} is not divisible by 7")
    B = sum(a) // 7
    L = 36 * B
    lengths = [10 * B, 29 * B, B, 7 * B] + a
    inst = LengthsInstance.build(lengths, L, 3)
    target = Fraction(54 * B)
    if split is None:
        return ReductionArtifact(inst, target)
    small = frozenset(int(i) for i in split)
    if not small <= set(range(len(a))) or sum(a[i] for i in small) != B:
        raise GenerationError(f"indices {sorted(small)} do not pick items summing to {B}")

    # chain position -> (pad, l, r)
    place = {0: (1, 0, 10 * B), 1: (2, 7 * B, 36 * B), 2: (2, 6 * B, 7 * B), 3: (1, 10 * B, 17 * B)}
    top, cursor, pending = 6 * B, 17 * B, 0
    for i, v in enumerate(a):
        if i in small:
            l = cursor + 3 * pending
            place[4 + i] = (1, l, l + v)
            cursor, pending = l + v, 0
        else:
            place[4 + i] = (2, top - v, top)
            top -= v
            pending += v
    fixed = _placed_instance(L, place)
    ids = {c: _id_of(fixed, place[c]) for c in place}
    fixed = fixed.with_precedence([ids[c] for c in range(len(lengths))])

    # stage plan: (R0 active, enter from the left, passive goal)
    goals = [(True, True, L), (False, False, 7 * B), (True, False, 10 * B), (False, True, None)]
    for i in range(len(a)):
        if i in small:
            goals.append((False, True, None))
        else:
            nxt = next((place[4 + j][1] for j in range(i + 1, len(a)) if j in small), L)
            goals.append((True, False, nxt))
    plan = _reachable_plan(fixed, goals)
    sched = stage_schedule(fixed, plan)
    return ReductionArtifact(inst, target, tuple(sorted(small)), None, sched, fixed)


def _placed_instance(L: int, place) -> Instance:
    p1 = sorted((l, r) for pad, l, r in place.values() if pad == 1)
    p2 = sorted((l, r) for pad, l, r in place.values() if pad == 2)
    return Instance.build(L, 3, p1, p2)


def _id_of(inst: Instance, spot) -> int:
    pad, l, r = spot
    return next(p.id for p in inst.piles if (p.pad, p.l, p.r) == (pad, l, r))


def _reachable_plan(inst: Instance, goals) -> list[tuple[bool, bool, int]]:
    """Clip each passive goal to what the passive reclaimer can reach in its stage.

    A goal of None means hold position.  Positions are integers here (s is integral).
    """
    s = inst.s
    x0, x1 = 0, inst.L
    plan = []
    for pid, (r0_active, enter_left, goal) in zip(inst.precedence, goals):
        pile = inst.pile(pid)
        start, end = (pile.l, pile.r) if enter_left else (pile.r, pile.l)
        here, other = (x0, x1) if r0_active else (x1, x0)
        reach = int(abs(start - here) + pile.length * s)
        goal = other if goal is None else goal
        y = other + max(-reach, min(reach, goal - other))
        y = max(y, end) if r0_active else min(y, end)
        plan.append((r0_active, enter_left, y))
        x0, x1 = (end, y) if r0_active else (y, end)
    return plan
