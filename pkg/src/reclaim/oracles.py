"""Brute-force exact solvers for small instances.

These are deliberately naive and share no code with the solvers; they only
use the path helpers and the validator from ``model``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence

from gmpy2 import mpq

from .model import (LR, RL, FREE, Instance, Point, ReclaimAssignment, ResourceLimit, Schedule,
                    SolveResult, UnsupportedVariant, simplify, validate_schedule)


@dataclass(frozen=True)
class SearchBudget:
    max_piles: int = 8
    max_grid: int = 64
    max_nodes: int = 2_000_000

    def check_piles(self, n: int) -> None:
        if n > self.max_piles:
            raise ResourceLimit(f"{n} piles exceed the oracle cap of {self.max_piles}")


class _Counter:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.cap:
            raise ResourceLimit(f"search exceeded {self.cap} nodes")


# ---------------------------------------------------------------------------
# two reclaimers, free order


def _ok(mine: Sequence[Point], other: Sequence[Point], low: bool, t0: Fraction) -> bool:
    """Does ``mine`` stay on its side of ``other`` from ``t0`` on?"""
    times = sorted({t for t, _ in mine if t > t0} | {t for t, _ in other if t > t0})
    ia = ib = 0
    for t in [t0] + times:
        ia = _seek(mine, t, ia)
        ib = _seek(other, t, ib)
        a, b = _at(mine, t, ia), _at(other, t, ib)
        if (a > b) if low else (a < b):
            return False
    return True


def _seek(path: Sequence[Point], t: Fraction, i: int) -> int:
    """Advance ``i`` to the last vertex with time <= t (pointer moves forward only)."""
    n = len(path)
    while i + 1 < n and path[i + 1][0] <= t:
        i += 1
    return i


def _at(path: Sequence[Point], t: Fraction, i: int) -> Fraction:
    t0, x0 = path[i]
    if t <= t0 or i + 1 == len(path):
        return x0
    t1, x1 = path[i + 1]
    return x0 + (x1 - x0) * (t - t0) / (t1 - t0)


def _level_times(path: Sequence[Point], x: Fraction) -> list[Fraction]:
    """Times at which ``path`` (parked after its end) is at level ``x``."""
    out = []
    for (t0, x0), (t1, x1) in zip(path, path[1:]):
        if x0 == x1 == x:
            out += [t0, t1]
        elif min(x0, x1) <= x <= max(x0, x1) and x0 != x1:
            out.append(t0 + (x - x0) * (t1 - t0) / (x1 - x0))
    if path[-1][1] == x:
        out.append(path[-1][0])
    if len(path) == 1 and path[0][1] == x:
        out.append(path[0][0])
    return out


def _motion(shape: str, T: Fraction, X: Fraction, a: Fraction, b: Fraction, start: Fraction,
            s: Fraction) -> list[Point]:
    d = abs(a - X) / s
    if shape == "wait-first":
        pts = [(T, X), (start - d, X), (start, a)]
    else:
        pts = [(T, X), (T + d, a), (start, a)]
    pts.append((start + abs(b - a), b))
    return simplify(pts)


def _shifted_vertices(shape: str, X: Fraction, a: Fraction, b: Fraction, s: Fraction):
    """Vertices whose time is ``start + offset``: (offset, x)."""
    d = abs(a - X) / s
    vs = [(mpq(0), a), (abs(b - a), b)]
    if shape == "wait-first":
        vs.append((-d, X))
    return vs


def _earliest(other: Sequence[Point], low: bool, T: Fraction, X: Fraction, a: Fraction,
              b: Fraction, s: Fraction, shape: str) -> Optional[tuple[Fraction, list[Point]]]:
    """Earliest sweep start for a move of the given shape that avoids ``other``."""
    t_min = T + abs(a - X) / s
    cands = {t_min}
    for off, x in _shifted_vertices(shape, X, a, b, s):
        cands.update(t - off for t in _level_times(other, x))
    segs = [(mpq(0), a, abs(b - a), b)]
    if shape == "wait-first":
        segs.append((-abs(a - X) / s, X, mpq(0), a))
    for to, xo in other:
        for c1, x1, c2, x2 in segs:
            if x1 != x2:
                v = (x2 - x1) / (c2 - c1)
                cands.add(to - c1 - (xo - x1) / v)
            else:
                cands.update((to - c1, to - c2))
    for start in sorted(c for c in cands if c >= t_min):
        pts = _motion(shape, T, X, a, b, start, s)
        if _ok(pts, other, low, T):
            return start, pts
    return None


def _floor(inst: Instance, s, L):
    """Preemptive lower bound: best split of [0, L] between the two reclaimers.

    Clearing a stretch covered on both pads costs 2 per unit, on one pad
    1 + 1/s, on neither 2/s (out and back).  Either the split falls at the
    balance point (half the total) or R0 and R1 stop at the two ends of an
    empty stretch.
    """
    cuts = sorted({0, inst.L} | {e for p in inst.piles for e in (p.l, p.r)})
    cost = [mpq(0)]
    empty = []
    for a, b in zip(cuts, cuts[1:]):
        mid = mpq(a + b, 2)
        cover = sum(1 for p in inst.piles if p.l < mid < p.r)
        weight = (2 / s, 1 + 1 / s, mpq(2))[cover]
        cost.append(cost[-1] + (b - a) * weight)
        empty.append(cover == 0)
    total = cost[-1]
    best = total / 2
    i = 0
    while i < len(empty):
        if empty[i]:
            j = i
            while j + 1 < len(empty) and empty[j + 1]:
                j += 1
            best = min(best, max(cost[i], total - cost[j + 1]))
            i = j + 1
        else:
            i += 1
    return best


@dataclass
class _Side:
    path: list
    jobs: list
    home: bool = False

    @property
    def t(self) -> Fraction:
        return self.path[-1][0]

    @property
    def x(self) -> Fraction:
        return self.path[-1][1]


def oracle_two_free(inst: Instance, budget: SearchBudget = SearchBudget(),
                    fixed_assignment: Optional[dict[int, int]] = None) -> SolveResult:
    """Exact minimum over eager two-reclaimer schedules.

    Depth-first search over job commits.  A commit hands one unreclaimed pile
    (with a direction) or the final trip home to one reclaimer, which executes
    it as early as possible around the other reclaimer's committed path.  The
    order of commits decides who yields to whom.  Two eager move shapes are
    tried per commit: wait then go, and go then wait at the sweep start.
    """
    if inst.precedence is not None:
        raise UnsupportedVariant("oracle_two_free handles the free-order variant")
    budget.check_piles(inst.n)
    # search in gmpy2 rationals for speed; converted back to Fraction at the end
    s, L = mpq(inst.s.numerator, inst.s.denominator), mpq(inst.L)
    piles = {p.id: p for p in inst.piles}
    counter = _Counter(budget.max_nodes)
    anchors = (mpq(0), L)
    best: list = [None, None]

    def allowed(pid: int, k: int) -> bool:
        return fixed_assignment is None or fixed_assignment.get(pid, k) == k

    def bound(ends, left) -> Fraction:
        """Lower bound from each side's (time, position, home) state."""
        lb = max(t + abs(x - anchors[k]) / s for k, (t, x, _) in enumerate(ends))
        work = sum(piles[p].length for p in left)
        open_ = [t for t, _, home in ends if not home]
        if open_:
            lb = max(lb, (sum(open_) + work) / len(open_))
        for pid in left:
            p = piles[pid]
            each = []
            for k, (t, x, home) in enumerate(ends):
                if home or not allowed(pid, k):
                    continue
                reach = min(abs(x - p.l), abs(x - p.r))
                back = min(abs(p.l - anchors[k]), abs(p.r - anchors[k]))
                each.append(t + (reach + back) / s + p.length)
            lb = max(lb, min(each) if each else mpq(10 ** 12))
        return lb

    floor = _floor(inst, s, L) if fixed_assignment is None else mpq(-1)

    def moves(sides, left):
        """Candidate commits ordered by their conflict-free finishing time."""
        out = []
        for k, sd in enumerate(sides):
            if sd.home:
                continue
            jobs = [(pid, d) for pid in sorted(left) if allowed(pid, k) for d in (LR, RL)]
            if not any(sides[1 - k].home or not allowed(pid, 1 - k) for pid in left):
                jobs.append((None, None))  # nothing left that only k can take
            for pid, d in jobs:
                if pid is None:
                    a = b = anchors[k]
                else:
                    p = piles[pid]
                    a, b = (mpq(p.l), mpq(p.r)) if d == LR else (mpq(p.r), mpq(p.l))
                done = sd.t + abs(a - sd.x) / s + abs(b - a)
                out.append((done, k, -1 if pid is None else pid, d or "", a, b))
        out.sort()
        return out

    def ends_of(sides):
        return [(sd.t, sd.x, sd.home) for sd in sides]

    seen_states = set()

    def dfs(sides, left):
        if best[0] is not None and best[0] <= floor:
            return  # matched the lower bound; nothing can beat it
        counter.tick()
        key = (tuple(sides[0].path), tuple(sides[1].path), sides[0].home, sides[1].home, left)
        if key in seen_states:
            return
        seen_states.add(key)
        if best[0] is not None and bound(ends_of(sides), left) >= best[0]:
            return
        if not left and all(sd.home for sd in sides):
            span = max(sd.t for sd in sides)
            if best[0] is None or span < best[0]:
                best[0], best[1] = span, [(list(sd.path), list(sd.jobs)) for sd in sides]
            return
        for done, k, pid, d, a, b in moves(sides, left):
            pid = None if pid < 0 else pid
            rest = left - {pid} if pid is not None else left
            if best[0] is not None:
                ends = ends_of(sides)
                ends[k] = (done, b, pid is None)
                if bound(ends, rest) >= best[0]:
                    continue
            sd = sides[k]
            tried = set()
            for shape in ("go-first", "wait-first"):
                hit = _earliest(sides[1 - k].path, k == 0, sd.t, sd.x, a, b, s, shape)
                if hit is None or tuple(hit[1]) in tried:
                    continue
                tried.add(tuple(hit[1]))
                start, pts = hit
                new = _Side(sd.path + pts[1:], list(sd.jobs), pid is None)
                if pid is not None:
                    new.jobs.append(ReclaimAssignment(pid, k, start, start + piles[pid].length, d))
                nxt = [new, sides[1]] if k == 0 else [sides[0], new]
                dfs(nxt, rest)

    start = [_Side([(mpq(0), mpq(0))], []), _Side([(mpq(0), L)], [])]
    dfs(start, frozenset(piles))
    if best[0] is None:
        raise AssertionError("oracle found no schedule")
    (p0, j0), (p1, j1) = best[1]
    jobs = tuple(ReclaimAssignment(j.pile, j.reclaimer, _frac(j.t_start), _frac(j.t_end), j.direction)
                 for j in j0 + j1)
    sched = Schedule(_frac_path(p0), _frac_path(p1), jobs)
    bad = validate_schedule(inst, sched, FREE)
    if bad:
        raise AssertionError(f"oracle schedule fails validation: {bad[0]}")
    return SolveResult(_frac(best[0]), sched, "oracle-two-free", {"nodes": counter.used})


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def _frac_path(points) -> tuple[Point, ...]:
    return tuple(simplify((_frac(t), _frac(x)) for t, x in points))


# ---------------------------------------------------------------------------
# precedence


def oracle_single_prec_directions(inst: Instance, max_piles: int = 20) -> Fraction:
    """Minimum over all 2^n direction vectors of the chain walk's duration."""
    if inst.precedence is None:
        raise UnsupportedVariant("a precedence chain is required")
    chain = [inst.pile(i) for i in inst.precedence]
    if len(chain) > max_piles:
        raise ResourceLimit(f"{len(chain)} piles exceed the cap of {max_piles}")
    best = None
    for dirs in product((True, False), repeat=len(chain)):
        x, t = Fraction(0), Fraction(0)
        for p, fwd in zip(chain, dirs):
            a, b = (p.l, p.r) if fwd else (p.r, p.l)
            t += abs(a - x) / inst.s + p.length
            x = Fraction(b)
        t += x / inst.s
        best = t if best is None else min(best, t)
    return best


def oracle_two_prec(inst: Instance, budget: SearchBudget = SearchBudget()) -> Fraction:
    """Full expansion of the stage graph, with no memo.

    Each stage gives the next chain pile to one reclaimer; the other ends the
    stage at any grid point (multiples of 1/denominator(s)) it can reach in
    time without crossing the active reclaimer's end point.
    """
    if inst.precedence is None:
        raise UnsupportedVariant("a precedence chain is required")
    budget.check_piles(inst.n)
    s, L = inst.s, inst.L
    unit = Fraction(1, s.denominator)
    steps = L * s.denominator
    if steps > budget.max_grid:
        raise ResourceLimit(f"grid of {steps} points exceeds cap {budget.max_grid}")
    grid = [i * unit for i in range(steps + 1)]
    chain = [inst.pile(i) for i in inst.precedence]
    rest = [sum(p.length for p in chain[j:]) for j in range(len(chain) + 1)]
    counter = _Counter(budget.max_nodes)
    best = [None]

    def go(j: int, x0: Fraction, x1: Fraction, t: Fraction) -> None:
        counter.tick()
        if best[0] is not None and t + rest[j] >= best[0]:
            return
        if j == len(chain):
            total = t + max(x0, L - x1) / s
            if best[0] is None or total < best[0]:
                best[0] = total
            return
        p = chain[j]
        for r0_active, fwd in product((True, False), repeat=2):
            a, b = (p.l, p.r) if fwd else (p.r, p.l)
            here, other = (x0, x1) if r0_active else (x1, x0)
            dur = abs(a - here) / s + p.length
            for y in grid:
                if abs(y - other) > dur * s:
                    continue
                if (r0_active and y < b) or (not r0_active and y > b):
                    continue
                if r0_active:
                    go(j + 1, Fraction(b), y, t + dur)
                else:
                    go(j + 1, y, Fraction(b), t + dur)

    go(0, Fraction(0), Fraction(L), Fraction(0))
    return best[0]


def oracle_positioning_single(inst, budget: SearchBudget = SearchBudget(),
                              any_order: bool = False) -> Fraction:
    """Minimum over pads, integer offsets and directions for one reclaimer.

    With ``any_order`` the reclaim order is free as well.  Reclaiming always
    takes the total length, so the search minimises the integer travel
    distance.  Pads are unit-cell bitmasks and interchangeable for a single
    reclaimer, so the memo key is (done, sorted pad masks, x).
    """
    p = tuple(inst.lengths)
    L, s = inst.L, inst.s
    budget.check_piles(len(p))
    if 2 * L > budget.max_grid:
        raise ResourceLimit(f"pads of length {L} exceed grid cap {budget.max_grid}")
    counter = _Counter(budget.max_nodes)
    full = (1 << len(p)) - 1
    INF = 10 ** 12

    @lru_cache(maxsize=None)
    def rest(done: int, pads: tuple[int, int], x: int) -> int:
        counter.tick()
        if done == full:
            return x
        todo = [i for i in range(len(p)) if not done >> i & 1]
        if not any_order:
            todo = todo[:1]
        best = INF
        for i in todo:
            n = p[i]
            for k in (0, 1) if pads[0] != pads[1] else (0,):
                occ, other = pads[k], pads[1 - k]
                for l in range(L - n + 1):
                    mask = ((1 << n) - 1) << l
                    if occ & mask:
                        continue
                    key = (occ | mask, other) if occ | mask < other else (other, occ | mask)
                    for a, b in ((l, l + n), (l + n, l)):
                        best = min(best, abs(a - x) + rest(done | 1 << i, key, b))
        return best

    travel = rest(0, (0, 0), 0)
    if travel >= INF:
        raise ValueError("the lengths cannot be placed on the pads")
    return sum(p) + Fraction(travel) / s

