"""Domain types, trajectory geometry and the schedule validator.

All times and positions are exact ``Fraction`` values.  A reclaimer path is a
list of ``(t, x)`` breakpoints; between breakpoints the position is linear.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Point = tuple[Fraction, Fraction]

LR = "LR"
RL = "RL"

FREE = "free"
PRECEDENCE = "precedence"


class UnsupportedVariant(ValueError):
    """The solver does not handle this problem variant."""


class ResourceLimit(RuntimeError):
    """A configured size or search budget would be exceeded."""


class InfeasibleInput(ValueError):
    """Input parameters admit no valid instance or placement."""


def q(value) -> Fraction:
    """Coerce ints, strings like ``"7/2"`` and Fractions to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use int, str or Fraction")
    return Fraction(value)


@dataclass(frozen=True)
class Stockpile:
    id: int
    pad: int
    l: int
    r: int

    @property
    def length(self) -> int:
        return self.r - self.l


@dataclass(frozen=True)
class Instance:
    L: int
    s: Fraction
    piles_p1: tuple[Stockpile, ...] = ()
    piles_p2: tuple[Stockpile, ...] = ()
    precedence: Optional[tuple[int, ...]] = None

    @classmethod
    def build(cls, L: int, s, p1: Iterable = (), p2: Iterable = (),
              precedence: Optional[Iterable[int]] = None) -> "Instance":
        """Create an instance from ``(l, r)`` pairs; ids run over P1 then P2."""
        p1 = [tuple(x) for x in p1]
        p2 = [tuple(x) for x in p2]
        a = tuple(Stockpile(i + 1, 1, l, r) for i, (l, r) in enumerate(p1))
        b = tuple(Stockpile(len(p1) + i + 1, 2, l, r) for i, (l, r) in enumerate(p2))
        prec = None if precedence is None else tuple(precedence)
        return cls(L, q(s), a, b, prec)

    @property
    def n1(self) -> int:
        return len(self.piles_p1)

    @property
    def n(self) -> int:
        return len(self.piles_p1) + len(self.piles_p2)

    @property
    def piles(self) -> tuple[Stockpile, ...]:
        return self.piles_p1 + self.piles_p2

    def pile(self, pid: int) -> Stockpile:
        for p in self.piles:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def without_precedence(self) -> "Instance":
        return Instance(self.L, self.s, self.piles_p1, self.piles_p2, None)

    def with_precedence(self, order: Iterable[int]) -> "Instance":
        return Instance(self.L, self.s, self.piles_p1, self.piles_p2, tuple(order))


@dataclass(frozen=True)
class ReclaimAssignment:
    pile: int
    reclaimer: int
    t_start: Fraction
    t_end: Fraction
    direction: str
    # Sub-interval handled, only set for a cut pile in a preemptive schedule.
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None

    def span(self, inst: Instance) -> tuple[Fraction, Fraction]:
        p = inst.pile(self.pile)
        lo = Fraction(p.l) if self.lo is None else self.lo
        hi = Fraction(p.r) if self.hi is None else self.hi
        return lo, hi


@dataclass(frozen=True)
class Schedule:
    path0: tuple[Point, ...]
    path1: tuple[Point, ...]
    assignments: tuple[ReclaimAssignment, ...] = ()

    def path(self, k: int) -> tuple[Point, ...]:
        return self.path0 if k == 0 else self.path1


@dataclass
class SolveResult:
    makespan: Fraction
    schedule: Schedule
    solver: str
    detail: dict = field(default_factory=dict)
    preemptive: bool = False


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


# ---------------------------------------------------------------------------
# instance validation


def validate_instance(inst: Instance) -> list[Violation]:
    out: list[Violation] = []
    if not isinstance(inst.L, int) or inst.L < 0:
        out.append(Violation("range", f"pad length must be a non-negative integer, got {inst.L!r}"))
    if inst.s < 1:
        out.append(Violation("speed", f"travel speed must be >= 1, got {inst.s}"))
    expected = 1
    for pad, piles in ((1, inst.piles_p1), (2, inst.piles_p2)):
        prev = None
        for p in piles:
            if p.id != expected or p.pad != pad:
                out.append(Violation("ids", f"pile {p.id} on P{p.pad} breaks the P1-then-P2 numbering"))
            expected += 1
            if not (isinstance(p.l, int) and isinstance(p.r, int)):
                out.append(Violation("range", f"pile {p.id} endpoints must be integers"))
            if p.l >= p.r:
                out.append(Violation("degenerate", f"pile {p.id}: l < r required, got [{p.l},{p.r}]"))
            if p.l < 0 or p.r > inst.L:
                out.append(Violation("range", f"pile {p.id} [{p.l},{p.r}] outside [0,{inst.L}]"))
            if prev is not None and prev.r > p.l:
                out.append(Violation("overlap", f"overlap on P{pad}: piles {prev.id} and {p.id}"))
            prev = p
    if inst.precedence is not None:
        if sorted(inst.precedence) != list(range(1, inst.n + 1)):
            out.append(Violation("precedence", "precedence is not a permutation of the pile ids"))
    return out


# ---------------------------------------------------------------------------
# path geometry


def path_end(path: Sequence[Point]) -> Fraction:
    return path[-1][0]


def path_position(path: Sequence[Point], t) -> Fraction:
    """Exact position at time ``t``; ``t`` must lie within the path's span."""
    t = q(t)
    if not path or t < path[0][0] or t > path[-1][0]:
        raise ValueError(f"time {t} outside path domain")
    return position_clamped(path, t)


def position_clamped(path: Sequence[Point], t: Fraction) -> Fraction:
    """Like ``path_position`` but constant outside the span (parked reclaimer)."""
    if t <= path[0][0]:
        return path[0][1]
    if t >= path[-1][0]:
        return path[-1][1]
    lo, hi = 0, len(path) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if path[mid][0] <= t:
            lo = mid
        else:
            hi = mid
    (t0, x0), (t1, x1) = path[lo], path[hi]
    if t == t0:
        return x0
    return x0 + (x1 - x0) * (t - t0) / (t1 - t0)


def slopes(path: Sequence[Point]) -> list[Fraction]:
    return [(b[1] - a[1]) / (b[0] - a[0]) for a, b in zip(path, path[1:])]


def envelope(a: Sequence[Point], b: Sequence[Point], lo: Fraction, hi: Fraction,
             upper: bool) -> list[Point]:
    """Pointwise max (``upper``) or min of two paths on ``[lo, hi]``."""
    ts = {lo, hi}
    ts.update(t for t, _ in a if lo < t < hi)
    ts.update(t for t, _ in b if lo < t < hi)
    grid = sorted(ts)
    pts: list[Point] = []
    pick = max if upper else min
    for i, t in enumerate(grid):
        if i:
            t0 = grid[i - 1]
            d0 = position_clamped(a, t0) - position_clamped(b, t0)
            d1 = position_clamped(a, t) - position_clamped(b, t)
            if d0 * d1 < 0:
                tc = t0 + (t - t0) * d0 / (d0 - d1)
                pts.append((tc, position_clamped(a, tc)))
        pts.append((t, pick(position_clamped(a, t), position_clamped(b, t))))
    return simplify(pts)


def simplify(points: Iterable[Point]) -> list[Point]:
    """Drop repeated and collinear interior breakpoints."""
    out: list[Point] = []
    for t, x in points:
        if out and out[-1][0] == t:
            if out[-1][1] != x:
                raise ValueError(f"discontinuous path at t={t}")
            continue
        if len(out) >= 2:
            (ta, xa), (tb, xb) = out[-2], out[-1]
            if (xb - xa) * (t - tb) == (x - xb) * (tb - ta):
                out[-1] = (t, x)
                continue
        out.append((t, x))
    return out


class PathBuilder:
    """Incrementally assembles a reclaimer path from moves and waits."""

    def __init__(self, x, s, t=0):
        self.s = q(s)
        self.points: list[Point] = [(q(t), q(x))]

    @property
    def t(self) -> Fraction:
        return self.points[-1][0]

    @property
    def x(self) -> Fraction:
        return self.points[-1][1]

    def _push(self, t: Fraction, x: Fraction) -> None:
        pts = self.points
        if t == pts[-1][0]:
            if x != pts[-1][1]:
                raise ValueError("zero-duration move")
            return
        if len(pts) >= 2:
            (ta, xa), (tb, xb) = pts[-2], pts[-1]
            if (xb - xa) * (t - tb) == (x - xb) * (tb - ta):
                pts[-1] = (t, x)
                return
        pts.append((t, x))

    def travel(self, x) -> Fraction:
        x = q(x)
        self._push(self.t + abs(x - self.x) / self.s, x)
        return self.t

    def sweep(self, x) -> Fraction:
        x = q(x)
        self._push(self.t + abs(x - self.x), x)
        return self.t

    def wait_until(self, t) -> None:
        t = q(t)
        if t < self.t:
            raise ValueError("cannot wait into the past")
        self._push(t, self.x)

    def extend(self, points: Iterable[Point]) -> None:
        for t, x in points:
            if t < self.t:
                raise ValueError("points out of order")
            self._push(t, x)

    def freeze(self) -> tuple[Point, ...]:
        return tuple(self.points)


def parked(k: int, L: int) -> tuple[Point, ...]:
    """Path of a reclaimer that never leaves its anchor."""
    return ((Fraction(0), Fraction(0 if k == 0 else L)),)


def makespan(sched: Schedule) -> Fraction:
    return max(path_end(sched.path0), path_end(sched.path1))


# ---------------------------------------------------------------------------
# schedule validation


def _check_path(k: int, path: Sequence[Point], inst: Instance) -> list[Violation]:
    out: list[Violation] = []
    name = f"R{k}"
    anchor = Fraction(0 if k == 0 else inst.L)
    if not path:
        return [Violation("anchor", f"{name} path is empty")]
    if path[0] != (0, anchor):
        out.append(Violation("anchor", f"{name} must start at (0,{anchor}), starts at {path[0]}"))
    if path[-1][1] != anchor:
        out.append(Violation("anchor", f"{name} must end at x={anchor}, ends at {path[-1][1]}"))
    allowed = {Fraction(0), Fraction(1), Fraction(-1), inst.s, -inst.s}
    for (t0, x0), (t1, x1) in zip(path, path[1:]):
        if t1 <= t0:
            out.append(Violation("time-order", f"{name} breakpoint times not increasing at t={t1}"))
            continue
        v = (x1 - x0) / (t1 - t0)
        if v not in allowed:
            out.append(Violation("slope", f"{name} slope {v} on [{t0},{t1}] not in the alphabet"))
    for t, x in path:
        if x < 0 or x > inst.L:
            out.append(Violation("range", f"{name} position {x} at t={t} outside [0,{inst.L}]"))
    return out


def _check_no_pass(p0: Sequence[Point], p1: Sequence[Point]) -> list[Violation]:
    times = sorted({t for t, _ in p0} | {t for t, _ in p1})
    for t in times:
        h0 = position_clamped(p0, t)
        h1 = position_clamped(p1, t)
        if h1 < h0:
            return [Violation("no-pass", f"R1 at {h1} below R0 at {h0} at t={t}")]
    return []


def _check_sweep(a: ReclaimAssignment, path: Sequence[Point], inst: Instance) -> Optional[Violation]:
    lo, hi = a.span(inst)
    if a.direction not in (LR, RL):
        return Violation("assignment", f"pile {a.pile}: bad direction {a.direction!r}")
    if a.t_end - a.t_start != hi - lo or hi <= lo:
        return Violation("assignment", f"pile {a.pile}: window length differs from span {hi - lo}")
    if a.t_start < path[0][0] or a.t_end > path[-1][0]:
        return Violation("assignment", f"pile {a.pile}: window outside R{a.reclaimer} path")
    start, sign = (lo, 1) if a.direction == LR else (hi, -1)
    if position_clamped(path, a.t_start) != start or position_clamped(path, a.t_end) != start + sign * (hi - lo):
        return Violation("assignment", f"pile {a.pile}: R{a.reclaimer} not sweeping [{lo},{hi}] {a.direction}")
    for t, x in path:
        if a.t_start < t < a.t_end and x != start + sign * (t - a.t_start):
            return Violation("assignment", f"pile {a.pile}: sweep interrupted at t={t}")
    return None


def validate_schedule(inst: Instance, sched: Schedule, mode: str = FREE,
                      preemptive: bool = False) -> list[Violation]:
    """Return every feasibility violation of ``sched``; empty means feasible."""
    out = _check_path(0, sched.path0, inst) + _check_path(1, sched.path1, inst)
    if sched.path0 and sched.path1:
        out += _check_no_pass(sched.path0, sched.path1)

    ids = {p.id for p in inst.piles}
    by_pile: dict[int, list[ReclaimAssignment]] = {}
    for a in sched.assignments:
        if a.pile not in ids:
            out.append(Violation("assignment", f"unknown pile {a.pile}"))
            continue
        if a.reclaimer not in (0, 1):
            out.append(Violation("assignment", f"pile {a.pile}: bad reclaimer {a.reclaimer}"))
            continue
        by_pile.setdefault(a.pile, []).append(a)
        path = sched.path(a.reclaimer)
        if path:
            bad = _check_sweep(a, path, inst)
            if bad:
                out.append(bad)

    for p in inst.piles:
        got = by_pile.get(p.id, [])
        if not got:
            out.append(Violation("uncovered", f"pile {p.id} has no assignment"))
            continue
        if len(got) > 1 and not preemptive:
            out.append(Violation("duplicate", f"pile {p.id} has {len(got)} assignments"))
            continue
        spans = sorted(a.span(inst) for a in got)
        cursor = Fraction(p.l)
        for lo, hi in spans:
            if lo != cursor:
                break
            cursor = hi
        if cursor != p.r or spans[0][0] != p.l:
            out.append(Violation("uncovered", f"pile {p.id} not covered exactly by its assignments"))

    for k in (0, 1):
        mine = sorted((a for a in sched.assignments if a.reclaimer == k), key=lambda a: a.t_start)
        for a, b in zip(mine, mine[1:]):
            if b.t_start < a.t_end:
                out.append(Violation("time-overlap", f"R{k} reclaims piles {a.pile} and {b.pile} at once"))

    if mode == PRECEDENCE:
        if inst.precedence is None:
            out.append(Violation("precedence", "precedence mode requires a chain"))
        else:
            windows = {}
            for pid, items in by_pile.items():
                windows[pid] = (min(a.t_start for a in items), max(a.t_end for a in items))
            for i, j in zip(inst.precedence, inst.precedence[1:]):
                if i in windows and j in windows and windows[i][1] > windows[j][0]:
                    out.append(Violation("precedence", f"pile {j} starts before pile {i} ends"))
    return out


def is_feasible(inst: Instance, sched: Schedule, mode: str = FREE, preemptive: bool = False) -> bool:
    return not validate_schedule(inst, sched, mode, preemptive)
