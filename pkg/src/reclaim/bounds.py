"""Lower bounds: single-reclaimer bound, occupancy decomposition, preemptive bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .model import Instance

Interval = tuple[Fraction, Fraction]

ONE_SIDED = "Q1"
TWO_SIDED = "Q2"
EMPTY = "E"


@dataclass(frozen=True)
class OccupancyDecomposition:
    q1: tuple[Interval, ...]
    q2: tuple[Interval, ...]
    e: tuple[Interval, ...]

    @property
    def len_q1(self) -> Fraction:
        return sum((b - a for a, b in self.q1), Fraction(0))

    @property
    def len_q2(self) -> Fraction:
        return sum((b - a for a, b in self.q2), Fraction(0))

    @property
    def len_e(self) -> Fraction:
        return sum((b - a for a, b in self.e), Fraction(0))


@dataclass(frozen=True)
class PreemptiveBounds:
    k0: Fraction
    k_per_gap: tuple[Fraction, ...]
    k_star: Fraction
    argmin: Optional[int]  # index into the gap list, None when K0 attains the minimum


def single_reclaimer_lower_bound(inst: Instance) -> Fraction:
    piles = inst.piles
    if not piles:
        return Fraction(0)
    reach = max(p.r for p in piles)
    work = sum(p.length for p in piles)
    return Fraction(2 * reach) / inst.s + work - Fraction(work) / inst.s


def elementary_segments(inst: Instance) -> list[tuple[Fraction, Fraction, str]]:
    """Split [0, L] at all pile endpoints and classify each piece."""
    cuts = {0, inst.L}
    for p in inst.piles:
        cuts.update((p.l, p.r))
    cuts = sorted(cuts)

    out = []
    i1 = i2 = 0
    p1, p2 = inst.piles_p1, inst.piles_p2
    for a, b in zip(cuts, cuts[1:]):
        # piles are sorted per pad, so advance pointers monotonically
        while i1 < len(p1) and p1[i1].r <= a:
            i1 += 1
        while i2 < len(p2) and p2[i2].r <= a:
            i2 += 1
        c = int(i1 < len(p1) and p1[i1].l <= a) + int(i2 < len(p2) and p2[i2].l <= a)
        kind = (EMPTY, ONE_SIDED, TWO_SIDED)[c]
        out.append((Fraction(a), Fraction(b), kind))
    return out


def _merge(pieces: list[Interval]) -> tuple[Interval, ...]:
    out: list[Interval] = []
    for a, b in pieces:
        if out and out[-1][1] == a:
            out[-1] = (out[-1][0], b)
        else:
            out.append((a, b))
    return tuple(out)


def occupancy_decomposition(inst: Instance) -> OccupancyDecomposition:
    segs = elementary_segments(inst)
    pick = lambda kind: _merge([(a, b) for a, b, k in segs if k == kind])
    return OccupancyDecomposition(pick(ONE_SIDED), pick(TWO_SIDED), pick(EMPTY))


def segment_weight(kind: str, s: Fraction) -> Fraction:
    """Time per unit length for one reclaimer to clear a piece and come back."""
    if kind == TWO_SIDED:
        return Fraction(2)
    if kind == ONE_SIDED:
        return 1 + 1 / s
    return 2 / s


def left_cost(inst: Instance, x: Fraction) -> Fraction:
    """Return time of a reclaimer clearing everything left of ``x``."""
    total = Fraction(0)
    for a, b, kind in elementary_segments(inst):
        if a >= x:
            break
        total += (min(b, x) - a) * segment_weight(kind, inst.s)
    return total


def right_cost(inst: Instance, x: Fraction) -> Fraction:
    total = Fraction(0)
    for a, b, kind in elementary_segments(inst):
        if b <= x:
            continue
        total += (b - max(a, x)) * segment_weight(kind, inst.s)
    return total


def preemptive_bounds(inst: Instance) -> PreemptiveBounds:
    dec = occupancy_decomposition(inst)
    s = inst.s
    k0 = (2 * dec.len_q2 + dec.len_q1 + dec.len_q1 / s + 2 * dec.len_e / s) / 2
    gaps = tuple(max(left_cost(inst, a), right_cost(inst, b)) for a, b in dec.e)
    k_star = min((k0,) + gaps)
    argmin = None
    if k_star < k0:
        argmin = gaps.index(k_star)
    return PreemptiveBounds(k0, gaps, k_star, argmin)
