"""Empirical check of how far the best contiguous schedule is from optimal."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .generators import gen_random
from .model import Instance, ResourceLimit, SolveResult
from .oracles import SearchBudget, oracle_two_free

FOUR_THIRDS = Fraction(4, 3)


def contiguous_assignment(inst: Instance, j: int, jp: int) -> dict[int, int]:
    """R0 gets P1 piles 1..j and P2 piles n1+1..jp; R1 the rest."""
    out = {}
    for p in inst.piles_p1:
        out[p.id] = 0 if p.id <= j else 1
    for p in inst.piles_p2:
        out[p.id] = 0 if p.id <= jp else 1
    return out


def best_contiguous_oracle(inst: Instance, budget: SearchBudget = SearchBudget()) -> SolveResult:
    """Minimum over contiguous assignments, each routed optimally by the oracle."""
    best = None
    for j in range(inst.n1 + 1):
        for jp in range(inst.n1, inst.n + 1):
            res = oracle_two_free(inst, budget, contiguous_assignment(inst, j, jp))
            if best is None or res.makespan < best.makespan:
                best = res
                best.detail["pair"] = (j, jp)
    best.solver = "best-contiguous-oracle"
    return best


def one_sided_instance(s=18) -> Instance:
    return Instance.build(6, s, [(0, 1), (1, 2), (2, 4), (4, 5), (5, 6)])


def one_sided_ratio(s) -> Fraction:
    """Closed-form contiguous/optimal ratio of the one-sided five-pile family (large s)."""
    s = Fraction(s)
    return (4 + 4 / s) / (3 + 9 / s)


@dataclass
class ProbeReport:
    trials: int
    completed: int = 0
    max_ratio: Fraction = Fraction(1)
    witness_seed: Optional[int] = None
    witness: Optional[Instance] = None
    flagged: list = field(default_factory=list)
    one_sided: dict = field(default_factory=dict)
    truncated: bool = False


def conjecture_probe(seed: int = 0, trials: int = 200, max_n: int = 5, max_L: int = 10,
                     s_values: Sequence = (1, 2, 3, 5), one_sided_s: Sequence = (18, 100, 1000),
                     budget: SearchBudget = SearchBudget()) -> ProbeReport:
    rng = random.Random(seed)
    report = ProbeReport(trials)
    report.one_sided = {str(s): one_sided_ratio(s) for s in one_sided_s}
    for _ in range(trials):
        inst_seed = rng.randrange(2 ** 32)
        r = random.Random(inst_seed)
        n = r.randint(1, max_n)
        L = r.randint(max(1, (n + 1) // 2), max_L)
        inst = gen_random(inst_seed, n, L, r.choice(list(s_values)))
        try:
            opt = oracle_two_free(inst, budget).makespan
            contiguous = best_contiguous_oracle(inst, budget).makespan
        except ResourceLimit:
            report.truncated = True
            break
        report.completed += 1
        ratio = contiguous / opt if opt else Fraction(1)
        tie = ratio == report.max_ratio and (report.witness_seed is None or inst_seed < report.witness_seed)
        if ratio > report.max_ratio or tie:
            report.max_ratio, report.witness_seed, report.witness = ratio, inst_seed, inst
        if ratio > FOUR_THIRDS:
            report.flagged.append((inst_seed, ratio))
    return report
