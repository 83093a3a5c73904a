"""Acceptance checks, one test per criterion.

Every comparison is exact rational arithmetic; the only non-exact knobs are
the sample sizes, seeds, search budgets and the wall-clock limit pinned below.
Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import random
import time
from fractions import Fraction as F

import pytest

from reclaim import bounds, oracles, positioning, precedence, preemptive, single, two
from reclaim.generators import (FREE_MODE, LENGTHS_MODE, PRECEDENCE_MODE, GenerationError, gen_one_six_prec,
                                gen_partition_thm2, gen_random)
from reclaim.model import (PRECEDENCE, Instance, ReclaimAssignment, ResourceLimit, Schedule, makespan,
                           validate_instance, validate_schedule)
from reclaim.probe import FOUR_THIRDS, best_contiguous_oracle, conjecture_probe

from conftest import ACCEPTANCE, zigzag, one_sided, full_pads

# pinned sample sizes, seeds and budgets
C1_TRIALS, C1_MAX_N, C1_SEED = 1000, 50, 101
C4_SMALL, C4_SMALL_MAX_N = 470, 5
C4_LARGE, C4_LARGE_N = 30, (6, 8)
C4_LARGE_NODES = 10_000
C4_SEED = 104
C6_TRIALS, C6_MAX_N, C6_SEED = 200, 12, 106
C7_TRIALS, C7_HALF_TRIALS, C7_SEED = 300, 60, 107
C7_RUNTIME_LIMIT_S = 60
C8_TRIALS, C8_SEED = 500, 108
C8_ORACLE_MAX_N, C8_ORACLE_MAX_L = 5, 10
C10_MUTATIONS, C10_SEED = 10_000, 110
C11_TRIALS, C11_MAX_N, C11_MAX_L = 200, 5, 10
SPEEDS = (1, 2, 3, 5, F(3, 2))
# R0 clears [0,2] on P1 while R1 waits at 2, then R1 clears [2,4] on P2
HANDOFF = Instance.build(4, 2, [(0, 2)], [(2, 4)], precedence=[1, 2])


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


def check(n: int, failures: list, detail: str) -> None:
    record(n, not failures, detail if not failures else f"{detail}; first failure: {failures[0]}")
    assert not failures, failures[:5]


def random_free(rng: random.Random, max_n: int, max_L: int, min_n: int = 0):
    n = rng.randint(min_n, max_n)
    L = rng.randint(max(2, (n + 1) // 2), max(max_L, n))
    return gen_random(rng.randrange(2 ** 32), n, L, rng.choice(SPEEDS), FREE_MODE)


def c4_suite():
    rng = random.Random(C4_SEED)
    small = [random_free(rng, C4_SMALL_MAX_N, 14) for _ in range(C4_SMALL)]
    large = [random_free(rng, C4_LARGE_N[1], 16, C4_LARGE_N[0]) for _ in range(C4_LARGE)]
    return small, large


# ---------------------------------------------------------------------------

def test_c01_single_reclaimer_optimal():
    rng = random.Random(C1_SEED)
    failures = []
    for _ in range(C1_TRIALS):
        n = rng.randint(0, C1_MAX_N)
        inst = gen_random(rng.randrange(2 ** 32), n, rng.randint(max(n, 2), 4 * n + 10), rng.choice(SPEEDS))
        res = single.forward_backward(inst)
        lb = bounds.single_reclaimer_lower_bound(inst)
        if res.makespan != lb or validate_schedule(inst, res.schedule):
            failures.append((inst, res.makespan, lb))
    check(1, failures, f"forward_backward == single-reclaimer bound on {C1_TRIALS} instances (n <= {C1_MAX_N})")


def test_c02_zigzag_beats_unimodal():
    opt = oracles.oracle_two_free(zigzag()).makespan
    uni = two.best_contiguous_unimodal(zigzag()).makespan
    failures = [] if (opt, uni) == (F(72, 5), F(76, 5)) and opt < uni else [(opt, uni)]
    check(2, failures, f"zigzag instance oracle {opt}, best contiguous unimodal {uni}")


def test_c03_one_sided_gap():
    inst = one_sided()
    opt = oracles.oracle_two_free(inst).makespan
    uni = two.best_contiguous_unimodal(inst).makespan
    cont = best_contiguous_oracle(inst).makespan
    ok = opt == F(7, 2) and uni == cont == F(38, 9) and cont / opt == F(76, 63)
    check(3, [] if ok else [(opt, uni, cont)], f"one-sided instance contiguous {cont} (unimodal {uni}), optimum {opt}, "
                                               f"ratio {cont / opt}")


def test_c04_preemptive_bound():
    small, large = c4_suite()
    failures, in_e, skipped = [], 0, 0
    for i, inst in enumerate(small + large):
        pb = bounds.preemptive_bounds(inst)
        pre = preemptive.preemptive_schedule(inst)
        if pre.makespan != pb.k_star or validate_schedule(inst, pre.schedule, preemptive=pre.preemptive):
            failures.append(("preemptive", inst, pre.makespan, pb.k_star))
            continue
        budget = oracles.SearchBudget(max_nodes=C4_LARGE_NODES) if i >= len(small) else oracles.SearchBudget()
        try:
            opt = oracles.oracle_two_free(inst, budget).makespan
        except ResourceLimit:
            skipped += 1
            continue
        if pb.k_star > opt:
            failures.append(("bound above optimum", inst, pb.k_star, opt))
        x_star, _ = preemptive.split_point(inst)
        if any(a <= x_star <= b for a, b in bounds.occupancy_decomposition(inst).e):
            in_e += 1
            if opt != pb.k_star:
                failures.append(("x* in E but optimum differs", inst, pb.k_star, opt))
    total = len(small) + len(large)
    check(4, failures, f"K* == preemptive on {total}; K* <= oracle on {total - skipped} "
                       f"({skipped} with n >= {C4_LARGE_N[0]} over the {C4_LARGE_NODES}-node budget); "
                       f"equality on {in_e} with x* in E")


def test_c05_two_approximation():
    rng = random.Random(C1_SEED)
    suite = [random_free(rng, 20, 40) for _ in range(C1_TRIALS)]
    small, large = c4_suite()
    failures = []
    for inst in suite + small + large:
        res = two.two_approximation(inst)
        if res.makespan > 2 * bounds.preemptive_bounds(inst).k_star or validate_schedule(inst, res.schedule):
            failures.append(inst)
    apx = two.two_approximation(full_pads()).makespan
    opt = oracles.oracle_two_free(full_pads()).makespan
    if apx / opt != F(20, 14):
        failures.append(("full pads ratio", apx, opt))
    check(5, failures, f"approximation <= 2K* on {len(suite) + len(small) + len(large)} instances; "
                       f"full pads {apx}/{opt} = {apx / opt}")


def test_c06_single_precedence_dp():
    rng = random.Random(C6_SEED)
    failures = []
    for _ in range(C6_TRIALS):
        n = rng.randint(0, C6_MAX_N)
        inst = gen_random(rng.randrange(2 ** 32), n, rng.randint(max(n, 3), 30), rng.choice(SPEEDS), PRECEDENCE_MODE)
        res = precedence.dp_single_precedence(inst)
        want = oracles.oracle_single_prec_directions(inst)
        if res.makespan != want or validate_schedule(inst, res.schedule, PRECEDENCE):
            failures.append((inst, res.makespan, want))
    check(6, failures, f"single-reclaimer chain DP == direction oracle on {C6_TRIALS} chains (n <= {C6_MAX_N})")


def test_c07_two_precedence_dp():
    rng = random.Random(C7_SEED)
    failures = []
    cases = [(rng.randint(0, 4), rng.randint(2, 8), rng.choice((1, 2, 3))) for _ in range(C7_TRIALS)]
    cases += [(rng.randint(0, 4), rng.randint(2, 8), F(3, 2)) for _ in range(C7_HALF_TRIALS)]
    for n, L, s in cases:
        inst = gen_random(rng.randrange(2 ** 32), min(n, 2 * L), L, s, PRECEDENCE_MODE)
        res = precedence.dp_two_precedence(inst)
        want = oracles.oracle_two_prec(inst)
        if res.makespan != want or validate_schedule(inst, res.schedule, PRECEDENCE):
            failures.append((inst, res.makespan, want))
    hand = precedence.dp_two_precedence(HANDOFF).makespan
    if hand != 4:
        failures.append(("L=4 hand-off instance", hand))
    big = gen_random(C7_SEED, 10, 40, 2, PRECEDENCE_MODE)
    t0 = time.perf_counter()
    precedence.dp_two_precedence(big)
    elapsed = time.perf_counter() - t0
    if elapsed >= C7_RUNTIME_LIMIT_S:
        failures.append(("runtime", elapsed))
    check(7, failures, f"two-reclaimer chain DP == grid oracle on {len(cases)} sampled chains "
                       f"(n <= 4, L <= 8, {C7_HALF_TRIALS} with s = 3/2); hand-off instance {hand}; "
                       f"n=10 L=40 s=2 in {elapsed:.2f}s < {C7_RUNTIME_LIMIT_S}s")


def test_c08_positioning():
    rng = random.Random(C8_SEED)
    failures, checked, made = [], 0, 0
    while made < C8_TRIALS:
        n = rng.randint(1, 8)
        L = rng.randint(2, 10) if made % 2 else rng.randint(2, 30)
        try:
            inst = gen_random(rng.randrange(2 ** 32), n, L, rng.choice(SPEEDS), LENGTHS_MODE)
        except GenerationError:
            continue
        made += 1
        piles, res = positioning.fb_positioning(inst)
        lb = positioning.positioning_lower_bound(inst)
        fixed = res.detail["instance"]
        if res.makespan != lb or validate_instance(fixed) or validate_schedule(fixed, res.schedule, PRECEDENCE):
            failures.append(("placement", inst, res.makespan, lb))
        if len(inst.lengths) <= C8_ORACLE_MAX_N and inst.L <= C8_ORACLE_MAX_L:
            checked += 1
            opt = oracles.oracle_positioning_single(inst)
            if opt != lb:
                failures.append(("oracle", inst, opt, lb))
    check(8, failures, f"placement == lower bound on {C8_TRIALS} lengths instances; "
                       f"oracle confirms {checked} with n <= {C8_ORACLE_MAX_N}, L <= {C8_ORACLE_MAX_L}")


def test_c09_reductions():
    failures = []
    parts = []
    for a, subset in (([1, 1, 2], [2]), ([2, 2], [0])):
        art = gen_partition_thm2(a)
        opt = oracles.oracle_two_free(art.instance).makespan
        wit = gen_partition_thm2(a, subset)
        w = makespan(wit.witness)
        if opt > art.target_makespan or w > art.target_makespan or validate_schedule(wit.instance, wit.witness):
            failures.append((a, opt, w, art.target_makespan))
        parts.append(f"a={tuple(a)} oracle {opt} witness {w} <= {art.target_makespan}")
    no = gen_partition_thm2([1, 1, 4])
    opt = oracles.oracle_two_free(no.instance).makespan
    if not opt > no.target_makespan:
        failures.append(((1, 1, 4), opt, no.target_makespan))
    parts.append(f"a=(1,1,4) oracle {opt} > {no.target_makespan}")
    art = gen_one_six_prec([5, 1, 6, 1, 1, 7], [1, 3, 4])
    span = makespan(art.witness)
    if span != 162 or validate_schedule(art.placement, art.witness, PRECEDENCE):
        failures.append(("1,6 example", span))
    parts.append(f"1,6 witness {span}")
    check(9, failures, "; ".join(parts))


# ---------------------------------------------------------------------------
# validator fuzzing

def _originals(rng: random.Random):
    free, chains = [], []
    while len(free) < 150:
        inst = random_free(rng, 8, 20, 1)
        free.append((inst, two.two_approximation(inst).schedule))
        free.append((inst, two.best_contiguous_unimodal(inst).schedule))
        free.append((inst, single.forward_backward(inst).schedule))
    while len(chains) < 100:
        n = rng.randint(2, 6)
        inst = gen_random(rng.randrange(2 ** 32), n, rng.randint(n, 12), rng.choice((1, 2, 3)), PRECEDENCE_MODE)
        chains.append((inst, precedence.dp_two_precedence(inst).schedule))
        chains.append((inst, precedence.dp_single_precedence(inst).schedule))
    return free, chains


def _steepen(sched: Schedule, inst, rng: random.Random) -> Schedule:
    """Move one breakpoint earlier so its incoming segment is faster than s."""
    k = rng.choice([k for k in (0, 1) if any(a[1] != b[1] for a, b in zip(sched.path(k), sched.path(k)[1:]))])
    path = list(sched.path(k))
    i = rng.choice([i for i in range(1, len(path)) if path[i][1] != path[i - 1][1]])
    (t0, x0), (t1, x1) = path[i - 1], path[i]
    path[i] = (t0 + abs(x1 - x0) / (inst.s + 1), x1)
    p0, p1 = (tuple(path), sched.path1) if k == 0 else (sched.path0, tuple(path))
    return Schedule(p0, p1, sched.assignments)


def _drop(sched: Schedule, rng: random.Random) -> Schedule:
    jobs = list(sched.assignments)
    jobs.pop(rng.randrange(len(jobs)))
    return Schedule(sched.path0, sched.path1, tuple(jobs))


def _cross(sched: Schedule, inst) -> Schedule:
    """Prefix both paths with a swap of sides: R0 visits L while R1 visits 0."""
    L, d = inst.L, inst.L / inst.s
    shift = lambda path: tuple((t + 2 * d, x) for t, x in path)
    p0 = ((F(0), F(0)), (d, F(L)), (2 * d, F(0))) + shift(sched.path0)[1:]
    p1 = ((F(0), F(L)), (d, F(0)), (2 * d, F(L))) + shift(sched.path1)[1:]
    jobs = tuple(ReclaimAssignment(a.pile, a.reclaimer, a.t_start + 2 * d, a.t_end + 2 * d, a.direction, a.lo, a.hi)
                 for a in sched.assignments)
    return Schedule(p0, p1, jobs)


def _reorder(inst, rng: random.Random):
    order = list(inst.precedence)
    i = rng.randrange(len(order) - 1)
    order[i], order[i + 1] = order[i + 1], order[i]
    return inst.with_precedence(order)


def test_c10_validator_fuzzing():
    rng = random.Random(C10_SEED)
    free, chains = _originals(rng)
    failures = []
    for inst, sched in free:
        if validate_schedule(inst, sched):
            failures.append(("original rejected", inst))
    for inst, sched in chains:
        if validate_schedule(inst, sched, PRECEDENCE):
            failures.append(("original rejected", inst))
    counts = {"slope": 0, "uncovered": 0, "no-pass": 0, "precedence": 0}
    pool = free + chains
    for i in range(C10_MUTATIONS):
        kind = ("slope", "uncovered", "no-pass", "precedence")[i % 4]
        if kind == "precedence":
            inst, sched = rng.choice(chains)
            inst = _reorder(inst, rng)
        else:
            inst, sched = rng.choice(pool)
            sched = {"slope": lambda: _steepen(sched, inst, rng), "uncovered": lambda: _drop(sched, rng),
                     "no-pass": lambda: _cross(sched, inst)}[kind]()
        mode = PRECEDENCE if inst.precedence is not None else "free"
        found = {v.kind for v in validate_schedule(inst, sched, mode)}
        if kind in found:
            counts[kind] += 1
        else:
            failures.append((kind, sorted(found), inst))
    check(10, failures, f"{len(pool)} originals accepted; {C10_MUTATIONS} mutants rejected with the right class "
                        f"{counts}")


def test_c11_probe():
    rep = conjecture_probe(seed=0, trials=C11_TRIALS, max_n=C11_MAX_N, max_L=C11_MAX_L)
    emitted = rep.trials == C11_TRIALS and (rep.completed == C11_TRIALS or rep.truncated)
    note = "within 4/3" if rep.max_ratio <= FOUR_THIRDS else f"FLAGGED {len(rep.flagged)} above 4/3"
    record(11, emitted, f"probe {rep.completed}/{rep.trials} trials (n <= {C11_MAX_N}), max ratio {rep.max_ratio} "
                        f"({note}, witness seed {rep.witness_seed}); one-sided family ratios "
                        f"{', '.join(f's={k}: {v}' for k, v in rep.one_sided.items())}")
    assert emitted


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
