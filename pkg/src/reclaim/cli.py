"""Command-line interface: validate, solve, bound, oracle, gen, render, probe.

Exit codes: 0 ok, 1 a violation was found, 2 usage or resource error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from typing import Any, Optional

from . import bounds, generators, oracles, positioning, precedence, preemptive, single, two
from .model import (FREE, PRECEDENCE, InfeasibleInput, Instance, ResourceLimit, UnsupportedVariant,
                    validate_instance, validate_schedule)
from .positioning import LengthsInstance
from .probe import conjecture_probe
from .render import RenderSpec, render_svg
from .serialize import (dumps, instance_to_dict, lengths_to_dict, load_instance, load_schedule,
                        piles_to_list, rat, schedule_to_dict)

OK, VIOLATION, ERROR = 0, 1, 2


def jsonable(v: Any) -> Any:
    if isinstance(v, Fraction):
        return rat(v)
    if isinstance(v, Instance):
        return instance_to_dict(v)
    if isinstance(v, LengthsInstance):
        return lengths_to_dict(v)
    if dataclasses.is_dataclass(v) and not isinstance(v, type):
        return {f.name: jsonable(getattr(v, f.name)) for f in dataclasses.fields(v)}
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = sorted(v) if isinstance(v, (set, frozenset)) else v
        return [jsonable(x) for x in items]
    return v


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _result_dict(res) -> dict:
    return {"solver": res.solver, "makespan": rat(res.makespan), "preemptive": res.preemptive,
            "schedule": schedule_to_dict(res.schedule), "detail": jsonable(res.detail)}


def _need(inst, kind, what):
    if not isinstance(inst, kind):
        raise UnsupportedVariant(f"{what} needs a {'lengths' if kind is LengthsInstance else 'positioned'} instance")
    return inst


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    inst = load_instance(args.instance)
    if isinstance(inst, LengthsInstance):
        print("ok")
        return OK
    bad = validate_instance(inst)
    if not bad and args.schedule:
        mode = args.mode or (FREE if inst.precedence is None else PRECEDENCE)
        sched = load_schedule(args.schedule)
        preempt = args.preemptive or any(a.lo is not None or a.hi is not None for a in sched.assignments)
        bad = validate_schedule(inst, sched, mode, preemptive=preempt)
    for v in bad:
        print(f"{v.kind}: {v.message}")
    if bad:
        return VIOLATION
    print("ok")
    return OK


SOLVE_VARIANTS = ("single-free", "preemptive", "two-free", "single-prec", "two-prec", "position-single-prec")


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    v = args.variant
    if v == "position-single-prec":
        piles, res = positioning.fb_positioning(_need(inst, LengthsInstance, v))
        out = _result_dict(res)
        out["piles"] = piles_to_list(piles)
        _emit(dumps(out), args.out)
        return OK
    inst = _need(inst, Instance, v)
    if v == "single-free":
        res = single.forward_backward(inst)
    elif v == "preemptive":
        res = preemptive.preemptive_schedule(inst)
    elif v == "two-free":
        res = two.best_contiguous_unimodal(inst) if args.method == "unimodal" else two.two_approximation(inst)
    elif v == "single-prec":
        res = precedence.dp_single_precedence(inst)
    else:
        res = precedence.dp_two_precedence(inst, args.max_states)
    _emit(dumps(_result_dict(res)), args.out)
    return OK


def cmd_bound(args) -> int:
    inst = load_instance(args.instance)
    if isinstance(inst, LengthsInstance):
        out = {"positioning_lower_bound": positioning.positioning_lower_bound(inst),
               "feasibility": positioning.check_positioning_feasibility(inst)}
    else:
        inst = inst.without_precedence()
        pb = bounds.preemptive_bounds(inst)
        occ = bounds.occupancy_decomposition(inst)
        x_star, _ = preemptive.split_point(inst)
        out = {"single_lower_bound": bounds.single_reclaimer_lower_bound(inst),
               "k0": pb.k0, "k_star": pb.k_star, "k_per_gap": list(pb.k_per_gap),
               "x_star": x_star, "q1": list(occ.q1), "q2": list(occ.q2), "e": list(occ.e)}
    _emit(dumps(jsonable(out)), args.out)
    return OK


ORACLE_VARIANTS = ("two-free", "single-prec", "two-prec", "position-single")


def cmd_oracle(args) -> int:
    inst = load_instance(args.instance)
    budget = oracles.SearchBudget(args.max_piles, args.max_grid, args.max_nodes)
    v = args.variant
    if v == "two-free":
        res = oracles.oracle_two_free(_need(inst, Instance, v), budget)
        out = _result_dict(res)
    elif v == "single-prec":
        out = {"makespan": oracles.oracle_single_prec_directions(_need(inst, Instance, v), args.max_piles)}
    elif v == "two-prec":
        out = {"makespan": oracles.oracle_two_prec(_need(inst, Instance, v), budget)}
    else:
        out = {"makespan": oracles.oracle_positioning_single(_need(inst, LengthsInstance, v), budget,
                                                             any_order=args.any_order)}
    _emit(dumps(jsonable(out)), args.out)
    return OK


def _ints(text: Optional[str]) -> Optional[list[int]]:
    if text is None:
        return None
    return [int(v) for v in text.split(",") if v.strip()]


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "random":
        inst = generators.gen_random(args.seed, args.n, args.L, args.s, args.mode)
        _emit(dumps(jsonable(inst)), args.out)
        return OK
    items = _ints(args.items)
    if not items:
        raise ValueError("--items is required for reduction families")
    subset = _ints(args.subset)
    if fam == "thm2":
        art = generators.gen_partition_thm2(items, subset)
    elif fam == "thm6":
        art = generators.gen_contiguous_thm6(items, subset)
    elif fam in ("thm8", "thm9"):
        art = generators.gen_positioning_partition(items, fam == "thm9", subset)
    else:
        art = generators.gen_one_six_prec(items, subset)
    _emit(dumps(jsonable(art.instance)), args.out)
    side = {"target_makespan": art.target_makespan, "yes_witness": art.yes_witness,
            "fixed_assignment": art.fixed_assignment,
            "witness": None if art.witness is None else schedule_to_dict(art.witness),
            "placement": art.placement}
    text = dumps(jsonable(side))
    if args.out:
        _emit(text, args.out + ".target.json")
    else:
        sys.stdout.write(text)
    return OK


def cmd_render(args) -> int:
    inst = _need(load_instance(args.instance), Instance, "render")
    sched = load_schedule(args.schedule)
    spec = RenderSpec(args.width, args.height)
    try:
        svg = render_svg(inst, sched, spec)
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return VIOLATION
    _emit(svg, args.out)
    return OK


def cmd_probe(args) -> int:
    budget = oracles.SearchBudget(max_nodes=args.max_nodes)
    rep = conjecture_probe(args.seed, args.trials, args.max_n, args.max_L, budget=budget)
    out = {"max_ratio": rep.max_ratio, "witness_seed": rep.witness_seed, "trials": rep.trials,
           "completed": rep.completed, "witness": rep.witness,
           "flagged": [{"seed": s, "ratio": r} for s, r in rep.flagged],
           "one_sided": rep.one_sided, "truncated": rep.truncated}
    _emit(dumps(jsonable(out)), args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reclaim", description="Two-reclaimer stockpile scheduling tools")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an instance and optionally a schedule")
    p.add_argument("instance")
    p.add_argument("schedule", nargs="?")
    p.add_argument("--mode", choices=(FREE, PRECEDENCE))
    p.add_argument("--preemptive", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="run a solver")
    p.add_argument("instance")
    p.add_argument("--variant", choices=SOLVE_VARIANTS, default="two-free")
    p.add_argument("--method", choices=("approx2", "unimodal"), default="approx2")
    p.add_argument("--max-states", type=int, default=precedence.DEFAULT_MAX_STATES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bound", help="print lower bounds")
    p.add_argument("instance")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("oracle", help="run a brute-force oracle")
    p.add_argument("instance")
    p.add_argument("--variant", choices=ORACLE_VARIANTS, default="two-free")
    p.add_argument("--max-nodes", type=int, default=oracles.SearchBudget.max_nodes)
    p.add_argument("--max-piles", type=int, default=oracles.SearchBudget.max_piles)
    p.add_argument("--max-grid", type=int, default=oracles.SearchBudget.max_grid)
    p.add_argument("--any-order", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", choices=("random", "thm2", "thm6", "thm8", "thm9", "thm16"), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--L", type=int, default=20)
    p.add_argument("--s", default="1")
    p.add_argument("--mode", choices=(generators.FREE_MODE, generators.PRECEDENCE_MODE, generators.LENGTHS_MODE),
                   default=generators.FREE_MODE)
    p.add_argument("--items", help="comma-separated Partition items")
    p.add_argument("--subset", help="comma-separated 0-based item indices for the witness")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("render", help="draw a schedule as SVG")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=400)
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("probe", help="compare best contiguous schedules with the optimum")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--max-L", type=int, default=10)
    p.add_argument("--max-nodes", type=int, default=oracles.SearchBudget.max_nodes)
    p.add_argument("--out")
    p.set_defaults(func=cmd_probe)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ResourceLimit, UnsupportedVariant, InfeasibleInput, ValueError, TypeError,
            KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
