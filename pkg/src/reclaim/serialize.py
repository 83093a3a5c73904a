"""JSON encoding of instances, schedules and results.

Rationals are written as ``"num/den"`` strings so nothing is rounded.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Union

from .model import Instance, ReclaimAssignment, Schedule, Stockpile, q
from .positioning import LengthsInstance


def rat(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def parse_rat(v) -> Fraction:
    if isinstance(v, bool):
        raise TypeError("booleans are not rationals")
    return q(v)


def instance_to_dict(inst: Instance) -> dict:
    return {
        "L": inst.L,
        "s": rat(inst.s),
        "pads": [[{"l": p.l, "r": p.r} for p in pad] for pad in (inst.piles_p1, inst.piles_p2)],
        "precedence": None if inst.precedence is None else list(inst.precedence),
    }


def lengths_to_dict(inst: LengthsInstance) -> dict:
    return {"L": inst.L, "s": rat(inst.s), "lengths": list(inst.lengths)}


def instance_from_dict(d: dict) -> Union[Instance, LengthsInstance]:
    if "lengths" in d:
        return LengthsInstance.build(d["lengths"], int(d["L"]), parse_rat(d["s"]))
    pads = d.get("pads", [[], []])
    if len(pads) != 2:
        raise ValueError("'pads' must hold exactly two lists")
    p1 = [(int(p["l"]), int(p["r"])) for p in pads[0]]
    p2 = [(int(p["l"]), int(p["r"])) for p in pads[1]]
    prec = d.get("precedence")
    return Instance.build(int(d["L"]), parse_rat(d["s"]), p1, p2,
                          None if prec is None else [int(i) for i in prec])


def schedule_to_dict(sched: Schedule) -> dict:
    jobs = []
    for a in sched.assignments:
        job: dict[str, Any] = {"pile": a.pile, "reclaimer": a.reclaimer, "t0": rat(a.t_start),
                               "t1": rat(a.t_end), "dir": a.direction}
        if a.lo is not None:
            job["lo"] = rat(a.lo)
        if a.hi is not None:
            job["hi"] = rat(a.hi)
        jobs.append(job)
    paths = [[[rat(t), rat(x)] for t, x in path] for path in (sched.path0, sched.path1)]
    return {"paths": paths, "assignments": jobs}


def schedule_from_dict(d: dict) -> Schedule:
    paths = d["paths"]
    if len(paths) != 2:
        raise ValueError("'paths' must hold exactly two paths")
    p0, p1 = (tuple((parse_rat(t), parse_rat(x)) for t, x in path) for path in paths)
    jobs = []
    for j in d.get("assignments", []):
        lo = parse_rat(j["lo"]) if j.get("lo") is not None else None
        hi = parse_rat(j["hi"]) if j.get("hi") is not None else None
        jobs.append(ReclaimAssignment(int(j["pile"]), int(j["reclaimer"]), parse_rat(j["t0"]),
                                      parse_rat(j["t1"]), j["dir"], lo, hi))
    return Schedule(p0, p1, tuple(jobs))


def piles_to_list(piles: list[Stockpile]) -> list[dict]:
    return [{"id": p.id, "pad": p.pad, "l": p.l, "r": p.r} for p in piles]


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_instance(path: str) -> Union[Instance, LengthsInstance]:
    with open(path) as fh:
        return instance_from_dict(json.load(fh))


def load_schedule(path: str) -> Schedule:
    with open(path) as fh:
        return schedule_from_dict(json.load(fh))
