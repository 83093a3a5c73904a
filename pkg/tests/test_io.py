import json
import re
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reclaim import preemptive, two
from reclaim.generators import PRECEDENCE_MODE, gen_random
from reclaim.model import Instance, Schedule, parked
from reclaim.positioning import LengthsInstance
from reclaim.render import RenderSpec, fmt, render_svg
from reclaim.serialize import (dumps, instance_from_dict, instance_to_dict, lengths_to_dict, parse_rat, rat,
                               schedule_from_dict, schedule_to_dict)

from conftest import zigzag, zigzag_schedule


def test_rationals():
    assert rat(F(72, 5)) == "72/5" and rat(3) == "3/1"
    assert parse_rat("72/5") == F(72, 5) and parse_rat(4) == 4
    with pytest.raises(TypeError):
        parse_rat(0.5)
    with pytest.raises(TypeError):
        parse_rat(True)


def test_lengths_round_trip():
    inst = LengthsInstance.build((2, 5, 1), 6, F(3, 2))
    assert instance_from_dict(json.loads(dumps(lengths_to_dict(inst)))) == inst


def test_bad_pads():
    with pytest.raises(ValueError):
        instance_from_dict({"L": 4, "s": "1", "pads": [[]]})


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 8), st.integers(4, 20), st.sampled_from([1, F(3, 2), 5]),
       st.booleans())
def test_round_trip(seed, n, L, s, chain):
    inst = gen_random(seed, n, L, s, PRECEDENCE_MODE if chain else "free")
    assert instance_from_dict(json.loads(dumps(instance_to_dict(inst)))) == inst
    plain = inst.without_precedence()
    for sched in (two.two_approximation(plain).schedule, preemptive.preemptive_schedule(plain).schedule):
        assert schedule_from_dict(json.loads(dumps(schedule_to_dict(sched)))) == sched


def test_fmt_half_even():
    assert fmt(F(1, 2)) == "0.500000"
    assert fmt(F(1, 3)) == "0.333333"
    assert fmt(F(5, 10 ** 7)) == "0.000000"
    assert fmt(F(15, 10 ** 7)) == "0.000002"
    assert fmt(F(-7, 4)) == "-1.750000"


def polylines(svg):
    return re.findall(r'<polyline class="(R\d)"[^>]*points="([^"]*)"', svg)


def to_plot(points, span, L, spec=RenderSpec()):
    m = spec.margin_px
    w, h = spec.width_px - 2 * m, spec.height_px - 2 * m
    return " ".join(f"{fmt(m + F(t) * w / span)},{fmt(m + h - F(x) * h / L)}" for t, x in points)


def test_render_zigzag_breakpoints():
    svg = render_svg(zigzag(), zigzag_schedule())
    lines = dict(polylines(svg))
    r0 = [(0, 0), (2, 10), (12, 0), (F(62, 5), 2), (F(72, 5), 0)]
    r1 = [(0, 12), (10, 2), (F(58, 5), 10), (F(68, 5), 12)]
    assert lines["R0"] == to_plot(r0, F(72, 5), 12)
    assert lines["R1"] == to_plot(r1, F(72, 5), 12)


def test_render_is_deterministic():
    a = render_svg(zigzag(), zigzag_schedule())
    b = render_svg(zigzag(), zigzag_schedule())
    assert a.encode() == b.encode()


def test_render_empty_schedule():
    inst = Instance.build(5, 1)
    svg = render_svg(inst, Schedule(parked(0, 5), parked(1, 5), ()))
    assert len(polylines(svg)) == 2 and "<rect" not in svg


def test_render_refuses_invalid():
    sched = zigzag_schedule()
    broken = Schedule(sched.path0, sched.path1, sched.assignments[1:])
    with pytest.raises(ValueError):
        render_svg(zigzag(), broken)


def test_render_spec_checks():
    with pytest.raises(ValueError):
        RenderSpec(0, 100)
    with pytest.raises(ValueError):
        RenderSpec(60, 60, margin_px=40)
