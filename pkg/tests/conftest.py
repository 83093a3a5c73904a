from fractions import Fraction as F

from reclaim.model import LR, RL, Instance, ReclaimAssignment, Schedule

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def zigzag() -> Instance:
    return Instance.build(12, 5, [(0, 2), (2, 12)], [(0, 10), (10, 12)])


def zigzag_schedule() -> Schedule:
    """The hand-built optimum: R0 clears the long P2 pile, R1 the long P1 pile."""
    p0 = ((F(0), F(0)), (F(2), F(10)), (F(12), F(0)), (F(62, 5), F(2)), (F(72, 5), F(0)))
    p1 = ((F(0), F(12)), (F(10), F(2)), (F(58, 5), F(10)), (F(68, 5), F(12)))
    jobs = (
        ReclaimAssignment(3, 0, F(2), F(12), RL),
        ReclaimAssignment(1, 0, F(62, 5), F(72, 5), RL),
        ReclaimAssignment(2, 1, F(0), F(10), RL),
        ReclaimAssignment(4, 1, F(58, 5), F(68, 5), LR),
    )
    return Schedule(p0, p1, jobs)


def one_sided(s=18) -> Instance:
    return Instance.build(6, s, [(0, 1), (1, 2), (2, 4), (4, 5), (5, 6)])


def full_pads() -> Instance:
    return Instance.build(10, 5, [(0, 10)], [(0, 10)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
