"""Configuration enumeration: cubic reductions, oracles, branch identities.

The brute-force oracle scans the sorted chart on a dense grid, marks cells
where both remaining constraint functions change sign or nearly vanish,
and clusters them; solver output must match the cluster count for the
sorted-and-pattern-satisfying configurations.
"""

import math
from fractions import Fraction as F

import pytest

from isocert import configsolve as cs
from isocert import upoly as up


def test_parse_value_forms():
    assert cs.parse_value("3/2").rational_value() == F(3, 2)
    assert cs.parse_value("-2").rational_value() == -2
    v = cs.parse_value("8*sqrt(3)/3")
    assert (v * v).rational_value() == F(64, 3)
    assert cs.parse_value("sqrt(2)").d == 2
    assert cs.parse_value("-sqrt(2)").sign() == -1
    with pytest.raises(ValueError):
        cs.parse_value("sqrt(-1)")
    with pytest.raises(ValueError):
        cs.parse_value("two")


def test_newton_convert_basic():
    q = cs.newton_convert(4, 0, 1)
    assert q == up.upoly([1, 0, -2, 0, 1])  # x^4 - 2x^2 + 1 = (x^2-1)^2
    sq = up.mul(up.upoly([-1, 0, 1]), up.upoly([-1, 0, 1]))
    assert q == sq
    assert cs.newton_convert(0, 0, 0) == up.upoly([0, 0, 0, 0, 1])  # x^4


@pytest.mark.parametrize("S,A3,e4", [(4, 0, 1), (12, 0, F(-7, 2)), (8, 3, F(5, 7)), (6, F(1, 3), 0)])
def test_newton_convert_power_sums(S, A3, e4):
    q = cs.newton_convert(S, A3, e4)
    p = cs.power_sums_from_quartic(q, upto=3)
    assert p[0] == 0
    assert p[1] == S
    assert p[2] == A3


def test_isolate_real_roots_examples():
    roots = cs.isolate_real_roots(up.upoly([-2, 0, 1]), F(1, 10**6))
    assert len(roots) == 2 and all(m == 1 for _, _, m in roots)
    assert cs.isolate_real_roots(up.upoly([1, 0, 0, 0, 1]), F(1, 100)) == []
    p = up.mul(up.mul(up.upoly([-1, 1]), up.upoly([-1, 1])), up.upoly([1, 1]))
    roots = cs.isolate_real_roots(p, F(1, 1000))
    assert [m for _, _, m in roots] == [1, 2]
    with pytest.raises(ValueError):
        cs.isolate_real_roots(up.upoly([]), F(1, 10))


def test_system_I_even_spacing():
    params = cs.ScalarParams.make(12, 0)
    cfgs = cs.solve_system("I", params, F(1, 10**13))
    satisfied = [c for c in cfgs if c.constraint_satisfied]
    assert len(satisfied) == 1
    lams = satisfied[0].lambda_intervals(F(1, 10**13))
    mids = [(l.lo + l.hi) / 2 for l in lams]
    gap = 2 * math.sqrt(3 / 5)
    for a, b in zip(mids, mids[1:]):
        assert abs(float(b - a) - gap) < 1e-12
    checks = satisfied[0].verify_constraints(F(1, 10**12))
    assert all(checks.values())
    # The non-pattern solution is reported but flagged.
    flagged = [c for c in cfgs if not c.constraint_satisfied]
    assert len(flagged) == 1
    assert flagged[0].multiplicities == [1, 2, 1]


def test_system_II_radical_triple():
    params = cs.ScalarParams.make(4, "8*sqrt(3)/3")
    cfgs = cs.solve_system("II", params)
    assert len(cfgs) == 1
    cfg = cfgs[0]
    assert cfg.constraint_satisfied
    assert cfg.multiplicities == [3, 1]
    lams = cfg.lambda_intervals(F(1, 10**12))
    mids = [float((l.lo + l.hi) / 2) for l in lams]
    expected = [-1 / math.sqrt(3)] * 3 + [math.sqrt(3)]
    for got, want in zip(mids, expected):
        assert abs(got - want) < 1e-10
    assert all(cfg.verify_constraints(F(1, 10**10)).values())


def test_system_II_mirrored_radical():
    # The sign-flipped radical input lands the triple on the upper side:
    # middle-pair equality holds (tag II), bottom-pair equality does not.
    params = cs.ScalarParams.make(4, "-8*sqrt(3)/3")
    assert any("negative" in w for w in params.admissibility_warnings())
    cfgs = cs.solve_system("II", params)
    assert len(cfgs) == 1 and cfgs[0].constraint_satisfied
    assert cfgs[0].multiplicities == [1, 3]
    cfgs = cs.solve_system("III", params)
    assert len(cfgs) == 1 and not cfgs[0].constraint_satisfied


def test_system_III_clifford_pattern():
    params = cs.ScalarParams.make(4, 0)
    cfgs = cs.solve_system("III", params)
    satisfied = [c for c in cfgs if c.constraint_satisfied]
    assert len(satisfied) == 1
    lams = satisfied[0].lambda_intervals(F(1, 10**12))
    mids = [float((l.lo + l.hi) / 2) for l in lams]
    assert max(abs(a - b) for a, b in zip(mids, (-1, -1, 1, 1))) < 1e-11
    assert satisfied[0].multiplicities == [2, 2]


def test_admissibility_warnings():
    assert cs.ScalarParams.make(8, 1).admissibility_warnings() == []
    warns = cs.ScalarParams.make(4, "8*sqrt(3)/3").admissibility_warnings()
    assert any("range" in w for w in warns)
    assert any("bound" in w for w in warns)
    assert cs.ScalarParams.make(8, -1).admissibility_warnings()


def test_double_rooted_cubic_gives_triple_configuration():
    # 12x^3 - 36x + 24 = 12(x-1)^2(x+2): the doubled value 1 merges with a
    # simple-pair member into a triple; the other root has no real branch.
    params = cs.ScalarParams.make(12, -24)
    cfgs = cs.solve_system("II", params)
    assert len(cfgs) == 1
    assert cfgs[0].multiplicities == [1, 3]
    lams = cfgs[0].lambda_intervals(F(1, 10**10))
    mids = [float((l.lo + l.hi) / 2) for l in lams]
    assert max(abs(a - b) for a, b in zip(mids, (-3, 1, 1, 1))) < 1e-9


def test_empty_solution_set_is_valid():
    # A3 far beyond the cubic bound: no real configuration for system I.
    params = cs.ScalarParams.make(5, 40)
    cfgs = cs.solve_system("I", params)
    assert cfgs == []


# -- brute-force grid oracle ------------------------------------------------------

def _grid_oracle_count(tag: str, S: float, A3: float, n: int = 400) -> int:
    """Count sorted-chamber solutions of (p3 = A3, pattern) by grid refinement.

    Scans the chart, keeps cells where both constraint functions could
    vanish (sign change or small value against a cell-size threshold), then
    clusters adjacent hits.
    """

    def constraints(l1, l2):
        s = -(l1 + l2)
        disc = 2 * (S - l1 * l1 - l2 * l2) - s * s
        if disc < 0:
            return None
        r = math.sqrt(disc)
        l3, l4 = (s - r) / 2, (s + r) / 2
        if l2 > l3 + 1e-12:
            return None
        p3 = l1**3 + l2**3 + l3**3 + l4**3
        if tag == "I":
            pat = (l3 - l2) - (l2 - l1)
        elif tag == "II":
            pat = l3 - l2
        else:
            pat = l2 - l1
        return p3 - A3, pat

    bound = math.sqrt(S)
    step = 2 * bound / n
    hits = set()
    for i in range(n + 1):
        for j in range(2 * n + 1):
            l1 = -bound + i * step / 2
            if l1 > 0:
                continue
            l2 = -bound + j * step
            vals = constraints(l1, l2)
            if vals is None:
                continue
            c1, c2 = vals
            # Cell-local threshold: a root forces both functions small.
            if abs(c1) < 12 * step and abs(c2) < 6 * step:
                hits.add((round(l1 / (8 * step)), round(l2 / (8 * step))))
    # Cluster adjacent grid hits.
    clusters = 0
    seen = set()
    for cell in sorted(hits):
        if cell in seen:
            continue
        clusters += 1
        stack = [cell]
        while stack:
            c = stack.pop()
            if c in seen:
                continue
            seen.add(c)
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    nb = (c[0] + dx, c[1] + dy)
                    if nb in hits and nb not in seen:
                        stack.append(nb)
    return clusters


@pytest.mark.parametrize("tag,S,A3", [("I", 12, 0), ("III", 4, 0), ("II", 8, 2), ("I", 8, 1)])
def test_solution_count_matches_grid_oracle(tag, S, A3):
    params = cs.ScalarParams.make(S, A3)
    cfgs = cs.solve_system(tag, params)
    solver_count = sum(1 for c in cfgs if c.constraint_satisfied)
    oracle_count = _grid_oracle_count(tag, float(S), float(A3))
    assert solver_count == oracle_count


def test_case_branch_identities():
    rep = cs.case_branch_identities(cs.ScalarParams.make(6, 0))
    assert rep["status"] == "pass"
    assert rep["top_pair_cube_sum_identity"]
    assert rep["equality_pattern_3p3sq_eq_p2cubed"]
    assert rep["negativity_spot_checks_pass"]
    # Spot values of the collapsed cube sum -6 x (S/2 - 2 x^2).
    assert -6 * 1 * (F(6, 2) - 2) == -6      # x = 1, S = 6: strictly negative
    assert -6 * 1 * (F(4, 2) - 2) == 0       # x = 1, S = 4: boundary case


def test_pattern_cube_identity_values():
    # (3, -1, -1, -1): p2 = 12, p3 = 24, and 3 * 24^2 = 12^3.
    lams = (3, -1, -1, -1)
    p2 = sum(x * x for x in lams)
    p3 = sum(x**3 for x in lams)
    assert (p2, p3) == (12, 24)
    assert 3 * p3**2 == p2**3
