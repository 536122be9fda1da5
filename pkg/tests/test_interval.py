"""Directed-rounding intervals: containment, poles, refinement monotonicity."""

import random
from fractions import Fraction as F

import pytest

from isocert.exactalg import MultiPoly, SymbolTable
from isocert.interval import Interval, PossiblePoleError, interval_eval

T = SymbolTable.geometry()
L = {i: MultiPoly.var(T, f"l{i}") for i in range(1, 5)}


def test_sum_over_unit_boxes():
    box = {"l1": Interval(0.0, 1.0), "l2": Interval(0.0, 1.0)}
    out = interval_eval(L[1] + L[2], box)
    assert out.lo <= 0.0 and out.hi >= 2.0
    assert out.hi < 2.0 + 1e-12


def test_gamma_L1_point_enclosure():
    gL1 = (L[4] - L[3]) * ((L[3] - L[1]) ** 2 * (L[3] - L[2]) - (L[4] - L[2]) * (L[4] - L[1]) ** 2) \
        - (L[4] - L[2]) * (L[3] - L[2]) * (L[2] - L[1]) ** 2
    eps = 1e-9
    box = {
        "l1": Interval(-3 - eps, -3 + eps),
        "l2": Interval(-1 - eps, -1 + eps),
        "l3": Interval(1 - eps, 1 + eps),
        "l4": Interval(3 - eps, 3 + eps),
    }
    out = interval_eval(gL1, box)
    assert out.lo <= -256 <= out.hi
    assert out.hi - out.lo < 1e-5


def test_possible_pole():
    expr = MultiPoly.const(T, 1) / (L[2] - L[1])
    box = {"l1": Interval(-0.5, 0.5), "l2": Interval(-0.5, 0.5)}
    with pytest.raises(PossiblePoleError):
        interval_eval(expr, box)


def test_from_fraction_containment():
    for q in (F(1, 3), F(-7, 11), F(2), F(10**18 + 1, 3)):
        iv = Interval.from_fraction(q)
        assert F(iv.lo) <= q <= F(iv.hi)


def test_containment_random_points():
    rng = random.Random(7)
    gL1 = (L[4] - L[3]) * ((L[3] - L[1]) ** 2 * (L[3] - L[2]) - (L[4] - L[2]) * (L[4] - L[1]) ** 2) \
        - (L[4] - L[2]) * (L[3] - L[2]) * (L[2] - L[1]) ** 2
    for _ in range(60):
        pt = {}
        box = {}
        for i in range(1, 5):
            lo = F(rng.randrange(-8, 8), 4)
            hi = lo + F(rng.randrange(0, 4), 4)
            x = lo + (hi - lo) * F(rng.randrange(0, 5), 4)
            pt[f"l{i}"] = x
            box[f"l{i}"] = Interval(float(lo) - 1e-12, float(hi) + 1e-12)
        exact = gL1.evaluate(pt)
        enc = interval_eval(gL1, box)
        assert F(enc.lo) <= exact <= F(enc.hi)


def test_monotone_refinement():
    # Union of child enclosures never exceeds the parent enclosure.
    expr = (L[1] * L[2] - L[1] ** 2) * (L[2] + 2)
    parent_box = {"l1": Interval(-1.0, 1.0), "l2": Interval(0.0, 2.0)}
    parent = interval_eval(expr, parent_box)
    halves = [
        {"l1": Interval(-1.0, 0.0), "l2": Interval(0.0, 2.0)},
        {"l1": Interval(0.0, 1.0), "l2": Interval(0.0, 2.0)},
    ]
    kids = [interval_eval(expr, b) for b in halves]
    union_lo = min(k.lo for k in kids)
    union_hi = max(k.hi for k in kids)
    assert parent.lo <= union_lo and union_hi <= parent.hi


def test_power_tightness():
    x = Interval(-2.0, 1.0)
    sq = x.power(2)
    assert sq.lo == 0.0 and sq.hi >= 4.0
    cube = x.power(3)
    assert cube.lo <= -8.0 and cube.hi >= 1.0


def test_sqrt_clamps_tiny_negative():
    x = Interval(-1e-18, 4.0)
    r = x.sqrt()
    assert r.lo == 0.0 and r.hi >= 2.0
    with pytest.raises(ValueError):
        Interval(-2.0, -1.0).sqrt()
