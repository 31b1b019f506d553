import math
import random
from fractions import Fraction as F

import pytest

from shortintervals.errors import DenominatorVanishes, DomainMismatch, OutOfDomain
from shortintervals.exact import BoundaryPoint, Interval
from shortintervals.piecewise import (
    Piece,
    PiecewiseBound,
    RationalFunction,
    enclose_rational_function,
    feasible_region,
    pointwise_min,
)
from shortintervals.tables import HypothesisMode, a_table

UNC = HypothesisMode.UNCONDITIONAL


def rf(num, den=(1,)):
    return RationalFunction([F(c) for c in num], [F(c) for c in den])


INGHAM = rf((3,), (2, -1))  # 3/(2 - s)


def test_enclose_point_interval_tight():
    # one-ulp outward inflation per operation: a 2-op formula stays within
    # a few ulp of the exact value at a point
    enc = enclose_rational_function(INGHAM, Interval(0.5, 0.5))
    assert enc.lo <= 2.0 <= enc.hi
    assert enc.width <= 6 * math.ulp(2.0)


def test_enclose_contains_range():
    enc = enclose_rational_function(INGHAM, Interval(0.5, 0.7))
    assert enc.lo <= 2.0 and enc.hi >= float(F(30, 13))


def test_enclose_pole_raises():
    with pytest.raises(DenominatorVanishes):
        enclose_rational_function(rf((1,), (1, -1)), Interval(0.999, 1.001))


def test_enclosure_soundness_randomized():
    # any exact rational sample of f over x must land inside the enclosure
    rng = random.Random(19)
    for _ in range(200):
        num = [F(rng.randint(-9, 9)) for _ in range(rng.randint(1, 3))]
        den = [F(rng.randint(1, 9)), F(0), F(rng.randint(1, 9))]  # positive on R
        f = RationalFunction(num, den)
        a = F(rng.randint(-100, 100), 100)
        b = a + F(rng.randint(1, 50), 100)
        enc = f.enclose(Interval(float(a), float(b)))
        enc2 = f.enclose_tight(Interval(float(a), float(b)))
        for _ in range(10):
            t = a + (b - a) * F(rng.randint(0, 64), 64)
            v = f.eval_exact(t)
            assert F(enc.lo) <= v <= F(enc.hi)
            assert F(enc2.lo) <= v <= F(enc2.hi)


def test_evaluate_upper_takes_max_at_breakpoints():
    pw = PiecewiseBound([
        Piece(F(0), F(1, 2), rf((1,)), "low"),
        Piece(F(1, 2), F(1), rf((3,)), "high"),
    ])
    assert pw.evaluate_upper(F(1, 4)) == 1
    assert pw.evaluate_upper(F(1, 2)) == 3  # max of adjacent pieces
    assert pw.evaluate_upper(F(3, 4)) == 3
    with pytest.raises(OutOfDomain):
        pw.evaluate_upper(F(1))
    with pytest.raises(OutOfDomain):
        pw.evaluate_upper(F(-1, 10))


def test_pointwise_min_idempotent():
    table = a_table(UNC)
    m = pointwise_min(table, table)
    assert len(m.pieces) == len(table.pieces)
    for p, q in zip(m.pieces, table.pieces):
        assert p.lo == q.lo and p.hi == q.hi
        assert p.rf.same_function(q.rf)


def test_pointwise_min_exact_crossing():
    # 2 crosses 3/(2-s) exactly at s = 1/2
    a = PiecewiseBound([Piece(F(0), F(1), rf((2,)), "const")])
    b = PiecewiseBound([Piece(F(0), F(1), INGHAM, "ingham")])
    m = pointwise_min(a, b)
    assert [p.lo for p in m.pieces] == [F(0), F(1, 2)]
    assert m.pieces[0].provenance == "ingham"
    assert m.pieces[1].provenance == "const"
    assert m.evaluate_upper(F(1, 4)) == F(3) / F(7, 4)
    assert m.evaluate_upper(F(3, 4)) == 2


def test_pointwise_min_domain_mismatch():
    a = PiecewiseBound([Piece(F(0), F(1), rf((2,)), "")])
    b = PiecewiseBound([Piece(F(0), F(1, 2), rf((2,)), "")])
    with pytest.raises(DomainMismatch):
        pointwise_min(a, b)


def test_pointwise_min_bracketed_crossing_is_conservative():
    # s^3 crosses 1/4 at 4^(-1/3), irrational of degree 3: the cut is placed
    # within a certified bracket of the crossing, never beyond it
    cubic = rf((0, 0, 0, 1))
    quarter = rf((F(1, 4),))
    a = PiecewiseBound([Piece(F(0), F(1), cubic, "cubic")])
    b = PiecewiseBound([Piece(F(0), F(1), quarter, "flat")])
    m = pointwise_min(a, b)
    crossing = 0.25 ** (1 / 3)
    interior = [p.hi for p in m.pieces[:-1]]
    assert all(abs(float(x) - crossing) <= 1.2e-12 for x in interior)
    # never below the true minimum, and equal to it away from the bracket
    rnd = random.Random(4)
    for _ in range(500):
        s = F(rnd.randint(0, 9999), 10_000)
        true_min = min(cubic.eval_exact(s), quarter.eval_exact(s))
        got = m.evaluate_upper(s)
        assert got >= true_min
        if abs(float(s) - crossing) > 1e-9:
            assert got == true_min
    assert m.evaluate_upper(F(1, 2)) == F(1, 8)
    assert m.evaluate_upper(F(9, 10)) == F(1, 4)


def test_majorization_against_direct_min():
    # value of the min-table equals min of the input values away from cuts
    rng = random.Random(23)
    a = PiecewiseBound([Piece(F(0), F(1), rf((2,)), "const")])
    b = PiecewiseBound([Piece(F(0), F(1), INGHAM, "ingham")])
    m = pointwise_min(a, b)
    cuts = {bp.as_fraction() for bp in m.breakpoints() if bp.is_rational}
    for _ in range(10_000):
        s = F(rng.randint(0, 9999), 10_000)
        if s in cuts:
            continue
        assert m.evaluate_upper(s) == min(a.evaluate_upper(s), b.evaluate_upper(s))


def test_feasible_region_degenerate_point():
    # threshold 30/13 touches the table only at sigma = 7/10
    region = feasible_region(a_table(UNC), F(30, 13))
    assert len(region) == 1
    lo, hi = region[0]
    assert lo == F(7, 10) and hi == F(7, 10)


def test_feasible_region_zero_threshold_is_everything():
    table = a_table(UNC)
    region = feasible_region(table, F(0))
    assert len(region) == 1
    assert region[0][0] == 0 and region[0][1] == table.sigma_cap


def test_feasible_region_exact_linear_crossing():
    # threshold 15/13 (theta = 2/15) exits inside the row with formula
    # 22232/(163248 s - 134765); the crossing is rational
    region = feasible_region(a_table(UNC), F(15, 13))
    assert len(region) == 1
    lo, hi = region[0]
    assert lo == F(2, 15)
    assert hi == F(2310491, 2448720)
    assert 0.9419 < float(hi) < 0.946


def test_feasible_region_membership_randomized():
    rng = random.Random(29)
    table = a_table(UNC)
    c = F(2)
    region = feasible_region(table, c)
    cap = table.sigma_cap.as_fraction()
    for _ in range(10_000):
        s = F(rng.randint(0, 10_000), 10_001) * cap.numerator / cap.denominator
        if not 0 <= s < cap:
            continue
        inside = any(lo <= s <= hi for lo, hi in region)
        assert inside == (table.evaluate_upper(s) >= c), s
