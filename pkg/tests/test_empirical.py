import math
from fractions import Fraction as F

import numpy as np
import pytest

from shortintervals import empirical
from shortintervals.empirical import (
    LambdaSieve,
    ZeroSet,
    additive_energy,
    default_zeros,
    exceptional_measure,
    explicit_formula_psi,
    interval_sum,
    load_cache,
    load_zeros,
    moment_statistic,
    riemann_vonmangoldt,
    s_interval_sum,
    sieve_lambda,
)
from shortintervals.errors import (
    InsufficientZeros,
    LimitTooLarge,
    OrderError,
    OutOfRange,
    ParseError,
    TooManyZeros,
)


@pytest.fixture(scope="module")
def sieve():
    return sieve_lambda(110_000)


@pytest.fixture(scope="module")
def zeros():
    return default_zeros()


def trial_lambda(n: int) -> float:
    if n < 2:
        return 0.0
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            return math.log(p) if m == 1 else 0.0
        p += 1
    return math.log(n)


# ----- sieve -----------------------------------------------------------------

def test_lambda_prime_power_values(sieve):
    assert sieve.lambda_value(8) == pytest.approx(math.log(2), abs=1e-15)
    assert sieve.lambda_value(12) == 0.0
    assert sieve.lambda_value(27) == pytest.approx(math.log(3), abs=1e-15)
    assert sieve.lambda_value(104_729) == pytest.approx(math.log(104_729), abs=1e-12)


def test_lambda_matches_trial_division(sieve):
    worst = max(abs(sieve.lambda_value(n) - trial_lambda(n)) for n in range(1, 10_001))
    assert worst <= 1e-12


def test_psi_100_direct(sieve):
    direct = math.fsum(
        trial_lambda(n) for n in range(2, 101) if trial_lambda(n) > 0
    )
    assert abs(sieve.psi(100) - direct) <= 1e-6
    assert direct == pytest.approx(94.0453112, abs=1e-6)


def test_sieve_limit_guard():
    with pytest.raises(LimitTooLarge):
        sieve_lambda(10**9, max_limit=10**8)
    with pytest.raises(OutOfRange):
        sieve_lambda(1)


def test_interval_sum_examples(sieve):
    want = math.fsum(math.log(k) for k in (11, 13, 2, 17, 19))
    assert interval_sum(sieve, 10, 10) == pytest.approx(want, rel=1e-12)
    assert interval_sum(sieve, 100, 0) == 0.0
    assert interval_sum(sieve, 0, sieve.limit) == pytest.approx(
        sieve.psi(sieve.limit), rel=1e-12
    )
    with pytest.raises(OutOfRange):
        interval_sum(sieve, 1, sieve.limit)


def test_interval_sum_additivity(sieve):
    import random

    rng = random.Random(31)
    for _ in range(300):
        x = rng.uniform(2, 20_000)
        y1 = rng.uniform(0, 10_000)
        y2 = rng.uniform(0, 10_000)
        whole = interval_sum(sieve, x, y1 + y2)
        parts = interval_sum(sieve, x, y1) + interval_sum(sieve, x + y1, y2)
        assert abs(whole - parts) <= 1e-9 * max(1.0, abs(whole))


def test_cache_roundtrip(tmp_path, sieve):
    path = tmp_path / "sieve.lams"
    sieve.save_cache(path)
    raw = path.read_bytes()
    assert raw[:4] == b"LAMS" and raw[4] == 1
    assert int.from_bytes(raw[5:13], "little") == sieve.limit
    back = load_cache(path)
    assert back.limit == sieve.limit
    assert back.psi(12345) == sieve.psi(12345)
    assert back.lambda_value(8) == pytest.approx(math.log(2), abs=1e-9)
    with pytest.raises(ParseError):
        load_cache(__file__)


# ----- exceptional set -------------------------------------------------------

def test_exceptional_measure_regular_scale(sieve):
    scan = exceptional_measure(sieve, 10**4, F(7, 10), F(1, 2))
    assert scan.measure_estimate == 0
    assert scan.sample_count == 10**4


def test_exceptional_measure_tiny_intervals(sieve):
    scan = exceptional_measure(sieve, 10**4, F(1, 5), F(9, 10))
    assert scan.measure_estimate > 0


def test_exceptional_measure_degenerate_delta(sieve):
    scan = exceptional_measure(sieve, 10**4, F(1, 2), F(0))
    assert scan.measure_estimate == 10**4


def test_exceptional_measure_matches_naive_rescan(sieve):
    X, theta, delta = 10_000, 0.4, 0.35
    scan = exceptional_measure(sieve, X, theta, delta)
    naive = 0
    for x in range(X, 2 * X):
        y = x ** theta
        if abs(interval_sum(sieve, x, y) - y) >= delta * y:
            naive += 1
    assert scan.exceptional_count == naive
    assert scan.measure_estimate == naive


def test_exceptional_measure_range_guard(sieve):
    with pytest.raises(OutOfRange):
        exceptional_measure(sieve, 60_000, F(1, 2), F(1, 2))


# ----- zero datasets ----------------------------------------------------------

def test_load_zeros_small_file(tmp_path):
    p = tmp_path / "z.txt"
    p.write_text("14.134725\n21.022040\n25.010858\n")
    zs = load_zeros(p)
    assert len(zs) == 3
    assert zs.max_T == pytest.approx(25.010858)


def test_load_zeros_order_error(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("21.0\n14.1\n")
    with pytest.raises(OrderError, match="line 2"):
        load_zeros(p)


def test_load_zeros_parse_error(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("14.1\nzeta\n")
    with pytest.raises(ParseError, match="line 2"):
        load_zeros(p)
    p.write_text("-3.0\n")
    with pytest.raises(ParseError):
        load_zeros(p)


def test_packaged_dataset_counts(zeros):
    assert zeros.count_below(100.0) == 29
    assert abs(riemann_vonmangoldt(100.0) - 29) < 1.0
    assert zeros.max_T > 5000.0
    # count agrees with the main terms to within a couple zeros at any height
    for t in (500.0, 1000.0, 3000.0, 5000.0):
        assert abs(zeros.count_below(t) - riemann_vonmangoldt(t)) < 3.0


# ----- explicit formula and zero sums -----------------------------------------

def test_explicit_formula_no_zeros_term(zeros):
    x = 100.0
    want = x - math.log(2 * math.pi) - 0.5 * math.log(1 - x**-2)
    assert explicit_formula_psi(zeros, x, 10.0) == pytest.approx(want, rel=1e-12)


def test_explicit_formula_accuracy(sieve, zeros):
    err = abs(explicit_formula_psi(zeros, 1000.0, 1000.0) - sieve.psi(1000))
    assert err <= 5.0


def test_explicit_formula_truncation_improves(sieve, zeros):
    x = 10**4
    err_hi = abs(explicit_formula_psi(zeros, x, 5000.0) - sieve.psi(x))
    err_lo = abs(explicit_formula_psi(zeros, x, 50.0) - sieve.psi(x))
    assert err_hi <= err_lo


def test_explicit_formula_error_within_truncation_shape(sieve, zeros):
    for x in (10**3, 10**4):
        for t in (10**2, 10**3):
            err = abs(explicit_formula_psi(zeros, float(x), float(t)) - sieve.psi(x))
            assert err <= 10 * x * math.log(x) ** 2 / t


def test_explicit_formula_requires_zeros(zeros):
    with pytest.raises(InsufficientZeros):
        explicit_formula_psi(zeros, 1000.0, zeros.max_T + 1)
    with pytest.raises(OutOfRange):
        explicit_formula_psi(zeros, 2.0, 100.0)


def test_s_interval_sum_empty_window(zeros):
    assert s_interval_sum(zeros, 1e5, 10.0, 1000.0, 0.6, 0.9, True, False) == 0.0


def test_s_interval_sum_agrees_with_sieve(sieve, zeros):
    # x = 1e5, theta = 0.6: tau = x^0.4, zero sum vs sieve interval deviation
    x = 1e5
    theta = 0.6
    tau = x ** (1 - theta)
    t = 1000.0
    s = s_interval_sum(zeros, x, tau, t)
    dev = interval_sum(sieve, x, x / tau) - x / tau
    scale = x * math.log(x) ** 2 / t
    assert abs(s - dev) <= scale  # truncation-scale agreement, constant 1
    # the sum-over-zeros convention carries the opposite sign to the
    # deviation (only |S| matters downstream); the cancellation is sharp
    assert abs(s + dev) < abs(s - dev)
    assert abs(s + dev) <= scale / 10


def test_s_interval_sum_window_edge_inclusive(zeros):
    inc = s_interval_sum(zeros, 1e4, 50.0, 500.0, 0.5, 1.0)
    exc = s_interval_sum(zeros, 1e4, 50.0, 500.0, 0.5, 1.0, open_lo=True)
    assert exc == 0.0 and inc != 0.0


# ----- additive energy ---------------------------------------------------------

def test_energy_empty():
    assert additive_energy(ZeroSet([]), 100.0) == 0


def test_energy_single_ordinate():
    assert additive_energy(ZeroSet([14.13]), 20.0) == 6


def test_energy_matches_brute_force(zeros):
    gs = zeros.ordinates[:12]
    for k in range(1, 13):
        sub = ZeroSet(gs[:k])
        fast = additive_energy(sub, float(gs[k - 1]) + 1.0)
        signed = np.concatenate([-gs[k - 1 :: -1], gs[:k]])
        brute = 0
        for a in signed:
            for b in signed:
                lhs = a + b
                brute += int(np.count_nonzero(
                    np.abs(lhs - (signed[:, None] + signed[None, :])) <= 1.0
                ))
        assert fast == brute, k


def test_energy_growth(zeros):
    e100 = additive_energy(zeros, 100.0)
    e200 = additive_energy(zeros, 200.0)
    assert e200 / e100 > (200 / 100) ** 3 / 16


def test_energy_cap(zeros):
    with pytest.raises(TooManyZeros):
        additive_energy(zeros, zeros.max_T, cap=10)


# ----- moments -----------------------------------------------------------------

def test_moments_empty_zeroset():
    stat = moment_statistic(ZeroSet([]), 10**5, 0.6, 1, 10)
    assert stat.mean == 0.0


def test_moments_power_mean_and_determinism(zeros):
    m1 = moment_statistic(zeros, 10**5, 0.6, 1, 300, seed=2)
    m2 = moment_statistic(zeros, 10**5, 0.6, 2, 300, seed=2)
    assert m1.mean > 0 and m2.mean > 0
    assert m2.mean >= m1.mean**2 - 3 * m2.std_error
    again = moment_statistic(zeros, 10**5, 0.6, 1, 300, seed=2)
    assert again.mean == m1.mean and again.std_error == m1.std_error


def test_moments_validation(zeros):
    with pytest.raises(OutOfRange):
        moment_statistic(zeros, 10**5, 0.6, 3, 10)
    with pytest.raises(OutOfRange):
        moment_statistic(zeros, 10**5, 0.6, 1, 0)
