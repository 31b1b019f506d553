"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Criteria delegate to the claims ledger (the runtime verification
suite) plus the runtime budgets asserted here directly.
"""

import time
from fractions import Fraction as F

import pytest

from shortintervals import claims as claims_mod
from shortintervals.claims import run_claims
from shortintervals.empirical import sieve_lambda
from shortintervals.mu import mu_upper
from shortintervals.tables import HypothesisMode, a_table, astar_table


@pytest.fixture(scope="module", autouse=True)
def warm_tables():
    for mode in HypothesisMode:
        a_table(mode)
        astar_table(mode)


def _check(number: int, label: str, prefixes: tuple[str, ...], extra_ok=True,
           extra_note: str = ""):
    reports = [run_claims(p) for p in prefixes]
    results = [r for rep in reports for r in rep.results]
    assert results, f"criterion {number}: no claims matched {prefixes}"
    ok = all(r.passed for r in results) and extra_ok
    detail = "; ".join(
        f"{r.claim.id}={'ok' if r.passed else 'FAIL'}" for r in results
    )
    if extra_note:
        detail += f"; {extra_note}"
    print(f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {label}: {detail}")
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_01_headline_value_and_speed():
    t0 = time.perf_counter()
    res = mu_upper(F(17, 30))
    elapsed = time.perf_counter() - t0
    fast = elapsed < 1.0
    assert abs(res.upper - 7 / 12) <= 1e-9
    _check(1, "mu(17/30) = 7/12, witness 7/10, fourth moment active",
           ("mu-17-30",), extra_ok=fast, extra_note=f"runtime {elapsed * 1e3:.0f} ms")


def test_criterion_02_slope_above_2_15():
    _check(2, "mu(2/15 + d) = 1 - (9/13) d for d in {1e-2, 1e-3}", ("mu-slope-2-15",))


def test_criterion_03_rh_curve():
    _check(3, "RH: 1 - theta below 1/2 (1e-12), -inf above", ("rh-exact",))


def test_criterion_04_lh_curve():
    _check(4, "LH: 1 - theta/2 on (0, 1/2] (1e-9), -inf above",
           ("lh-half-theta", "lh-empty"))


def test_criterion_05_dh_curve_and_region():
    _check(5, "DH: <= 1 - theta/12, -inf above 1/2, region within 23/24",
           ("dh-crude", "dh-empty", "dh-pintz-sigma"))


def test_criterion_06_unconditional_window():
    _check(6, "unconditional: -inf beyond 17/30, finite and < 1 down to 2/15",
           ("unc-empty-17-30", "unc-finite-window"))


def test_criterion_07_bazzanella_dominance():
    _check(7, "dominates prior piecewise bounds on (1/2, 7/12]",
           ("bazzanella-dominance",))


def test_criterion_08_structural_properties():
    t0 = time.perf_counter()
    rep = run_claims("theta-monotonic")
    curve_elapsed = time.perf_counter() - t0
    ok_curve = rep.all_passed and curve_elapsed < 60.0
    reports = [run_claims(p) for p in ("mode-dominance", "refined-dominance")]
    results = [r for r in rep.results] + [r for x in reports for r in x.results]
    ok = ok_curve and all(r.passed for r in results)
    print(f"criterion  8 [{'PASS' if ok else 'FAIL'}] structural: "
          f"1000-point curve in {curve_elapsed:.1f}s, "
          + "; ".join(f"{r.claim.id}={'ok' if r.passed else 'FAIL'}" for r in results))
    assert ok


def test_criterion_09_table_fidelity():
    _check(9, "sup = 30/13, transcription checksum, 6/65 jump at 59/60",
           ("a-sup-30-13", "table-checksum", "pintz-jump-59-60"))


def test_criterion_10_empirical():
    t0 = time.perf_counter()
    sieve_lambda(10**7)
    sieve_elapsed = time.perf_counter() - t0
    _check(10, "empirical: sieve, psi, exceptional scan, energy, explicit formula",
           ("emp-",), extra_ok=sieve_elapsed < 10.0,
           extra_note=f"sieve to 1e7 in {sieve_elapsed:.2f}s")
