"""Executable ledger of the quantitative claims the calculator certifies.

Each claim pins one number or inequality: the headline exponent values, the
conditional-curve identities, the structural dominance relations, and the
desk-scale empirical facts.  ``run_claims`` executes them deterministically
(fixed grids, fixed seeds, no timing in the output) and reports one record
per claim; the CLI exits nonzero if any fail.

Numeric convention: ``computed`` is the worst deviation found (max |error|
for two-sided claims, max signed margin for one-sided ones) so a claim
passes iff computed <= tolerance.
"""

import math
from fractions import Fraction
from math import inf

import numpy as np

from . import empirical, tables
from .mu import mu_curve, mu_upper, theta_grid
from .piecewise import feasible_region
from .optimize import SupCell, certified_sup
from .tables import HypothesisMode

F = Fraction

# both sides of a dominance comparison carry their own bracket of width tol,
# so certified uppers may disagree by up to tol without violating the claim
TOL_B2B = 1.1e-9

_UNC = HypothesisMode.UNCONDITIONAL


class Claim:
    __slots__ = ("id", "description", "tolerance", "_fn")

    def __init__(self, cid, description, tolerance, fn):
        self.id = cid
        self.description = description
        self.tolerance = tolerance
        self._fn = fn

    def run(self, ctx) -> "ClaimResult":
        expected, computed, passed, detail = self._fn(ctx)
        return ClaimResult(self, expected, computed, passed, detail)


class ClaimResult:
    __slots__ = ("claim", "expected", "computed", "passed", "detail")

    def __init__(self, claim, expected, computed, passed, detail):
        self.claim = claim
        self.expected = expected
        self.computed = computed
        self.passed = passed
        self.detail = detail

    def record(self) -> dict:
        def jsonable(v):
            if isinstance(v, float) and not math.isfinite(v):
                return "-inf" if v < 0 else "inf"
            return v

        return {
            "id": self.claim.id,
            "description": self.claim.description,
            "expected": jsonable(self.expected),
            "computed": jsonable(self.computed),
            "tolerance": self.claim.tolerance,
            "pass": bool(self.passed),
            "detail": self.detail,
        }


class ClaimReport:
    def __init__(self, results):
        self.results = list(results)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def records(self) -> list[dict]:
        return [r.record() for r in self.results]

    def format_table(self) -> str:
        rows = [("id", "expected", "computed", "tol", "pass")]
        for r in self.results:
            rows.append(
                (
                    r.claim.id,
                    _fmt(r.expected),
                    _fmt(r.computed),
                    _fmt(r.claim.tolerance),
                    "PASS" if r.passed else "FAIL",
                )
            )
        widths = [max(len(row[i]) for row in rows) for i in range(5)]
        lines = []
        for k, row in enumerate(rows):
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
            if k == 0:
                lines.append("-" * (sum(widths) + 8))
        return "\n".join(lines)


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float):
        return repr(v)
    return str(v)


class _Context:
    """Lazily built shared resources (small sieve, packaged zero dataset)."""

    def __init__(self, sieve=None, zeros=None):
        self._sieve = sieve
        self._zeros = zeros

    @property
    def sieve(self):
        if self._sieve is None:
            self._sieve = empirical.sieve_lambda(30_000)
        return self._sieve

    @property
    def zeros(self):
        if self._zeros is None:
            self._zeros = empirical.default_zeros()
        return self._zeros


# --------------------------------------------------------------------------
# claim bodies

def _mu_17_30(ctx):
    r = mu_upper(F(17, 30))
    err = abs(r.upper - 7 / 12)
    ok = (
        err <= 1e-9
        and r.witness_sigma is not None
        and abs(r.witness_sigma - 0.7) <= 1e-6
        and r.active == "L4"
    )
    return 7 / 12, r.upper, ok, f"witness={r.witness_sigma}, active={r.active}"


def _mu_slope(ctx):
    worst = 0.0
    for delta in (F(1, 100), F(1, 1000)):
        r = mu_upper(F(2, 15) + delta)
        worst = max(worst, abs(r.upper - float(1 - F(9, 13) * delta)))
    return 0.0, worst, worst <= 1e-6, "theta = 2/15 + {1e-2, 1e-3}"


def _rh_exact(ctx):
    worst = 0.0
    for t in (F(1, 10), F(2, 10), F(3, 10), F(4, 10), F(5, 10)):
        r = mu_upper(t, HypothesisMode.RH, tol=F(1, 10**13))
        worst = max(worst, abs(r.upper - float(1 - t)))
    empties = all(
        mu_upper(t, HypothesisMode.RH).is_empty
        for t in (F(51, 100), F(7, 10), F(9, 10))
    )
    return 0.0, worst, worst <= 1e-12 and empties, f"empty beyond 1/2: {empties}"


def _lh_half_theta(ctx):
    worst = 0.0
    for t in theta_grid(F(1, 100), F(1, 2), 49):
        r = mu_upper(t, HypothesisMode.LH, refined=False)
        worst = max(worst, abs(r.upper - float(1 - t / 2)))
    return 0.0, worst, worst <= 1e-9, "second-moment-only variant, 50 points"


def _lh_empty(ctx):
    ok = all(
        mu_upper(t, HypothesisMode.LH).is_empty for t in (F(51, 100), F(3, 4))
    )
    return "-inf", "-inf" if ok else "finite", ok, "theta in {0.51, 0.75}"


def _dh_crude(ctx):
    worst = -inf
    for t in theta_grid(F(1, 100), F(1, 2), 49):
        r = mu_upper(t, HypothesisMode.DH)
        worst = max(worst, r.upper - float(1 - t / 12))
    return 0.0, worst, worst <= 1e-9, "margin vs 1 - theta/12, 50 points"


def _dh_empty(ctx):
    ok = all(
        mu_upper(t, HypothesisMode.DH).is_empty
        for t in (F(51, 100), F(7, 10), F(9, 10))
    )
    return "-inf", "-inf" if ok else "finite", ok, "theta in {0.51, 0.7, 0.9}"


def _dh_pintz_sigma(ctx):
    region = feasible_region(tables.a_table(HypothesisMode.DH), 1 / (1 - F(1, 1000)))
    hi = max((iv[1] for iv in region), default=None)
    ok = hi is not None and hi <= F(23, 24)
    return float(F(23, 24)), None if hi is None else float(hi), ok, "region right edge"


def _unc_empty(ctx):
    bad = []
    for t in theta_grid(F(17, 30) + F(1, 10**9), F(99, 100), 19):
        if not mu_upper(t).is_empty:
            bad.append(float(t))
    return "-inf", "-inf" if not bad else f"finite at {bad[:3]}", not bad, "20 points"


def _unc_finite_window(ctx):
    worst = -inf
    empty = False
    for t in theta_grid(F(2, 15) + F(1, 1000), F(17, 30), 19):
        r = mu_upper(t)
        if r.is_empty:
            empty = True
            continue
        worst = max(worst, r.upper)
    ok = not empty and worst < 1.0
    return "< 1", worst, ok, "max bound on [2/15 + 1e-3, 17/30]"


def _bazzanella(theta: Fraction) -> Fraction:
    if theta <= F(11, 21):
        return 3 * (1 - theta) / 2
    if theta <= F(23, 42):
        return (47 - 42 * theta) / 35
    return (36 * theta * theta - 96 * theta + 55) / (39 - 36 * theta)


def _bazzanella_dominance(ctx):
    worst = -inf
    for t in theta_grid(F(1, 2) + F(1, 1200), F(7, 12), 99):
        r = mu_upper(t)
        if r.is_empty:
            continue
        worst = max(worst, r.upper - float(_bazzanella(t)))
    return 0.0, worst, worst <= 1e-9, "margin vs prior piecewise bounds, 100 points"


_MODE_ORDER = (
    HypothesisMode.RH,
    HypothesisMode.LH,
    HypothesisMode.DH,
    HypothesisMode.UNCONDITIONAL,
)


def _mode_dominance(ctx):
    worst = -inf
    for t in theta_grid(F(1, 61), F(60, 61), 59):
        uppers = [mu_upper(t, m).upper for m in _MODE_ORDER]
        for stronger, weaker in zip(uppers, uppers[1:]):
            if stronger == -inf:
                continue
            worst = max(worst, stronger - weaker)
    return 0.0, worst, worst <= TOL_B2B, "RH <= LH <= DH <= UNC on 60 points"


def _refined_dominance(ctx):
    worst = -inf
    for t in theta_grid(F(1, 61), F(60, 61), 59):
        refined = mu_upper(t).upper
        l2only = mu_upper(t, refined=False).upper
        if refined == -inf:
            continue
        worst = max(worst, refined - l2only)
    return 0.0, worst, worst <= TOL_B2B, "min over both moments <= single moment"


def _theta_monotonic(ctx):
    pts = mu_curve(F(1, 1000), F(999, 1000), 999)
    worst = -inf
    for a, b in zip(pts, pts[1:]):
        if b.mu_upper == -inf:
            continue
        worst = max(worst, b.mu_upper - a.mu_upper)
    return 0.0, worst, worst <= TOL_B2B, "1000-point grid on (0, 1)"


def _a_sup(ctx):
    table = tables.a_table(_UNC)
    cells = [
        SupCell(p.lo, p.hi, [p.rf]) for p in table.pieces if p.rf is not None
    ]
    res = certified_sup(cells, F(1, 10**12))
    err = abs(res.upper - float(F(30, 13)))
    return float(F(30, 13)), res.upper, err <= 1e-12, "certified sup of the table"


def _table_checksum(ctx):
    ok_a, prob_a = tables.checksum_rows("a")
    ok_s, prob_s = tables.checksum_rows("astar")
    ok = ok_a and ok_s
    return "match", "match" if ok else "; ".join(prob_a + prob_s)[:120], ok, \
        "encoded rows vs committed transcription"


def _pintz_jump(ctx):
    diag = tables.validate_tables(_UNC, "a")
    for b in diag.breakpoints:
        if b.sigma == F(59, 60):
            ok = (
                not isinstance(b.left, float)
                and not isinstance(b.right, float)
                and b.left == F(9, 13)
                and b.right == F(3, 5)
                and b.jump == F(6, 65)
            )
            return float(F(6, 65)), float(b.jump), ok, "left 9/13, right 3/5"
    return float(F(6, 65)), None, False, "breakpoint 59/60 not found"


def _emp_lambda_trial(ctx):
    sv = ctx.sieve
    worst = 0.0
    for n in range(1, 10_001):
        m, p, trial = n, 2, 0.0
        while p * p <= m:
            if m % p == 0:
                while m % p == 0:
                    m //= p
                trial = math.log(p) if m == 1 else 0.0
                break
            p += 1
        else:
            trial = math.log(n) if n > 1 else 0.0
        worst = max(worst, abs(sv.lambda_value(n) - trial))
    return 0.0, worst, worst <= 1e-12, "n <= 10^4 vs trial division"


def _emp_psi_100(ctx):
    direct = []
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
              53, 59, 61, 67, 71, 73, 79, 83, 89, 97):
        pk = p
        while pk <= 100:
            direct.append(math.log(p))
            pk *= p
    err = abs(ctx.sieve.psi(100) - math.fsum(direct))
    return 0.0, err, err <= 1e-6, "psi(100) vs direct prime-power sum"


def _emp_exceptional(ctx):
    a = empirical.exceptional_measure(ctx.sieve, 10**4, F(7, 10), F(1, 2))
    b = empirical.exceptional_measure(ctx.sieve, 10**4, F(1, 5), F(9, 10))
    ok = a.measure_estimate == 0 and b.measure_estimate > 0
    return "0 and >0", f"{a.measure_estimate:g} and {b.measure_estimate:g}", ok, \
        "exhaustive integer scan at X = 10^4"


def _emp_energy_brute(ctx):
    gs = ctx.zeros.ordinates[:30]
    worst_n = None
    for k in range(1, 31):
        sub = empirical.ZeroSet(gs[:k])
        fast = empirical.additive_energy(sub, float(gs[k - 1]) + 1.0)
        signed = np.concatenate([-gs[k - 1 :: -1], gs[:k]])
        pair = (signed[:, None] + signed[None, :]).ravel()
        brute = int(np.count_nonzero(np.abs(pair[:, None] - pair[None, :]) <= 1.0))
        if fast != brute:
            worst_n = k
            break
    return "equal", "equal" if worst_n is None else f"mismatch at n={worst_n}", \
        worst_n is None, "prefixes of the first 30 ordinates"


def _emp_explicit_error(ctx):
    err = abs(
        empirical.explicit_formula_psi(ctx.zeros, 1000.0, 1000.0)
        - ctx.sieve.psi(1000)
    )
    return "<= 5", err, err <= 5.0, "x = 10^3, T = 10^3"


CLAIMS = [
    Claim("a-sup-30-13", "sup of the zero-density table is 30/13", 1e-12, _a_sup),
    Claim("bazzanella-dominance", "bound dominates prior results on (1/2, 7/12]", 1e-9,
          _bazzanella_dominance),
    Claim("dh-crude", "DH bound <= 1 - theta/12 on (0, 1/2]", 1e-9, _dh_crude),
    Claim("dh-empty", "DH bound is -inf above theta = 1/2", None, _dh_empty),
    Claim("dh-pintz-sigma", "DH feasible region stays within sigma <= 23/24", None,
          _dh_pintz_sigma),
    Claim("emp-energy-brute", "pair-sum energy count equals quadruple brute force",
          None, _emp_energy_brute),
    Claim("emp-exceptional", "exceptional measure 0 at (0.7, 0.5), positive at (0.2, 0.9)",
          None, _emp_exceptional),
    Claim("emp-explicit-error", "truncated explicit formula error at most 5", 5.0,
          _emp_explicit_error),
    Claim("emp-lambda-trial", "sieve matches trial-division von Mangoldt", 1e-12,
          _emp_lambda_trial),
    Claim("emp-psi-100", "psi(100) matches direct summation", 1e-6, _emp_psi_100),
    Claim("lh-empty", "LH bound is -inf above theta = 1/2", None, _lh_empty),
    Claim("lh-half-theta", "LH second-moment bound equals 1 - theta/2 on (0, 1/2]",
          1e-9, _lh_half_theta),
    Claim("mode-dominance", "stronger hypotheses give smaller bounds", TOL_B2B,
          _mode_dominance),
    Claim("mu-17-30", "exceptional exponent at 17/30 is 7/12 (witness 7/10, L4)",
          1e-9, _mu_17_30),
    Claim("mu-slope-2-15", "bound near 2/15 follows 1 - (9/13)(theta - 2/15)", 1e-6,
          _mu_slope),
    Claim("pintz-jump-59-60", "table jump at 59/60 has magnitude 6/65", None,
          _pintz_jump),
    Claim("refined-dominance", "refined bound never exceeds second-moment bound",
          TOL_B2B, _refined_dominance),
    Claim("rh-exact", "RH bound equals 1 - theta below 1/2, -inf above", 1e-12,
          _rh_exact),
    Claim("table-checksum", "encoded tables match the committed transcription", None,
          _table_checksum),
    Claim("theta-monotonic", "bound is non-increasing in theta", TOL_B2B,
          _theta_monotonic),
    Claim("unc-empty-17-30", "unconditional bound is -inf beyond 17/30", None,
          _unc_empty),
    Claim("unc-finite-window", "finite and below 1 on [2/15 + 1e-3, 17/30]", None,
          _unc_finite_window),
]


def run_claims(filter_prefix: str | None = None, sieve=None, zeros=None) -> ClaimReport:
    """Execute all claims (or those whose id starts with the prefix)."""
    ctx = _Context(sieve, zeros)
    selected = [
        c for c in CLAIMS if filter_prefix is None or c.id.startswith(filter_prefix)
    ]
    return ClaimReport(c.run(ctx) for c in selected)
