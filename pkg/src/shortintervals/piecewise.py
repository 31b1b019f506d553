"""Piecewise rational bounds in sigma on [0, sigma_cap).

A PiecewiseBound is an ordered list of abutting pieces, each carrying one
rational-function formula (or the symbolic value -infinity).  Evaluation is
upper-regularized: at a shared breakpoint the larger of the two adjacent
formula values is returned, so the function is an upper-semicontinuous
majorant of whatever the individual rows bound.
"""

from fractions import Fraction
from functools import cmp_to_key
from math import inf

from . import polys
from .errors import DenominatorVanishes, DomainMismatch, OutOfDomain
from .exact import BoundaryPoint, Interval, as_boundary
from .polys import (
    DEFAULT_BRACKET_WIDTH,
    ExactRoot,
    Poly,
    pmul,
    pscale,
    psub,
    ptrim,
    rational_between,
)

_exact_cmp = cmp_to_key(lambda a, b: as_boundary(a)._compare(b))

ExactValue = Fraction | BoundaryPoint


def _fmt_poly(p: Poly) -> str:
    if not p:
        return "0"

    def render(indices) -> str:
        terms = []
        for k in indices:
            c = p[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                mag = abs(c)
                coeff = "" if mag == 1 else f"{mag}*"
                body = f"{coeff}s" if k == 1 else f"{coeff}s^{k}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(terms) if terms else "0"

    desc = render(range(len(p) - 1, -1, -1))
    if desc.startswith("-"):
        asc = render(range(len(p)))
        if not asc.startswith("-"):
            return asc
    return desc


class RationalFunction:
    """P(s)/Q(s) with exact rational coefficients.

    Exact evaluation works at rationals and at quadratic surds (the value
    then lives in the same field).  ``enclose`` gives an outward-rounded
    floating enclosure over an interval, which is what the certified
    optimizer consumes; its width shrinks to zero with the input width.
    """

    __slots__ = ("num", "den", "_num_iv", "_den_iv", "_dnum_iv", "_dden_iv")

    def __init__(self, num, den=(Fraction(1),)):
        self.num = ptrim(num)
        self.den = ptrim(den)
        if not self.den:
            raise ZeroDivisionError("identically zero denominator")
        self._num_iv = None
        self._den_iv = None
        self._dnum_iv = None
        self._dden_iv = None

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls((Fraction(c),))

    def eval_exact(self, x: "ExactValue") -> ExactValue:
        if isinstance(x, BoundaryPoint) and not x.is_rational:
            den = polys.peval_boundary(self.den, x)
            if den.sign() == 0:
                raise DenominatorVanishes(f"denominator vanishes at {x}")
            val = polys.peval_boundary(self.num, x) / den
            return val.as_fraction() if val.is_rational else val
        xf = x.as_fraction() if isinstance(x, BoundaryPoint) else Fraction(x)
        den = polys.peval(self.den, xf)
        if den == 0:
            raise DenominatorVanishes(f"denominator vanishes at {xf}")
        return polys.peval(self.num, xf) / den

    def _coeff_intervals(self):
        if self._num_iv is None:
            self._num_iv = [Interval.from_fraction(c) for c in self.num]
            self._den_iv = [Interval.from_fraction(c) for c in self.den]
        return self._num_iv, self._den_iv

    def enclose(self, x: Interval) -> Interval:
        num_iv, den_iv = self._coeff_intervals()
        num = _horner(num_iv, x)
        den = _horner(den_iv, x)
        return num / den

    def _deriv_intervals(self):
        if self._dnum_iv is None:
            dnum = psub(
                pmul(polys.pderiv(self.num), self.den),
                pmul(self.num, polys.pderiv(self.den)),
            )
            dden = pmul(self.den, self.den)
            self._dnum_iv = [Interval.from_fraction(c) for c in dnum]
            self._dden_iv = [Interval.from_fraction(c) for c in dden]
        return self._dnum_iv, self._dden_iv

    def enclose_tight(self, x: Interval) -> Interval:
        """Enclosure sharpened by the mean-value form f(m) + f'(x)(x - m).

        The centered form has quadratic instead of linear excess width, which
        keeps branch-and-bound node counts small near smooth interior maxima.
        Both forms are valid enclosures, so their intersection is returned.
        """
        plain = self.enclose(x)
        if x.lo == x.hi:
            return plain
        m = x.mid
        dnum_iv, dden_iv = self._deriv_intervals()
        try:
            fp = _horner(dnum_iv, x) / _horner(dden_iv, x)
        except DenominatorVanishes:
            return plain
        pt = Interval.point(m)
        centered = self.enclose(pt) + fp * (x - pt)
        lo = max(plain.lo, centered.lo)
        hi = min(plain.hi, centered.hi)
        return Interval(lo, hi) if lo <= hi else plain

    # -- algebra ---------------------------------------------------------

    def scale(self, k) -> "RationalFunction":
        return RationalFunction(pscale(self.num, k), self.den)

    def same_function(self, other: "RationalFunction") -> bool:
        return pmul(self.num, other.den) == pmul(other.num, self.den)

    def __str__(self) -> str:
        num, den = _fmt_poly(self.num), _fmt_poly(self.den)
        if self.den == (Fraction(1),):
            return num
        ns = num if ("+" not in num and "- " not in num) else f"({num})"
        return f"{ns}/({den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def _horner(coeffs: list[Interval], x: Interval) -> Interval:
    if not coeffs:
        return Interval.point(0.0)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def enclose_rational_function(f: RationalFunction, x: Interval) -> Interval:
    """Outward-rounded enclosure of { f(t) : t in x }.

    Raises DenominatorVanishes when the interval sign test on the
    denominator is inconclusive (it may straddle a zero).
    """
    return f.enclose(x)


class Piece:
    """One row of a piecewise bound: a formula valid on [lo, hi)."""

    __slots__ = ("lo", "hi", "rf", "provenance")

    def __init__(self, lo, hi, rf: RationalFunction | None, provenance: str = ""):
        self.lo = as_boundary(lo)
        self.hi = as_boundary(hi)
        if not self.lo < self.hi:
            raise ValueError(f"empty piece [{self.lo}, {self.hi})")
        self.rf = rf  # None encodes the value -infinity on this piece
        self.provenance = provenance

    def value_at(self, s: ExactValue):
        if self.rf is None:
            return -inf
        return self.rf.eval_exact(s)

    def __repr__(self) -> str:
        body = "-inf" if self.rf is None else str(self.rf)
        return f"Piece([{self.lo}, {self.hi}) -> {body}; {self.provenance})"


def _exact_max(values):
    """Maximum of exact values and -inf sentinels, compared exactly."""
    best = -inf
    for v in values:
        if isinstance(v, float):
            continue  # -inf piece
        if isinstance(best, float) or as_boundary(v) > as_boundary(best):
            best = v
    return best


class PiecewiseBound:
    """Ordered, exactly-abutting pieces covering [0, sigma_cap)."""

    __slots__ = ("pieces",)

    def __init__(self, pieces):
        pieces = tuple(pieces)
        if not pieces:
            raise ValueError("no pieces")
        for a, b in zip(pieces, pieces[1:]):
            if not a.hi == b.lo:
                raise ValueError(f"gap or overlap between {a} and {b}")
        self.pieces = pieces

    @property
    def lo(self) -> BoundaryPoint:
        return self.pieces[0].lo

    @property
    def sigma_cap(self) -> BoundaryPoint:
        return self.pieces[-1].hi

    def breakpoints(self) -> list[BoundaryPoint]:
        return [p.lo for p in self.pieces] + [self.sigma_cap]

    def pieces_at(self, s) -> list[Piece]:
        s = as_boundary(s)
        if s < self.lo or s >= self.sigma_cap:
            raise OutOfDomain(f"sigma={s} outside [{self.lo}, {self.sigma_cap})")
        return [p for p in self.pieces if p.lo <= s <= p.hi]

    def evaluate_upper(self, s):
        """Upper-regularized value at s: the max over all pieces touching s."""
        return _exact_max(p.value_at(as_boundary(s)) for p in self.pieces_at(s))

    def scale(self, k) -> "PiecewiseBound":
        k = Fraction(k)
        return PiecewiseBound(
            Piece(p.lo, p.hi, None if p.rf is None else p.rf.scale(k), p.provenance)
            for p in self.pieces
        )

    def restrict(self, lo, hi) -> "PiecewiseBound":
        """The sub-bound on [lo, hi), splitting pieces as needed."""
        lo, hi = as_boundary(lo), as_boundary(hi)
        if lo < self.lo or hi > self.sigma_cap or not lo < hi:
            raise OutOfDomain(f"[{lo}, {hi}) not within [{self.lo}, {self.sigma_cap})")
        out = []
        for p in self.pieces:
            a = p.lo if p.lo > lo else lo
            b = p.hi if p.hi < hi else hi
            if a < b:
                out.append(Piece(a, b, p.rf, p.provenance))
        return PiecewiseBound(out)

    def __repr__(self) -> str:
        return f"PiecewiseBound({len(self.pieces)} pieces on [{self.lo}, {self.sigma_cap}))"


def concat(a: PiecewiseBound, b: PiecewiseBound) -> PiecewiseBound:
    if not a.sigma_cap == b.lo:
        raise DomainMismatch("bounds do not abut")
    return PiecewiseBound(a.pieces + b.pieces)


def _merged_cells(a: PiecewiseBound, b: PiecewiseBound):
    """Common refinement: yields (lo, hi, piece_a, piece_b)."""
    cuts: list[BoundaryPoint] = []
    for bp in sorted(a.breakpoints() + b.breakpoints(), key=_exact_cmp):
        if not cuts or cuts[-1] < bp:
            cuts.append(bp)
    ia = ib = 0
    for lo, hi in zip(cuts, cuts[1:]):
        while not a.pieces[ia].hi > lo:
            ia += 1
        while not b.pieces[ib].hi > lo:
            ib += 1
        yield lo, hi, a.pieces[ia], b.pieces[ib]


def pointwise_min(
    a: PiecewiseBound,
    b: PiecewiseBound,
    bracket_width: Fraction = DEFAULT_BRACKET_WIDTH,
) -> PiecewiseBound:
    """Pointwise minimum of two bounds over the same domain.

    On each cell of the common refinement the formulas' crossing points are
    inserted as new breakpoints: exactly when they are rational or quadratic
    over Q, otherwise as a certified bracket of width <= bracket_width in
    which the larger (conservative) formula is kept.
    """
    if not (a.lo == b.lo and a.sigma_cap == b.sigma_cap):
        raise DomainMismatch(
            f"domains differ: [{a.lo}, {a.sigma_cap}) vs [{b.lo}, {b.sigma_cap})"
        )
    out: list[Piece] = []

    def emit(lo, hi, rf, prov):
        if out and out[-1].provenance == prov and (
            (out[-1].rf is None and rf is None)
            or (out[-1].rf is not None and rf is not None and out[-1].rf.same_function(rf))
        ):
            prev = out.pop()
            out.append(Piece(prev.lo, hi, prev.rf, prev.provenance))
        else:
            out.append(Piece(lo, hi, rf, prov))

    for lo, hi, pa, pb in _merged_cells(a, b):
        if pa.rf is None or pb.rf is None:
            none_side = pa if pa.rf is None else pb
            emit(lo, hi, None, none_side.provenance)
            continue
        diff = psub(pmul(pa.rf.num, pb.rf.den), pmul(pb.rf.num, pa.rf.den))
        if not diff:
            emit(lo, hi, pa.rf, pa.provenance)
            continue
        cuts: list[BoundaryPoint] = [lo, hi]
        brackets: list[tuple[BoundaryPoint, BoundaryPoint]] = []
        for root in polys.roots_in_closed_interval(diff, lo, hi, bracket_width):
            if isinstance(root, ExactRoot):
                if lo < root.point < hi:
                    cuts.append(root.point)
            else:
                bl = max(as_boundary(root.lo), lo, key=_exact_cmp)
                bh = min(as_boundary(root.hi), hi, key=_exact_cmp)
                brackets.append((bl, bh))
                if lo < bl:
                    cuts.append(bl)
                if bh < hi:
                    cuts.append(bh)
        cuts.sort(key=_exact_cmp)
        for x, y in zip(cuts, cuts[1:]):
            if not x < y:
                continue
            t = rational_between(x, y)
            va, vb = as_boundary(pa.rf.eval_exact(t)), as_boundary(pb.rf.eval_exact(t))
            if any(bl <= x and y <= bh for bl, bh in brackets):
                # a crossing hides inside: keep the larger formula (conservative)
                winner = pa if va >= vb else pb
            else:
                winner = pa if va <= vb else pb
            emit(x, y, winner.rf, winner.provenance)
    return PiecewiseBound(out)


def feasible_region(pw: PiecewiseBound, c: Fraction) -> list[tuple[BoundaryPoint, BoundaryPoint]]:
    """Maximal closed intervals where the regularized bound is >= c.

    Each piece is solved on its closed cell [lo, hi]; since regularization
    takes the max of adjacent pieces at breakpoints, the union over closed
    cells is exactly the upper level set.  Endpoints are exact for rational
    or quadratic crossings; bracketed crossings round the region outward.
    """
    c = Fraction(c)
    intervals: list[tuple[BoundaryPoint, BoundaryPoint]] = []
    for piece in pw.pieces:
        if piece.rf is None:
            continue
        rf = piece.rf
        diff = psub(rf.num, pscale(rf.den, c))
        if not diff:
            intervals.append((piece.lo, piece.hi))
            continue
        den_sign = polys.sign_at(rf.den, rational_between(piece.lo, piece.hi))
        assert den_sign != 0, "denominator not sign-definite on its piece"

        cuts: list[BoundaryPoint] = [piece.lo, piece.hi]
        brackets: list[tuple[BoundaryPoint, BoundaryPoint]] = []
        roots = polys.roots_in_closed_interval(diff, piece.lo, piece.hi)
        for root in roots:
            if isinstance(root, ExactRoot):
                # equality point: feasible on its own, possibly isolated
                intervals.append((root.point, root.point))
                if piece.lo < root.point < piece.hi:
                    cuts.append(root.point)
            else:
                bl = max(as_boundary(root.lo), piece.lo, key=_exact_cmp)
                bh = min(as_boundary(root.hi), piece.hi, key=_exact_cmp)
                brackets.append((bl, bh))
                if piece.lo < bl:
                    cuts.append(bl)
                if bh < piece.hi:
                    cuts.append(bh)
        cuts.sort(key=_exact_cmp)

        for x, y in zip(cuts, cuts[1:]):
            if not x < y:
                continue
            if any(bl <= x and y <= bh for bl, bh in brackets):
                intervals.append((x, y))  # crossing bracket: round outward
                continue
            t = rational_between(x, y)
            if den_sign * polys.peval(diff, t) > 0:
                intervals.append((x, y))

    intervals.sort(key=lambda iv: (_exact_cmp(iv[0]), _exact_cmp(iv[1])))
    merged: list[tuple[BoundaryPoint, BoundaryPoint]] = []
    for lo, hi in intervals:
        if merged and not merged[-1][1] < lo:
            plo, phi = merged[-1]
            merged[-1] = (plo, hi if hi > phi else phi)
        else:
            merged.append((lo, hi))
    # the domain is half-open at sigma_cap
    return [iv for iv in merged if iv[0] < pw.sigma_cap]
