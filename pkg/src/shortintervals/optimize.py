"""Certified supremum of min-of-rational-functions over a union of cells.

Branch and bound with outward-rounded interval enclosures: bisect cells,
bound the objective on each cell, prune cells that cannot beat the best
certified value found so far.  The returned bracket [lower, upper] always
contains the true supremum; exact seed evaluations at cell endpoints make
suprema attained at breakpoints (the common case for these tables) resolve
immediately.
"""

import heapq
from fractions import Fraction
from math import inf

from .errors import NonConvergence
from .exact import BoundaryPoint, Interval, as_boundary, float_down, float_up


class SupCell:
    """A closed sigma-cell with the objective min(objectives) on it."""

    __slots__ = ("lo", "hi", "objectives")

    def __init__(self, lo, hi, objectives):
        self.lo = as_boundary(lo)
        self.hi = as_boundary(hi)
        if self.lo > self.hi:
            raise ValueError("inverted cell")
        self.objectives = tuple(objectives)
        if not self.objectives:
            raise ValueError("cell without objectives")


class SupResult:
    __slots__ = ("upper", "lower", "witness", "active_index", "nodes")

    def __init__(self, upper, lower, witness, active_index, nodes=0):
        self.upper = upper
        self.lower = lower
        self.witness = witness  # exact BoundaryPoint/Fraction or None
        self.active_index = active_index
        self.nodes = nodes

    @property
    def is_empty(self) -> bool:
        return self.witness is None and self.upper == -inf

    def __repr__(self):
        return (
            f"SupResult(upper={self.upper!r}, lower={self.lower!r}, "
            f"witness={self.witness}, active={self.active_index})"
        )


def _value_bounds(value) -> tuple[float, float]:
    if isinstance(value, BoundaryPoint):
        iv = value.enclose(60)
        return iv.lo, iv.hi
    return float_down(value), float_up(value)


def _exact_min(objectives, point):
    """(min value, argmin index) over objectives, evaluated exactly."""
    best = None
    best_i = 0
    for i, rf in enumerate(objectives):
        v = rf.eval_exact(point)
        if best is None or as_boundary(v) < as_boundary(best):
            best, best_i = v, i
    return best, best_i


def _inner_point(cell: SupCell, a: float, b: float):
    """An exact point of [cell.lo, cell.hi] within [a, b], or None.

    The float cell may overhang the true cell by an ulp at either end; a
    lower bound certified on [a, b] is only attained at a witness that lies
    in both, so the overhang slivers yield no witness.
    """
    mid = Fraction(0.5 * (a + b))
    if mid < cell.lo:
        return cell.lo if not cell.lo > Fraction(b) else None
    if mid > cell.hi:
        return cell.hi if not cell.hi < Fraction(a) else None
    return BoundaryPoint.rational(mid)


def _cell_bounds(cell: SupCell, lo_f: float, hi_f: float) -> tuple[float, float]:
    """(lower, upper) for min over objectives on the widened float cell.

    The lower end bounds the objective at every point of the cell, so it is
    a certified attained value for any witness inside.
    """
    iv = Interval(min(lo_f, hi_f), max(lo_f, hi_f))
    lo = inf
    hi = inf
    for rf in cell.objectives:
        enc = rf.enclose_tight(iv)
        lo = min(lo, enc.lo)
        hi = min(hi, enc.hi)
    return lo, hi


def certified_sup(
    cells: list[SupCell],
    tol: Fraction | float,
    node_budget: int = 200_000,
) -> SupResult:
    """Certified bracket for sup over all cells of min_i f_i(sigma).

    Guarantees lower <= sup <= upper and upper - lower <= tol on success;
    the witness is an exact point whose objective value is >= lower.  An
    empty cell list yields the empty-supremum convention (-inf).  Raises
    NonConvergence when the node budget is exhausted first.
    """
    tol_f = float_down(Fraction(tol)) if not isinstance(tol, float) else tol
    if tol_f <= 0:
        raise ValueError("tol must be positive")
    if not cells:
        return SupResult(-inf, -inf, None, None)

    lower = -inf
    witness = None
    witness_cell = None
    active = None
    residual_upper = -inf
    heap: list = []
    seq = 0

    def offer_exact(value, point, idx):
        nonlocal lower, witness, witness_cell, active
        lo_f, _ = _value_bounds(value)
        if lo_f > lower:
            lower, witness, witness_cell, active = lo_f, point, None, idx

    def offer_bound(lb, cell, a, b):
        nonlocal lower, witness, witness_cell, active
        if lb > lower:
            pt = _inner_point(cell, a, b)
            if pt is not None:
                lower, witness, witness_cell, active = lb, pt, cell, None

    for cell in cells:
        degenerate = cell.lo == cell.hi
        for pt in (cell.lo,) if degenerate else (cell.lo, cell.hi):
            v, i = _exact_min(cell.objectives, pt)
            offer_exact(v, pt, i)
            if degenerate:
                residual_upper = max(residual_upper, _value_bounds(v)[1])
        if not degenerate:
            lo_f = cell.lo.enclose(60).lo
            hi_f = cell.hi.enclose(60).hi
            lb, ub = _cell_bounds(cell, lo_f, hi_f)
            offer_bound(lb, cell, lo_f, hi_f)
            heapq.heappush(heap, (-ub, seq, lo_f, hi_f, cell))
            seq += 1

    pops = 0
    while True:
        top = -heap[0][0] if heap else -inf
        upper = max(lower, residual_upper, top)
        if upper - lower <= tol_f:
            if active is None and witness_cell is not None:
                active = _exact_min(witness_cell.objectives, witness)[1]
            return SupResult(upper, lower, witness, active, pops)
        if not heap:
            raise NonConvergence(
                f"residual cells leave gap {upper - lower:.3g} > tol {tol_f:.3g}"
            )
        neg_ub, _, lo_f, hi_f, cell = heapq.heappop(heap)
        if -neg_ub <= lower:
            continue
        pops += 1
        if pops > node_budget:
            raise NonConvergence(f"node budget {node_budget} exhausted")

        mid_f = 0.5 * (lo_f + hi_f)
        if not lo_f < mid_f < hi_f:
            # cell is a few ulps wide; cannot split further
            residual_upper = max(residual_upper, -neg_ub)
            continue
        for a, b in ((lo_f, mid_f), (mid_f, hi_f)):
            lb, ub = _cell_bounds(cell, a, b)
            offer_bound(lb, cell, a, b)
            if ub > lower:
                heapq.heappush(heap, (-ub, seq, a, b, cell))
                seq += 1
