"""Exact arithmetic primitives: rationals, quadratic surds, outward-rounded intervals.

Comparisons between table breakpoints must never consult floating point,
because feasibility regions can degenerate to a single point.  Everything
here reduces sign questions to integer arithmetic on ``fractions.Fraction``.
Floating-point ``Interval`` values exist only to give fast, certified
enclosures for the branch-and-bound optimizer.
"""

import math
from fractions import Fraction
from math import isqrt

from .errors import DenominatorVanishes

RationalLike = int | Fraction

_SMALL_PRIMES: list[int] = []


def _small_primes(bound: int = 10_000) -> list[int]:
    if not _SMALL_PRIMES:
        sieve = bytearray([1]) * (bound + 1)
        sieve[0] = sieve[1] = 0
        for p in range(2, isqrt(bound) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _SMALL_PRIMES.extend(i for i in range(2, bound + 1) if sieve[i])
    return _SMALL_PRIMES


_SQFREE_CACHE: dict[int, tuple[int, int]] = {}


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s^2 * m and return (s, m).

    m is square-free whenever all square factors of n involve small primes
    or n/s^2 is a perfect square; larger undetected square factors only
    affect the canonical shape of a surd, never the result of a comparison.
    """
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return 1, n
    hit = _SQFREE_CACHE.get(n)
    if hit is not None:
        return hit
    s, m = 1, n
    # full trial division is only worthwhile for moderate radicands; huge
    # discriminants get a cheap pass (comparisons never depend on this)
    prime_cap = 10_000 if m <= 10**8 else 100
    for p in _small_primes():
        if p > prime_cap or p * p > m:
            break
        while m % (p * p) == 0:
            m //= p * p
            s *= p
    root = isqrt(m)
    if root * root == m:
        s, m = s * root, 1
    if len(_SQFREE_CACHE) < 1 << 16:
        _SQFREE_CACHE[n] = (s, m)
    return s, m


def sqrt_fraction(x: Fraction) -> tuple[Fraction, int]:
    """Return (c, r) with sqrt(x) = c*sqrt(r), r a (best-effort) square-free int."""
    if x < 0:
        raise ValueError("negative radicand")
    n = x.numerator * x.denominator
    s, m = squarefree_decompose(n)
    return Fraction(s, x.denominator), m


def float_down(x: Fraction) -> float:
    """Largest double <= x (for |x| within double range)."""
    f = float(x)
    if math.isinf(f):
        return math.nextafter(f, -math.inf) if f > 0 else f
    if Fraction(f) > x:
        f = math.nextafter(f, -math.inf)
    return f


def float_up(x: Fraction) -> float:
    """Smallest double >= x."""
    f = float(x)
    if math.isinf(f):
        return math.nextafter(f, math.inf) if f < 0 else f
    if Fraction(f) < x:
        f = math.nextafter(f, math.inf)
    return f


class Interval:
    """Closed floating-point interval [lo, hi] with outward rounding.

    Every arithmetic operation widens the result by one ulp in each
    direction, so the interval always contains the exact real result.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float):
        if not lo <= hi:
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def from_fraction(cls, x: Fraction) -> "Interval":
        return cls(float_down(x), float_up(x))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(
            math.nextafter(self.lo + other.lo, -math.inf),
            math.nextafter(self.hi + other.hi, math.inf),
        )

    def __sub__(self, other: "Interval") -> "Interval":
        return Interval(
            math.nextafter(self.lo - other.hi, -math.inf),
            math.nextafter(self.hi - other.lo, math.inf),
        )

    def __mul__(self, other: "Interval") -> "Interval":
        p = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(
            math.nextafter(min(p), -math.inf), math.nextafter(max(p), math.inf)
        )

    def __truediv__(self, other: "Interval") -> "Interval":
        if other.lo <= 0.0 <= other.hi:
            raise DenominatorVanishes(f"denominator interval {other} contains zero")
        p = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Interval(
            math.nextafter(min(p), -math.inf), math.nextafter(max(p), math.inf)
        )

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def scale(self, k: float) -> "Interval":
        if k >= 0:
            return Interval(
                math.nextafter(self.lo * k, -math.inf),
                math.nextafter(self.hi * k, math.inf),
            )
        return Interval(
            math.nextafter(self.hi * k, -math.inf),
            math.nextafter(self.lo * k, math.inf),
        )


def _sign(x: Fraction | int) -> int:
    return (x > 0) - (x < 0)


def _surd_sign(p: Fraction, q: Fraction, r: int) -> int:
    """Exact sign of p + q*sqrt(r), r >= 0, by squaring away the surd."""
    if q == 0 or r == 0:
        return _sign(p)
    if r == 1:
        return _sign(p + q)
    if q > 0:
        if p >= 0:
            return 1
        # p < 0: compare q^2 r against p^2
        return _sign(q * q * r - p * p)
    return -_surd_sign(-p, -q, r)


class BoundaryPoint:
    """An exact real of the form p + q*sqrt(r) with p, q rational, r >= 0 integer.

    Breakpoints of the exponent tables are of this shape (most are plain
    rationals; a few are surds such as (539 - sqrt(42121))/460).  Comparison
    against any other BoundaryPoint is exact and decided purely in rational
    arithmetic, including when the two surds differ.  Arithmetic is closed
    within a single field Q(sqrt(r)); combining two distinct surds raises,
    which the tables never require.
    """

    __slots__ = ("p", "q", "r")

    def __init__(self, p: RationalLike | Fraction, q: RationalLike = 0, r: int = 0):
        p = Fraction(p)
        q = Fraction(q)
        r = int(r)
        if r < 0:
            raise ValueError("negative radicand")
        if q == 0 or r == 0:
            q, r = Fraction(0), 0
        elif r == 1:
            p, q, r = p + q, Fraction(0), 0
        else:
            s, m = squarefree_decompose(r)
            if m in (0, 1):
                p, q, r = p + q * s, Fraction(0), 0
            elif s != 1:
                q, r = q * s, m
        self.p = p
        self.q = q
        self.r = r

    @classmethod
    def rational(cls, x: RationalLike | Fraction) -> "BoundaryPoint":
        return cls(Fraction(x))

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.p

    def sign(self) -> int:
        return _surd_sign(self.p, self.q, self.r)

    # -- comparisons ----------------------------------------------------

    def _compare(self, other: "BoundaryPoint | RationalLike | Fraction") -> int:
        other = as_boundary(other)
        if self.q == 0 and other.q == 0:
            return _sign(self.p - other.p)
        if self.q == 0 or other.q == 0 or self.r == other.r:
            r = self.r if self.q != 0 else other.r
            return _surd_sign(self.p - other.p, self.q - other.q, r)
        # distinct surds: compare (dp + q sqrt(r)) against q' sqrt(r')
        dp = self.p - other.p
        sa = _surd_sign(dp, self.q, self.r)
        sb = _sign(other.q)
        if sa != sb:
            return -1 if sa < sb else 1
        if sa == 0:
            return 0
        # both sides share sign sa; square once more
        d2 = _surd_sign(
            dp * dp + self.q * self.q * self.r - other.q * other.q * other.r,
            2 * dp * self.q,
            self.r,
        )
        return d2 if sa > 0 else -d2

    def __eq__(self, other) -> bool:
        if isinstance(other, (BoundaryPoint, int, Fraction)):
            return self._compare(other) == 0
        return NotImplemented

    def __lt__(self, other) -> bool:
        return self._compare(other) < 0

    def __le__(self, other) -> bool:
        return self._compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self._compare(other) > 0

    def __ge__(self, other) -> bool:
        return self._compare(other) >= 0

    # -- field arithmetic (single surd) ---------------------------------

    def _coerce(self, other) -> "tuple[BoundaryPoint, int] | None":
        """Return (other, common r) if arithmetic is possible, else None."""
        if isinstance(other, (int, Fraction)):
            other = BoundaryPoint.rational(other)
        if not isinstance(other, BoundaryPoint):
            return None
        if self.q != 0 and other.q != 0 and self.r != other.r:
            raise ValueError(
                f"arithmetic across distinct surds sqrt({self.r}), sqrt({other.r})"
            )
        return other, (self.r if self.q != 0 else other.r)

    def __add__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        other, r = co
        return BoundaryPoint(self.p + other.p, self.q + other.q, r)

    __radd__ = __add__

    def __neg__(self):
        return BoundaryPoint(-self.p, -self.q, self.r)

    def __sub__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        other, r = co
        return BoundaryPoint(self.p - other.p, self.q - other.q, r)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        other, r = co
        return BoundaryPoint(
            self.p * other.p + self.q * other.q * r,
            self.p * other.q + self.q * other.p,
            r,
        )

    __rmul__ = __mul__

    def inverse(self) -> "BoundaryPoint":
        if self.q == 0:
            if self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return BoundaryPoint(1 / self.p)
        norm = self.p * self.p - self.q * self.q * self.r
        if norm == 0:
            raise ZeroDivisionError("inverse of zero")
        return BoundaryPoint(self.p / norm, -self.q / norm, self.r)

    def __truediv__(self, other):
        co = self._coerce(other)
        if co is None:
            return NotImplemented
        other, _ = co
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # -- enclosures ------------------------------------------------------

    def enclose_fraction(self, precision: int = 53) -> tuple[Fraction, Fraction]:
        """Exact rational bounds lo <= value <= hi.

        Width is at most 2^-precision * max(1, |value|); for rationals the
        enclosure is the point itself.
        """
        if precision < 1:
            raise ValueError("precision must be >= 1")
        if self.q == 0:
            return self.p, self.p
        qa = abs(self.q)
        extra = (qa.numerator // qa.denominator + 1).bit_length() + 1
        k = precision + extra
        s = isqrt(self.r << (2 * k))
        lo_rt = Fraction(s, 1 << k)
        hi_rt = Fraction(s + 1, 1 << k)
        if self.q > 0:
            return self.p + self.q * lo_rt, self.p + self.q * hi_rt
        return self.p + self.q * hi_rt, self.p + self.q * lo_rt

    def enclose(self, precision: int = 53) -> Interval:
        lo, hi = self.enclose_fraction(precision)
        return Interval(float_down(lo), float_up(hi))

    def __float__(self) -> float:
        # fast approximation (a few ulp); enclose() gives certified bounds
        if self.q == 0:
            return float(self.p)
        return float(self.p) + float(self.q) * math.sqrt(self.r)

    def __repr__(self) -> str:
        if self.q == 0:
            return f"BoundaryPoint({self.p})"
        return f"BoundaryPoint({self.p} + {self.q}*sqrt({self.r}))"

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        num = []
        if self.p:
            num.append(str(self.p))
        num.append(f"{self.q}*sqrt({self.r})" if self.q != 1 else f"sqrt({self.r})")
        return " + ".join(num).replace("+ -", "- ")


# defining __eq__ suppresses hashing; surd normalization is best-effort, so
# value-consistent hashes cannot be guaranteed and dict keys are not supported
BoundaryPoint.__hash__ = None  # type: ignore[assignment]


def as_boundary(x: "BoundaryPoint | RationalLike | Fraction") -> BoundaryPoint:
    if isinstance(x, BoundaryPoint):
        return x
    return BoundaryPoint.rational(Fraction(x))


def compare_boundary(a: BoundaryPoint, b: BoundaryPoint) -> int:
    """Exact three-way comparison: -1 if a < b, 0 if equal, +1 if a > b."""
    return as_boundary(a)._compare(b)


def enclose_boundary(a: BoundaryPoint, precision: int = 53) -> Interval:
    """Outward-rounded floating interval guaranteed to contain a."""
    return as_boundary(a).enclose(precision)
