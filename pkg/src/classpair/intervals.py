"""Outward-rounded interval arithmetic.

Certified comparisons in the theorem evaluators need every real quantity to
carry a rigorous enclosure.  Endpoints are floats; every operation widens the
result by one ulp in each direction, which dominates the rounding error of
the underlying double arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

_INF = math.inf


def _down(x: float) -> float:
    if x != x or x == -_INF:
        return -_INF
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    if x != x or x == _INF:
        return _INF
    return math.nextafter(x, _INF)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    @staticmethod
    def from_value_error(value: float, err: float) -> "Interval":
        return Interval(_down(value - err), _up(value + err))

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def __add__(self, other: "Interval | float | int") -> "Interval":
        other = _coerce(other)
        return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: "Interval | float | int") -> "Interval":
        return self + (-_coerce(other))

    def __rsub__(self, other: "Interval | float | int") -> "Interval":
        return _coerce(other) + (-self)

    def __mul__(self, other: "Interval | float | int") -> "Interval":
        other = _coerce(other)
        cands = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return Interval(_down(min(cands)), _up(max(cands)))

    __rmul__ = __mul__

    def __truediv__(self, other: "Interval | float | int") -> "Interval":
        other = _coerce(other)
        if other.lo <= 0.0 <= other.hi:
            raise ZeroDivisionError("interval division by an interval containing zero")
        cands = (
            self.lo / other.lo,
            self.lo / other.hi,
            self.hi / other.lo,
            self.hi / other.hi,
        )
        return Interval(_down(min(cands)), _up(max(cands)))

    def __rtruediv__(self, other: "Interval | float | int") -> "Interval":
        return _coerce(other) / self

    def __abs__(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(0.0, max(-self.lo, self.hi))

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError(f"sqrt of interval with negative endpoint {self.lo}")
        return Interval(_down(math.sqrt(self.lo)), _up(math.sqrt(self.hi)))

    def log(self) -> "Interval":
        if self.lo <= 0:
            raise ValueError("log of interval touching zero")
        return Interval(_down(math.log(self.lo)), _up(math.log(self.hi)))

    def exp(self) -> "Interval":
        return Interval(_down(math.exp(self.lo)), _up(math.exp(self.hi)))

    def pow_int(self, n: int) -> "Interval":
        if n < 0:
            return Interval.point(1.0) / self.pow_int(-n)
        out = Interval.point(1.0)
        for _ in range(n):
            out = out * self
        return out

    def pow_half_int(self, n: int) -> "Interval":
        """self ** (n/2) for nonnegative intervals; n may be any integer >= 0."""
        if n % 2 == 0:
            return self.pow_int(n // 2)
        return self.sqrt().pow_int(n)

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def straddles_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def widen(self, slack: float) -> "Interval":
        return Interval(_down(self.lo - slack), _up(self.hi + slack))

    def clamp_nonnegative(self) -> "Interval":
        if self.hi < 0:
            raise ValueError("interval entirely negative; cannot clamp")
        return Interval(max(self.lo, 0.0), self.hi)

    def __contains__(self, x: float) -> bool:
        return self.contains(x)


def _coerce(x: "Interval | float | int") -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(float(x))


def imax(*items: Interval) -> Interval:
    """Enclosure of max over the given intervals."""
    return Interval(max(i.lo for i in items), max(i.hi for i in items))


def log_interval_of_int(n: int) -> Interval:
    """Enclosure of log(n) for a positive integer of any size."""
    if n <= 0:
        raise ValueError("need a positive integer")
    b = n.bit_length()
    if b <= 512:
        v = math.log(n)
    else:
        top = n >> (b - 64)
        # truncation: top*2^(b-64) <= n < (top+1)*2^(b-64)
        v = math.log(top) + (b - 64) * math.log(2)
    # 3 ulp relative guard plus truncation width when shifted
    slack = 4e-16 * abs(v) + (2 ** -62 if b > 512 else 0.0) + 5e-324
    return Interval.from_value_error(v, slack)
