"""Exact arithmetic on short Weierstrass curves over Q.

Affine points are kept in the normal form (A, B, C) with x = A/C^2,
y = B/C^3, C > 0 and gcd(A, C) = gcd(B, C) = 1; the point at infinity is the
reserved triple (0, 1, 0).  Everything here is integer or Fraction exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt

from .arith import divisors, integer_roots_monic_cubic, squarefree_decomposition
from .errors import (
    InfinitePoint,
    NonPositiveDiscriminant,
    NotOnCurve,
    SingularCurve,
)

MAX_TORSION_ORDER = 12  # Mazur: no rational point has finite order > 12


@dataclass(frozen=True)
class CurveModel:
    """y^2 = x^3 + a4*x + a6 with integer coefficients."""

    a4: int
    a6: int

    def __post_init__(self) -> None:
        if 4 * self.a4**3 + 27 * self.a6**2 == 0:
            raise SingularCurve(f"discriminant of ({self.a4}, {self.a6}) is zero")

    @cached_property
    def discriminant(self) -> int:
        return -16 * (4 * self.a4**3 + 27 * self.a6**2)

    @cached_property
    def j_invariant(self) -> Fraction:
        return Fraction(-1728 * (4 * self.a4) ** 3, self.discriminant)

    def rhs(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        return x * x * x + self.a4 * x + self.a6

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"CurveModel(a4={self.a4}, a6={self.a6})"


def curve_new(a4: int, a6: int) -> CurveModel:
    """Build a curve model; raises SingularCurve when the discriminant is 0."""
    return CurveModel(int(a4), int(a6))


@dataclass(frozen=True)
class RationalPoint:
    A: int
    B: int
    C: int

    def __post_init__(self) -> None:
        if self.C == 0:
            if (self.A, self.B) != (0, 1):
                raise ValueError("point at infinity must be the triple (0, 1, 0)")
            return
        if self.C < 0:
            raise ValueError("denominator root C must be positive")
        if gcd(self.A, self.C) != 1 or gcd(self.B, self.C) != 1:
            raise ValueError(f"triple ({self.A}, {self.B}, {self.C}) not in lowest terms")

    @property
    def is_infinity(self) -> bool:
        return self.C == 0

    @property
    def x(self) -> Fraction:
        if self.is_infinity:
            raise InfinitePoint("point at infinity has no affine x")
        return Fraction(self.A, self.C**2)

    @property
    def y(self) -> Fraction:
        if self.is_infinity:
            raise InfinitePoint("point at infinity has no affine y")
        return Fraction(self.B, self.C**3)

    @staticmethod
    def from_xy(x: Fraction | int, y: Fraction | int) -> "RationalPoint":
        """Normalize affine coordinates into the (A, B, C) triple.

        The x-denominator must be a perfect square and the y-denominator its
        cube; this holds for every rational point on an integral short
        Weierstrass model.
        """
        x, y = Fraction(x), Fraction(y)
        c = isqrt(x.denominator)
        if c * c != x.denominator:
            raise NotOnCurve(f"x-denominator {x.denominator} is not a perfect square")
        b = y * c**3
        if b.denominator != 1:
            raise NotOnCurve(f"y-denominator {y.denominator} incompatible with C={c}")
        return RationalPoint(x.numerator, int(b), c)

    def __neg__(self) -> "RationalPoint":
        if self.is_infinity:
            return self
        return RationalPoint(self.A, -self.B, self.C)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        if self.is_infinity:
            return "RationalPoint(inf)"
        return f"RationalPoint({self.A}, {self.B}, {self.C})"


INFINITY = RationalPoint(0, 1, 0)


def point(x: Fraction | int, y: Fraction | int) -> RationalPoint:
    """Convenience constructor from affine coordinates."""
    return RationalPoint.from_xy(x, y)


def on_curve(E: CurveModel, P: RationalPoint) -> bool:
    """Exact on-curve predicate B^2 = A^3 + a4*A*C^4 + a6*C^6."""
    if P.is_infinity:
        return True
    A, B, C = P.A, P.B, P.C
    return B * B == A**3 + E.a4 * A * C**4 + E.a6 * C**6


def _require_on_curve(E: CurveModel, P: RationalPoint) -> None:
    if not on_curve(E, P):
        raise NotOnCurve(f"{P!r} is not on y^2 = x^3 + {E.a4}x + {E.a6}")


def _add_raw(E: CurveModel, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 == -y2:
            return INFINITY
        lam = (3 * x1 * x1 + E.a4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    y3 = lam * (x1 - x3) - y1
    return RationalPoint.from_xy(x3, y3)


def point_add(E: CurveModel, P: RationalPoint, Q: RationalPoint) -> RationalPoint:
    """Chord-tangent sum P + Q in lowest-terms normal form."""
    _require_on_curve(E, P)
    _require_on_curve(E, Q)
    return _add_raw(E, P, Q)


def point_neg(P: RationalPoint) -> RationalPoint:
    return -P


def point_scale(E: CurveModel, n: int, P: RationalPoint) -> RationalPoint:
    """n*P by double-and-add; 0*P is the identity, (-n)*P = -(n*P)."""
    _require_on_curve(E, P)
    if n < 0:
        n, P = -n, -P
    acc = INFINITY
    addend = P
    while n:
        if n & 1:
            acc = _add_raw(E, acc, addend)
        n >>= 1
        if n:
            addend = _add_raw(E, addend, addend)
    return acc


def point_order(E: CurveModel, P: RationalPoint, cap: int = MAX_TORSION_ORDER) -> int | None:
    """Order of P if it is at most cap, else None."""
    _require_on_curve(E, P)
    if P.is_infinity:
        return 1
    acc = P
    for n in range(2, cap + 1):
        acc = _add_raw(E, acc, P)
        if acc.is_infinity:
            return n
    return None


@dataclass(frozen=True)
class TwistPoint:
    """Point (u/w^2, v/w^3) on the twist -D*(y/2)^2 = x^3 + a4*x + a6.

    The triple is not forced into lowest terms; the divisibility conditions
    gcd(u, w^2) | D and gcd(v, w^3) | D are validated, not enforced.
    """

    u: int
    v: int
    w: int
    D: int

    def __post_init__(self) -> None:
        if self.v == 0:
            raise ValueError("twist point needs v != 0")
        if self.w < 1:
            raise ValueError("twist point needs w >= 1")
        if self.D < 1:
            raise ValueError("twist parameter D must be positive")

    def divisibility_ok(self) -> bool:
        return self.D % gcd(self.u, self.w**2) == 0 and self.D % gcd(self.v, self.w**3) == 0

    def with_even_v(self) -> "TwistPoint":
        """Same affine point rescaled so v is even: (u,v,w) -> (4u, 8v, 2w)."""
        if self.v % 2 == 0:
            return self
        return TwistPoint(4 * self.u, 8 * self.v, 2 * self.w, self.D)


def twist_contains(E: CurveModel, Q: TwistPoint) -> bool:
    """Exact membership: -D*v^2 = 4*(u^3 + a4*u*w^4 + a6*w^6)."""
    u, v, w, D = Q.u, Q.v, Q.w, Q.D
    return -D * v * v == 4 * (u**3 + E.a4 * u * w**4 + E.a6 * w**6)


def family_discriminant(E: CurveModel, t: int) -> int:
    """D_E(t) = 4*(t^3 + a4*t - a6); only positive values are usable."""
    D = 4 * (t**3 + E.a4 * t - E.a6)
    if D <= 0:
        raise NonPositiveDiscriminant(f"t={t} gives D={D} <= 0")
    return D


def family_twist_point(E: CurveModel, t: int) -> TwistPoint:
    """Canonical point (-t, 1) on the twist of parameter D_E(t)."""
    return TwistPoint(-t, 1, 1, family_discriminant(E, t))


def _torsion_y_candidates(E: CurveModel) -> list[int]:
    # Lutz-Nagell: integral torsion has y = 0 or y^2 | disc.
    _, f = squarefree_decomposition(abs(E.discriminant))
    return [0] + divisors(f)


def torsion_points(E: CurveModel) -> tuple[RationalPoint, ...]:
    """All rational torsion points, found by the Lutz-Nagell criterion.

    Candidates are integral points with y = 0 or y^2 dividing the
    discriminant; each one is kept only if some multiple n <= 12 hits the
    identity.
    """
    found = {INFINITY}
    for y in _torsion_y_candidates(E):
        for x in integer_roots_monic_cubic(E.a4, E.a6 - y * y):
            P = RationalPoint(x, y, 1)
            if not on_curve(E, P) or P in found:
                continue
            if point_order(E, P) is not None:
                found.add(P)
                found.add(-P)
    return tuple(sorted(found, key=lambda p: (p.C, p.A, p.B)))


def torsion_order(E: CurveModel) -> int:
    return len(torsion_points(E))


def integral_points(E: CurveModel, bound: int) -> list[RationalPoint]:
    """Integral points with |x| <= bound and y > 0, plus those with y = 0."""
    out = []
    for x in range(-bound, bound + 1):
        rhs = x**3 + E.a4 * x + E.a6
        if rhs < 0:
            continue
        y = isqrt(rhs)
        if y * y == rhs:
            out.append(RationalPoint(x, y, 1))
    return out
