"""Integral positive definite binary quadratic forms of negative discriminant.

Gauss reduction, brute-force class numbers h(-D), Hurwitz class numbers
H(-D) via the conductor divisor sum, and the fundamental-discriminant
machinery with the attached Kronecker characters.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import divisors, kronecker, moebius, sigma1, squarefree_decomposition
from .errors import InvalidDiscriminant, NotFundamental, NotPositiveDefinite

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))

# numpy speeds up the divisor scan for large discriminants; the counting
# logic is identical either way.
try:
    import numpy as _np
except ImportError:  # pragma: no cover
    _np = None

_NUMPY_MIN_D = 200_000


@dataclass(frozen=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_positive_definite(self) -> bool:
        return self.discriminant < 0 and self.a > 0

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def coefficients(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return f"QuadraticForm({self.a}, {self.b}, {self.c})"


def transform(F: QuadraticForm, M: Matrix) -> QuadraticForm:
    """F composed with the substitution (x, y) -> (p*x + q*y, r*x + s*y)."""
    (p, q), (r, s) = M
    a = F(p, r)
    c = F(q, s)
    b = 2 * F.a * p * q + F.b * (p * s + q * r) + 2 * F.c * r * s
    return QuadraticForm(a, b, c)


def _mat_mul(M: Matrix, N: Matrix) -> Matrix:
    (a, b), (c, d) = M
    (e, f), (g, h) = N
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def is_reduced(F: QuadraticForm) -> bool:
    a, b, c = F.a, F.b, F.c
    if not (-a < b <= a <= c):
        return False
    if a == c and b < 0:
        return False
    return True


def reduce_form(F: QuadraticForm) -> tuple[QuadraticForm, Matrix]:
    """Unique reduced representative and the SL2(Z) matrix realizing it.

    Returns (G, M) with transform(F, M) == G, det M = 1 and G satisfying
    |b| <= a <= c with b >= 0 whenever |b| = a or a = c.
    """
    if not F.is_positive_definite:
        raise NotPositiveDefinite(f"{F!r} is not positive definite")
    a, b, c = F.a, F.b, F.c
    M = IDENTITY
    while True:
        if not -a < b <= a:
            m = (a - b) // (2 * a)
            b_new = b + 2 * m * a
            c = a * m * m + b * m + c
            b = b_new
            M = _mat_mul(M, ((1, m), (0, 1)))
        if a > c:
            a, b, c = c, -b, a
            M = _mat_mul(M, ((0, -1), (1, 0)))
            continue
        break
    if a == c and b < 0:
        a, b, c = c, -b, a
        M = _mat_mul(M, ((0, -1), (1, 0)))
    return QuadraticForm(a, b, c), M


def equivalent(F1: QuadraticForm, F2: QuadraticForm) -> bool:
    """SL2(Z)-equivalence, decided by comparing reduced representatives."""
    if F1.discriminant != F2.discriminant:
        return False
    return reduce_form(F1)[0] == reduce_form(F2)[0]


def _check_discriminant(D: int) -> None:
    if D <= 0 or D % 4 not in (0, 3):
        raise InvalidDiscriminant(f"-{D} is not congruent to 0 or 1 mod 4")


def _form_triples(D: int) -> list[tuple[int, int, int]]:
    out = []
    for b in range(D % 2, isqrt(D // 3) + 1, 2):
        m = (b * b + D) // 4
        lo = max(b, 1)
        for a in range(lo, isqrt(m) + 1):
            if m % a:
                continue
            c = m // a
            out.append((a, b, c))
            if b != 0 and b != a and a != c:
                out.append((a, -b, c))
    return sorted(out)


def _count_numpy(D: int) -> int:
    count = 0
    for b in range(D % 2, isqrt(D // 3) + 1, 2):
        m = (b * b + D) // 4
        lo = max(b, 1)
        hi = isqrt(m)
        if hi < lo:
            continue
        a = _np.arange(lo, hi + 1, dtype=_np.int64)
        adiv = a[m % a == 0]
        count += adiv.size
        if b:
            c = m // adiv
            count += int(_np.count_nonzero((adiv != b) & (adiv != c)))
    return count


def reduced_forms(D: int) -> list[QuadraticForm]:
    """All reduced positive definite forms of discriminant -D, sorted."""
    _check_discriminant(D)
    return [QuadraticForm(*t) for t in _form_triples(D)]


def class_number(D: int) -> int:
    """h(-D): number of reduced forms of discriminant -D (brute force).

    Work grows like D, so this is a desk-scale oracle: fast to D ~ 1e8,
    hours beyond ~1e11.
    """
    _check_discriminant(D)
    if _np is not None and D >= _NUMPY_MIN_D and D < (1 << 61):
        return _count_numpy(D)
    return len(_form_triples(D))


def is_fundamental(D: int) -> bool:
    """True iff -D is a fundamental discriminant (D > 0)."""
    if D <= 0:
        return False
    if D % 4 == 3:
        s, _ = squarefree_decomposition(D)
        return s == D
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (1, 2):
            return False
        s, _ = squarefree_decomposition(m)
        return s == m
    return False


@dataclass(frozen=True)
class FundamentalDecomposition:
    """-D = -D0 * f^2 with -D0 fundamental."""

    D0: int
    f: int


def fundamental_decomposition(D: int) -> FundamentalDecomposition:
    _check_discriminant(D)
    s, f = squarefree_decomposition(D)
    if s % 4 == 3:
        return FundamentalDecomposition(s, f)
    # s = 1 or 2 mod 4: the fundamental part picks up the factor 4
    assert f % 2 == 0
    return FundamentalDecomposition(4 * s, f // 2)


def unit_weight(D0: int) -> int:
    """omega(-D0): half the number of units of Q(sqrt(-D0))."""
    if D0 == 3:
        return 3
    if D0 == 4:
        return 2
    return 1


def kronecker_chi(D0: int, n: int) -> int:
    """Kronecker character chi_{-D0}(n) for fundamental -D0."""
    if not is_fundamental(D0):
        raise NotFundamental(f"-{D0} is not a fundamental discriminant")
    return kronecker(-D0, n)


def hurwitz_class_number(D: int) -> Fraction:
    """H(-D) via the conductor divisor sum.

    H(-D) = h(-D0)/omega(-D0) * sum_{d | f} mu(d) chi_{-D0}(d) sigma1(f/d)
    for -D = -D0 f^2.
    """
    _check_discriminant(D)
    dec = fundamental_decomposition(D)
    h0 = class_number(dec.D0)
    total = sum(
        moebius(d) * kronecker(-dec.D0, d) * sigma1(dec.f // d) for d in divisors(dec.f)
    )
    return Fraction(h0, unit_weight(dec.D0)) * total


def hurwitz_class_number_direct(D: int) -> Fraction:
    """H(-D) as the 1/|Aut| weighted count over reduced forms (oracle route).

    Weight 1/3 for the (a, a, a) shape, 1/2 for (a, 0, a), else 1.
    """
    _check_discriminant(D)
    total = Fraction(0)
    for a, b, c in _form_triples(D):
        if a == b == c:
            total += Fraction(1, 3)
        elif a == c and b == 0:
            total += Fraction(1, 2)
        else:
            total += 1
    return total
