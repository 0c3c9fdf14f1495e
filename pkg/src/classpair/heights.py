"""Heights, regulators and certified point-count bounds.

Canonical heights are computed straight from the defining limit: double the
point k times exactly, take the Weil height of the result, divide by 4^k.
The height-difference window (the classical two-sided bound in terms of the
logarithmic heights of j and of the discriminant) divided by 4^k certifies
the error, so every returned value is a rigorous enclosure.

Normalization.  This module uses the height for which hhat(P) is the limit
of h_W(2^k P) / 4^k, i.e. hhat is asymptotic to h_W itself, and the pairing
<P, Q> = (hhat(P+Q) - hhat(P) - hhat(Q)) / 2 satisfies <P, P> = hhat(P).
This is the convention under which the regulator of y^2 = x^3 - 16x + 1 is
0.930..., and the whole bound pipeline (diameter, count constant, budget
thresholds) is interpreted consistently in it.

Exact doubling grows coordinates by a factor ~4 per step, so certified
accuracy eps costs integers of roughly (window/eps) * hhat digits.  A digit
cap guards against runaway requests; gmpy2 is used for the big-integer core
when available.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import poly_resultant
from .curves import (
    INFINITY,
    CurveModel,
    RationalPoint,
    on_curve,
    point_add,
    point_order,
    point_scale,
    torsion_points,
)
from .errors import (
    DegenerateGram,
    DependentPoints,
    HypothesisFailed,
    InfinitePoint,
    IterationOverflow,
    NotOnCurve,
)
from .intervals import Interval, imax, log_interval_of_int

try:
    import gmpy2 as _gmp
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _gmp = None
    _mpz = int

# Certified 1e-8 via pure doubling needs ~1e8-digit integers, which is not a
# sane default; 1e-6 is reachable within the digit cap for desk-scale points.
DEFAULT_TOL = 1e-6
DEFAULT_DIGIT_CAP = 50_000_000  # decimal digits per coordinate

_LOG2_10 = math.log2(10.0)


def naive_height(P: RationalPoint) -> int:
    """H(P) = max(|A|, C^2) for x(P) = A/C^2 in lowest terms."""
    if P.is_infinity:
        raise InfinitePoint("naive height needs an affine point")
    return max(abs(P.A), P.C * P.C)


def weil_height(P: RationalPoint) -> float:
    """log H(P)."""
    return weil_height_interval(P).mid


def weil_height_interval(P: RationalPoint) -> Interval:
    return log_interval_of_int(naive_height(P))


def weil_height_rational(q: Fraction | int) -> float:
    """h_W(p/s) = log max(|p|, s) in lowest terms; h_W(0) = 0."""
    return weil_height_rational_interval(q).mid


def weil_height_rational_interval(q: Fraction | int) -> Interval:
    q = Fraction(q)
    return log_interval_of_int(max(abs(q.numerator), q.denominator))


def unit_ball_volume(r: int) -> float:
    """Volume pi^(r/2) / Gamma(r/2 + 1) of the unit ball in R^r."""
    if r < 0:
        raise ValueError("dimension must be nonnegative")
    return math.pi ** (r / 2) / math.gamma(r / 2 + 1)


def _unit_ball_interval(r: int) -> Interval:
    v = unit_ball_volume(r)
    return Interval.from_value_error(v, 8e-16 * v)


@dataclass(frozen=True)
class HeightEstimate:
    """Canonical height enclosure: truth lies in [lo, hi] and within
    value +- error_bound."""

    value: float
    error_bound: float
    lo: float
    hi: float

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)


_EXACT_ZERO = HeightEstimate(0.0, 0.0, 0.0, 0.0)


@lru_cache(maxsize=128)
def _window_constants(E: CurveModel) -> tuple[float, float]:
    """Upper bounds (Blow, Bup) with -2*Blow <= hhat(Q) - h_W(Q) <= 2*Bup.

    The classical height-difference theorem bounds hhat_half - h_W/2 between
    -(h_j/8 + h_disc/12 + 0.973) and h_j/12 + h_disc/12 + 1.07 for the
    half-normalized height; doubling transports it to our normalization.
    """
    hj = weil_height_rational_interval(E.j_invariant).hi
    hd = weil_height_rational_interval(Fraction(E.discriminant)).hi
    blow = hj / 8 + hd / 12 + 0.973
    bup = hj / 12 + hd / 12 + 1.07
    return blow, bup


@lru_cache(maxsize=128)
def _duplication_resultant(E: CurveModel):
    """|Res| of the numerator/denominator forms of the x-doubling map.

    For coprime (A, C^2) the common factor introduced by one unreduced
    doubling step divides this integer, so stripping it restores lowest
    terms without a full big-integer gcd.
    """
    a4, a6 = E.a4, E.a6
    phi = [1, 0, -2 * a4, -8 * a6, a4 * a4]
    cubic = [1, 0, a4, a6]
    return _mpz(abs(256 * poly_resultant(phi, cubic)))


def _gcd_big(a, b):
    if _gmp is not None:
        return _gmp.gcd(a, b)
    return math.gcd(a, b)


def _double_x(A, Eden, a4, a6, R):
    """One exact doubling step on x = A/Eden, kept in lowest terms."""
    A2 = A * A
    E2 = Eden * Eden
    t = A2 - a4 * E2
    N = t * t - ((a6 * A * Eden) * E2 << 3)
    Dn = (Eden * (A * (A2 + a4 * E2) + a6 * Eden * E2)) << 2
    g = _gcd_big(_gcd_big(N, R), _gcd_big(Dn, R))
    if g > 1:
        N //= g
        Dn //= g
    return N, Dn


def _is_torsion(E: CurveModel, P: RationalPoint, blow: float) -> bool:
    # hhat = 0 forces h_W <= 2*Blow, so large points skip the multiple scan.
    if weil_height_interval(P).lo > 2 * blow + 1e-9:
        return False
    return point_order(E, P) is not None


def canonical_height(
    E: CurveModel,
    P: RationalPoint,
    tol: float = DEFAULT_TOL,
    digit_cap: int = DEFAULT_DIGIT_CAP,
) -> HeightEstimate:
    """Certified canonical height of P by exact repeated doubling.

    Doubles until the transported height-difference window divided by 4^k
    is at most tol.  Torsion points return an exact zero.  Raises
    IterationOverflow when a further doubling would push coordinates past
    digit_cap decimal digits before tol is reached.
    """
    if P.is_infinity:
        raise InfinitePoint("canonical height needs an affine point")
    if not on_curve(E, P):
        raise NotOnCurve(f"{P!r} not on the curve")
    if tol <= 0:
        raise ValueError("tol must be positive")
    blow, bup = _window_constants(E)
    if _is_torsion(E, P, blow):
        return _EXACT_ZERO
    width = 2 * max(blow, bup)
    k = 0
    while width / 4**k > tol:
        k += 1
    cap_bits = int(digit_cap * _LOG2_10)
    R = _duplication_resultant(E)
    A = _mpz(P.A)
    Eden = _mpz(P.C) ** 2
    a4, a6 = _mpz(E.a4), _mpz(E.a6)
    for _ in range(k):
        cur = max(A.bit_length(), Eden.bit_length())
        if 4 * cur + 64 > cap_bits:
            raise IterationOverflow(
                f"doubling past {cur} bits would exceed the cap of "
                f"{digit_cap} digits before reaching tol={tol}"
            )
        A, Eden = _double_x(A, Eden, a4, a6, R)
    scale = 4.0**k
    hw = log_interval_of_int(max(abs(A), Eden))
    value = hw.mid / scale
    lo = max((hw.lo - 2 * blow) / scale, 0.0)
    hi = (hw.hi + 2 * bup) / scale
    err = max(value - lo, hi - value, 0.0)
    return HeightEstimate(value=value, error_bound=err, lo=lo, hi=hi)


def _height_interval(E, P, tol, digit_cap=DEFAULT_DIGIT_CAP) -> Interval:
    if P.is_infinity:
        return Interval(0.0, 0.0)
    return canonical_height(E, P, tol, digit_cap).interval


def height_pairing(
    E: CurveModel,
    P: RationalPoint,
    Q: RationalPoint,
    tol: float = DEFAULT_TOL,
) -> Interval:
    """<P, Q> = (hhat(P+Q) - hhat(P) - hhat(Q)) / 2 with propagated error."""
    S = point_add(E, P, Q)
    hs = _height_interval(E, S, tol)
    hp = _height_interval(E, P, tol)
    hq = _height_interval(E, Q, tol)
    return (hs - hp - hq) * 0.5


def gram_matrix(
    E: CurveModel,
    basis: list[RationalPoint] | tuple[RationalPoint, ...],
    tol: float = DEFAULT_TOL,
    digit_cap: int = DEFAULT_DIGIT_CAP,
) -> tuple[tuple[Interval, ...], ...]:
    """Height-pairing Gram matrix of the given points."""
    pts = list(basis)
    for P in pts:
        if P.is_infinity:
            raise InfinitePoint("basis points must be affine")
        if not on_curve(E, P):
            raise NotOnCurve(f"{P!r} not on the curve")
    r = len(pts)
    diag = [_height_interval(E, P, tol, digit_cap) for P in pts]
    G: list[list[Interval]] = [[Interval(0.0, 0.0)] * r for _ in range(r)]
    for i in range(r):
        G[i][i] = diag[i]
    for i in range(r):
        for j in range(i + 1, r):
            S = point_add(E, pts[i], pts[j])
            hs = _height_interval(E, S, tol, digit_cap)
            entry = (hs - diag[i] - diag[j]) * 0.5
            G[i][j] = G[j][i] = entry
    return tuple(tuple(row) for row in G)


def interval_det(G) -> Interval:
    """Leibniz-expansion determinant of a small interval matrix."""
    r = len(G)
    if r == 0:
        return Interval(1.0, 1.0)
    total = Interval(0.0, 0.0)
    for perm in itertools.permutations(range(r)):
        sign = 1
        seen = list(perm)
        for i in range(r):  # count inversions
            for j in range(i + 1, r):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Interval(1.0, 1.0)
        for i in range(r):
            term = term * G[i][perm[i]]
        total = total + (term if sign > 0 else -term)
    return total


def regulator(
    E: CurveModel,
    basis: list[RationalPoint] | tuple[RationalPoint, ...],
    tol: float = DEFAULT_TOL,
    digit_cap: int = DEFAULT_DIGIT_CAP,
) -> Interval:
    """|det| of the height-pairing Gram matrix of the basis.

    Raises DependentPoints when the certified determinant interval does not
    exclude zero.
    """
    G = gram_matrix(E, basis, tol, digit_cap)
    return _regulator_from_gram(G)


def _regulator_from_gram(G) -> Interval:
    det = interval_det(G)
    if det.straddles_zero() or det.hi < 0:
        raise DependentPoints(
            f"Gram determinant interval [{det.lo}, {det.hi}] does not exclude zero"
        )
    return det


def _diameter_from_gram(G) -> Interval:
    r = len(G)
    if r == 0:
        return Interval(0.0, 0.0)
    best = Interval(0.0, 0.0)
    for delta in itertools.product((-1, 0, 1), repeat=r):
        if all(d == 0 for d in delta):
            continue
        q = _bilinear(G, delta)
        best = imax(best, q * 2.0)
    return best


def _bilinear(G, n) -> Interval:
    """n^T G n; exact for the canonical height since it is a quadratic form."""
    r = len(G)
    q = Interval(0.0, 0.0)
    for i in range(r):
        if n[i] == 0:
            continue
        q = q + G[i][i] * (n[i] * n[i])
        for j in range(i + 1, r):
            if n[j]:
                q = q + G[i][j] * (2 * n[i] * n[j])
    return q


def diameter(
    E: CurveModel,
    basis: list[RationalPoint] | tuple[RationalPoint, ...],
    tol: float = DEFAULT_TOL,
) -> Interval:
    """max over sign vectors delta of 2*hhat(sum delta_i P_i)."""
    return _diameter_from_gram(gram_matrix(E, basis, tol))


@dataclass(frozen=True)
class CurveProfile:
    """Everything the bound evaluators need about one curve and basis."""

    curve: CurveModel
    basis: tuple[RationalPoint, ...]
    torsion_order: int
    torsion: tuple[RationalPoint, ...]
    gram: tuple[tuple[Interval, ...], ...]
    regulator: Interval
    diameter: Interval
    count_constant: Interval  # |E_tor| * Omega_r / sqrt(regulator)
    height_offset: Interval  # h_W(j)/8 + h_W(disc)/12 + 5/3
    tol: float

    @property
    def rank(self) -> int:
        return len(self.basis)


def height_offset_interval(E: CurveModel) -> Interval:
    hj = weil_height_rational_interval(E.j_invariant)
    hd = weil_height_rational_interval(Fraction(E.discriminant))
    return hj * 0.125 + hd * (1.0 / 12.0) + Interval.from_value_error(5.0 / 3.0, 3e-16)


def build_profile(
    E: CurveModel,
    basis: list[RationalPoint] | tuple[RationalPoint, ...],
    tol: float = DEFAULT_TOL,
    digit_cap: int = DEFAULT_DIGIT_CAP,
) -> CurveProfile:
    """Assemble rank, torsion, regulator, diameter and the derived constants."""
    basis = tuple(basis)
    G = gram_matrix(E, basis, tol, digit_cap)
    reg = _regulator_from_gram(G) if basis else Interval(1.0, 1.0)
    diam = _diameter_from_gram(G)
    tors = torsion_points(E)
    c = _unit_ball_interval(len(basis)) * len(tors) / reg.sqrt()
    return CurveProfile(
        curve=E,
        basis=basis,
        torsion_order=len(tors),
        torsion=tors,
        gram=G,
        regulator=reg,
        diameter=diam,
        count_constant=c,
        height_offset=height_offset_interval(E),
        tol=tol,
    )


def _lambda_min_lower(G) -> float:
    """Certified positive lower bound for the smallest Gram eigenvalue.

    Combines the Gershgorin row bound with det / ||G||_inf^(r-1); either one
    alone can be useless, together they cover desk-scale bases.  A loose
    bound only inflates the search box, never the result: membership is
    decided by the height filter afterwards.
    """
    r = len(G)
    if r == 1:
        return G[0][0].lo
    gersh = min(
        G[i][i].lo - sum(abs(G[i][j]).hi for j in range(r) if j != i) for i in range(r)
    )
    by_det = -math.inf
    det = interval_det(G)
    if det.lo > 0:
        norm_inf = max(sum(abs(G[i][j]).hi for j in range(r)) for i in range(r))
        if norm_inf > 0:
            by_det = det.lo / norm_inf ** (r - 1)
    return max(gersh, by_det)


def enumerate_points_below(
    profile: CurveProfile,
    T: float,
    slack: float = 1e-9,
    digit_cap: int = DEFAULT_DIGIT_CAP,
) -> list[RationalPoint]:
    """All points with hhat <= T (+slack): basis combinations plus torsion.

    Coefficient vectors range over the box |n_i| <= sqrt(T / lambda_min);
    each candidate is screened by the exact bilinear expansion of hhat in
    the Gram matrix, and candidates whose enclosure straddles the threshold
    are refined by a direct height computation.  Returns exactly one
    representative per point; both P and -P appear, as do all torsion
    translates (the pairing layer handles +- identification).
    """
    E = profile.curve
    threshold = T + slack
    if threshold < 0:
        return []
    out: list[RationalPoint] = []
    if profile.rank == 0:
        return list(profile.torsion)
    lam = _lambda_min_lower(profile.gram)
    if lam <= 0:
        raise DegenerateGram(
            f"no positive lower bound for the smallest Gram eigenvalue (got {lam})"
        )
    N = int(math.sqrt(max(threshold, 0.0) / lam)) + 1
    r = profile.rank

    @lru_cache(maxsize=None)
    def multiple(i: int, n: int) -> RationalPoint:
        return point_scale(E, n, profile.basis[i])

    def exact_point(n: tuple[int, ...]) -> RationalPoint:
        S = INFINITY
        for i, ni in enumerate(n):
            if ni:
                S = point_add(E, S, multiple(i, ni))
        return S

    for n in itertools.product(range(-N, N + 1), repeat=r):
        q = _bilinear(profile.gram, n)
        if q.lo > threshold:
            continue
        if q.hi > threshold:
            # ambiguous: refine with a direct height of the exact point;
            # if that would blow the digit cap, fall back to the midpoint
            S = exact_point(n)
            if S.is_infinity:
                accept = True
            else:
                refine_tol = max(q.width / 8, slack / 4, 1e-9)
                try:
                    h = canonical_height(E, S, refine_tol, digit_cap)
                    if h.hi <= threshold:
                        accept = True
                    elif h.lo > threshold:
                        accept = False
                    else:
                        accept = h.value <= threshold
                except IterationOverflow:
                    accept = q.mid <= threshold
            if not accept:
                continue
        else:
            S = exact_point(n)
        for tor in profile.torsion:
            out.append(point_add(E, S, tor))
    return out


def count_lower_bound(profile: CurveProfile, T: float) -> float:
    """Certified evaluation of c(E) * (T^(r/2) - r*sqrt(d)*T^((r-1)/2)).

    Valid lower bound for #{P : hhat(P) <= T} whenever T > d(E)/4; raises
    HypothesisFailed when that cannot be certified.
    """
    d = profile.diameter
    if not T > d.hi / 4:
        raise HypothesisFailed(f"need T > d/4 = {d.hi / 4}, got T = {T}")
    r = profile.rank
    Ti = Interval.point(float(T))
    main = Ti.pow_half_int(r)
    if r:
        corr = Ti.pow_half_int(r - 1) * d.clamp_nonnegative().sqrt() * r
    else:
        corr = Interval(0.0, 0.0)
    return (profile.count_constant * (main - corr)).lo


def count_lower_bound_subset(
    G_order: int,
    points: list[RationalPoint] | tuple[RationalPoint, ...],
    E: CurveModel,
    T: float,
    tol: float = DEFAULT_TOL,
) -> float:
    """Coarser count bound from any m independent points.

    |G| / sqrt(hhat(P_m)^m) * Omega_m * (T^(m/2) - m^2 sqrt(2 hhat(P_m))
    T^((m-1)/2)) with P_m the point of largest canonical height; valid for
    T > d(B)/4.
    """
    if G_order < 1:
        raise ValueError("torsion subgroup order must be positive")
    pts = list(points)
    if not pts:
        raise ValueError("need at least one point")
    G = gram_matrix(E, pts, tol)
    _regulator_from_gram(G)  # raises DependentPoints when not independent
    d = _diameter_from_gram(G)
    if not T > d.hi / 4:
        raise HypothesisFailed(f"need T > d(B)/4 = {d.hi / 4}, got T = {T}")
    m = len(pts)
    hm = imax(*(G[i][i] for i in range(m))).clamp_nonnegative()
    Ti = Interval.point(float(T))
    main = Ti.pow_half_int(m)
    corr = Ti.pow_half_int(m - 1) * (hm * 2.0).sqrt() * (m * m)
    lead = _unit_ball_interval(m) * G_order / hm.pow_int(m).sqrt()
    return (lead * (main - corr)).lo
