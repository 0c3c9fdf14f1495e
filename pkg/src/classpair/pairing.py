"""Pairing rational points with a twist point into quadratic form classes.

Given P = (A/C^2, B/C^3) on E and an integral-model point Q = (u/w^2, v/w^3)
on the -D twist, the pairing produces the positive definite integral form

    F(X, Y) = (alpha/G) X^2
            + (2 w^3 B + ell * alpha/G) / (C^3 v) XY
            + ((2 w^3 B + ell * alpha/G)^2 + C^6 v^2 D) / (4 C^6 v^2 alpha/G) Y^2

of discriminant exactly -D, where alpha = |A w^2 - u C^2|,
G = gcd(alpha, C^6 v^2) and ell solves an explicit congruence making every
coefficient integral.  Counting SL2(Z)-inequivalent forms obtained this way
bounds the class number h(-D) from below.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .curves import CurveModel, RationalPoint, TwistPoint, on_curve, twist_contains
from .errors import (
    DegeneratePair,
    InfinitePoint,
    InvalidDiscriminant,
    InvalidEll,
    NotOnCurve,
    PairingConsistencyError,
    ParityViolation,
)
from .qforms import QuadraticForm, reduce_form


@dataclass(frozen=True)
class PairingContext:
    """All integer data entering the paired form for one (P, Q).

    ell_modulus is the stride between consecutive solutions of the defining
    congruence; ell_period = 2|C^3 v| is the shift under which every
    certified ell stays certified and the form class is unchanged.
    """

    curve: CurveModel
    D: int
    P: RationalPoint
    Q: TwistPoint
    alpha: int
    G: int
    Hg: int  # gcd(2 w^3 B, C^3 v); "H" in the construction
    ell: int
    ell_modulus: int
    ell_period: int

    @property
    def leading(self) -> int:
        return self.alpha // self.G


def _solve_congruence(a: int, rhs: int, m: int) -> tuple[int, int]:
    """Least k >= 0 with a*k = rhs (mod m), plus the modulus of the solution.

    gcd(a, m) must divide rhs; here gcd(a, m) is 1 or 2 because a is coprime
    to the odd part of m by construction.
    """
    g = gcd(a, m)
    if rhs % g:
        raise PairingConsistencyError(
            f"congruence {a}*k = {rhs} (mod {m}) unsolvable; gcd {g} does not divide rhs"
        )
    m_red = m // g
    if m_red == 1:
        return 0, 1
    k = (rhs // g) * pow(a // g, -1, m_red) % m_red
    return k, m_red


def _certify_ell(ell: int, a: int, B: int, C: int, v: int, w: int, D: int) -> bool:
    """Exact check that ell makes both form coefficients integral."""
    cv = C**3 * v
    num_b = 2 * w**3 * B + ell * a
    if num_b % cv:
        return False
    b = num_b // cv
    if (b - D) % 2:
        return False
    return (b * b + D) % (4 * a) == 0


def pairing_context(
    E: CurveModel,
    D: int,
    P: RationalPoint,
    Q: TwistPoint,
    ell: int | None = None,
) -> PairingContext:
    """Compute alpha, G, H and a valid ell for the pair (P, Q).

    The congruence for k is
        (alpha/G) * k = -2 w^3 B / H - C^3 v D / H   (mod 2 C^3 v / H),
    solved by inverting alpha/G when it is odd, or alpha/(2G) modulo
    C^3 v / H when it is even.  In the even branch the congruence pins
    ell = H*k only modulo C^3 v while integrality of the last coefficient
    is a condition modulo 2 C^3 v, so both candidate residues are checked
    exactly and the least nonnegative certified one is taken.  An explicit
    ell is accepted whenever it passes the same certification.
    """
    if P.is_infinity:
        raise InfinitePoint("cannot pair the point at infinity")
    if not on_curve(E, P):
        raise NotOnCurve(f"{P!r} is not on the curve")
    if Q.D != D:
        raise ValueError(f"twist point carries D={Q.D}, expected {D}")
    if D % 4 not in (0, 3):
        # -D = b^2 - 4ac forces -D = 0 or 1 mod 4; no integral form otherwise
        raise InvalidDiscriminant(f"-{D} is not a quadratic form discriminant")
    A, B, C = P.A, P.B, P.C
    u, v, w = Q.u, Q.v, Q.w
    alpha = abs(A * w * w - u * C * C)
    if alpha == 0:
        raise DegeneratePair("alpha = 0: x(P) and x(Q) coincide")
    if D % 2 == 1 and v % 2 == 1:
        raise ParityViolation("v must be even when -D is odd")
    if not twist_contains(E, Q):
        raise NotOnCurve(f"{Q!r} is not on the -{D} twist")
    G = gcd(alpha, C**6 * v * v)
    a = alpha // G
    cv = C**3 * v
    Hg = gcd(2 * w**3 * B, cv)  # nonnegative; positive since v != 0
    rhs = (-2 * w**3 * B - cv * D) // Hg
    k, k_modulus = _solve_congruence(a, rhs, 2 * abs(cv) // Hg)
    ell_modulus = Hg * k_modulus
    period = 2 * abs(cv)
    base = Hg * k % period
    if ell is None:
        for j in range(period // ell_modulus):
            cand = (base + j * ell_modulus) % period
            if _certify_ell(cand, a, B, C, v, w, D):
                ell_val = cand
                break
        else:
            raise PairingConsistencyError(
                f"no certified ell among congruence solutions for P={P!r}, Q={Q!r}"
            )
    else:
        if not _certify_ell(ell, a, B, C, v, w, D):
            raise InvalidEll(f"ell={ell} does not make the paired form integral")
        ell_val = ell
    return PairingContext(
        curve=E,
        D=D,
        P=P,
        Q=Q,
        alpha=alpha,
        G=G,
        Hg=Hg,
        ell=ell_val,
        ell_modulus=ell_modulus,
        ell_period=period,
    )


def pair_form(ctx: PairingContext) -> QuadraticForm:
    """The paired form, with exact certification of its contract.

    Integrality of all three coefficients, discriminant exactly -D and
    positive definiteness are rechecked; a failure means the context was
    built outside its preconditions and raises PairingConsistencyError.
    """
    A, B, C = ctx.P.A, ctx.P.B, ctx.P.C
    v, w, D = ctx.Q.v, ctx.Q.w, ctx.D
    a = ctx.leading
    cv = C**3 * v
    num_b = 2 * w**3 * B + ctx.ell * a
    b, rem = divmod(num_b, cv)
    if rem:
        raise PairingConsistencyError(f"middle coefficient {num_b}/{cv} not integral")
    num_c = num_b * num_b + C**6 * v * v * D
    den_c = 4 * C**6 * v * v * a
    c, rem = divmod(num_c, den_c)
    if rem:
        raise PairingConsistencyError(f"last coefficient {num_c}/{den_c} not integral")
    F = QuadraticForm(a, b, c)
    if F.discriminant != -D:
        raise PairingConsistencyError(
            f"discriminant {F.discriminant} != -{D} for {F!r}"
        )
    if b % 2 != D % 2:
        raise PairingConsistencyError(f"middle coefficient parity mismatch for {F!r}")
    if a <= 0:
        raise PairingConsistencyError(f"leading coefficient {a} not positive")
    return F


def pair(
    E: CurveModel,
    D: int,
    P: RationalPoint,
    Q: TwistPoint,
    ell: int | None = None,
) -> QuadraticForm:
    """pairing_context followed by pair_form."""
    return pair_form(pairing_context(E, D, P, Q, ell))


def inequivalence_guard(
    a1: Fraction | int, a2: Fraction | int, D: int
) -> bool:
    """True when the leading coefficients alone certify inequivalence.

    Equivalent paired forms force a1 = a2 or a1*a2 >= D/4 (the boundary
    a1*a2 = D/4 is attained, e.g. by the swap of an (a, 0, c) form), so
    a1 != a2 together with a1*a2 strictly below D/4 is a proof of
    inequivalence.  False is no statement either way.
    """
    a1, a2 = Fraction(a1), Fraction(a2)
    if a1 <= 0 or a2 <= 0:
        raise ValueError("leading coefficients must be positive")
    return a1 != a2 and a1 * a2 < Fraction(D, 4)


def pair_point_set(
    E: CurveModel,
    D: int,
    Q: TwistPoint,
    points: list[RationalPoint] | tuple[RationalPoint, ...],
) -> list[QuadraticForm]:
    """Distinct reduced form classes obtained by pairing each point with Q.

    Points at infinity and degenerate pairs (alpha = 0) are skipped.  The
    length of the result is a certified lower bound for h(-D) when -D is
    fundamental, and for the form class number of discriminant -D otherwise.
    """
    classes: set[tuple[int, int, int]] = set()
    for P in points:
        if P.is_infinity:
            continue
        try:
            ctx = pairing_context(E, D, P, Q)
        except DegeneratePair:
            continue
        reduced, _ = reduce_form(pair_form(ctx))
        classes.add(reduced.coefficients())
    return [QuadraticForm(*t) for t in sorted(classes)]
