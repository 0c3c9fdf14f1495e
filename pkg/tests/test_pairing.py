import random
from fractions import Fraction

import pytest

from classpair.curves import (
    TwistPoint,
    curve_new,
    family_discriminant,
    family_twist_point,
    point,
    RationalPoint,
)
from classpair.errors import (
    DegeneratePair,
    InfinitePoint,
    InvalidEll,
    NotOnCurve,
    ParityViolation,
)
from classpair.pairing import (
    inequivalence_guard,
    pair,
    pair_form,
    pair_point_set,
    pairing_context,
)
from classpair.qforms import class_number, equivalent
from classpair.curves import INFINITY

from _support import FUZZ_CURVES, fuzz_points, fuzz_twists

E49 = curve_new(-4, 9)
Q24 = TwistPoint(-3, 1, 1, 24)


def test_worked_example_contexts():
    ctx1 = pairing_context(E49, 24, point(0, 3), Q24)
    assert (ctx1.alpha, ctx1.G, ctx1.Hg) == (3, 1, 1)
    ctx2 = pairing_context(E49, 24, point(-2, 3), Q24)
    assert (ctx2.alpha, ctx2.G) == (1, 1)
    # ell = 2 is a valid choice for both
    assert pairing_context(E49, 24, point(0, 3), Q24, ell=2).ell == 2


def test_worked_example_forms():
    F1 = pair(E49, 24, point(0, 3), Q24, ell=2)
    F2 = pair(E49, 24, point(-2, 3), Q24, ell=2)
    assert F1.coefficients() == (3, 12, 14)
    assert F2.coefficients() == (1, 8, 22)
    assert F1.discriminant == -24 and F2.discriminant == -24
    assert not equivalent(F1, F2)
    assert class_number(24) == 2


def test_default_ell_equivalent_to_explicit_choice():
    Fdef = pair(E49, 24, point(0, 3), Q24)
    assert equivalent(Fdef, pair(E49, 24, point(0, 3), Q24, ell=2))


def test_invalid_ell_rejected():
    with pytest.raises(InvalidEll):
        pairing_context(E49, 24, point(0, 3), Q24, ell=1)


def test_degenerate_pair():
    # x(Q) = x(P) forces alpha = 0; such a Q cannot lie on a positive-D twist,
    # and the degeneracy is reported before the membership check
    with pytest.raises(DegeneratePair):
        pairing_context(E49, 36, point(2, 3), TwistPoint(2, 1, 1, 36))


def test_parity_violation():
    with pytest.raises(ParityViolation):
        pairing_context(E49, 39, point(0, 3), TwistPoint(-4, 1, 1, 39))


def test_odd_discriminant_pairing():
    # f(-4) = -39 on this curve: v = 2 gives the odd twist parameter D = 39
    Q = TwistPoint(-4, 2, 1, 39)
    F = pair(E49, 39, point(0, 3), Q)
    assert F.discriminant == -39
    assert F.b % 2 == 1


def test_infinity_and_off_curve_rejected():
    with pytest.raises(InfinitePoint):
        pairing_context(E49, 24, INFINITY, Q24)
    with pytest.raises(NotOnCurve):
        pairing_context(E49, 24, RationalPoint(1, 1, 1), Q24)
    with pytest.raises(NotOnCurve):
        pairing_context(E49, 20, point(0, 3), TwistPoint(-3, 1, 1, 20))
    with pytest.raises(ValueError):
        pairing_context(E49, 25, point(0, 3), Q24)  # D mismatch


def test_two_torsion_point_pairs():
    E = curve_new(-1, 0)
    Q = TwistPoint(-2, 1, 1, 24)  # 4 f(-2) = -24
    F = pair(E, 24, point(1, 0), Q)
    assert F.discriminant == -24
    F0 = pair(E, 24, point(0, 0), Q)
    assert F0.discriminant == -24


def test_big_t_regression_c_greater_one():
    # C = 3 point paired against a family twist point: exercises the branch
    # where the congruence pins ell only modulo C^3 v
    E = curve_new(-16, 1)
    t = 10**14
    D = family_discriminant(E, t)
    Q = family_twist_point(E, t)
    P = RationalPoint(-14, 127, 3)
    ctx = pairing_context(E, D, P, Q)
    F = pair_form(ctx)
    assert F.discriminant == -D
    shifted = pairing_context(E, D, P, Q, ell=ctx.ell + ctx.ell_period)
    assert equivalent(F, pair_form(shifted))


def test_inequivalence_guard():
    assert inequivalence_guard(3, 1, 24)
    assert not inequivalence_guard(3, 3, 24)
    assert not inequivalence_guard(Fraction(7), Fraction(5), 24)  # product too large
    # boundary a1*a2 = D/4 gives no guarantee: (1,0,5) and (5,0,1) at D = 20
    # are equivalent, so the guard must stay silent there
    assert not inequivalence_guard(1, 5, 20)
    with pytest.raises(ValueError):
        inequivalence_guard(0, 1, 24)


def test_pair_point_set_worked_example():
    forms = pair_point_set(E49, 24, Q24, [point(0, 3), point(-2, 3)])
    assert len(forms) == 2 == class_number(24)
    assert [f.coefficients() for f in forms] == [(1, 0, 6), (2, 0, 3)]


def test_pair_point_set_plus_minus_collapse():
    P = point(0, 3)
    forms = pair_point_set(E49, 24, Q24, [P, -P])
    assert len(forms) == 1


def test_pair_point_set_empty_and_skips():
    assert pair_point_set(E49, 24, Q24, []) == []
    # infinity is skipped silently
    forms = pair_point_set(E49, 24, Q24, [INFINITY, point(0, 3)])
    assert len(forms) == 1


def _fuzz_cases(n_cases, seed):
    rng = random.Random(seed)
    cases = []
    pools = []
    for E in FUZZ_CURVES:
        pools.append((E, fuzz_points(E, rng, want=10), fuzz_twists(E, rng, want=8)))
    while len(cases) < n_cases:
        E, pts, twists = pools[rng.randrange(len(pools))]
        if not pts or not twists:
            continue
        P = rng.choice(pts)
        Q = rng.choice(twists)
        if abs(P.A * Q.w**2 - Q.u * P.C**2) == 0:
            continue
        cases.append((E, P, Q))
    return cases


def run_pairing_fuzz(n_cases, seed=20240817):
    """Shared fuzz driver; also used by the acceptance suite."""
    failures = 0
    guard_checked = 0
    prev = {}
    for E, P, Q in _fuzz_cases(n_cases, seed):
        ctx = pairing_context(E, Q.D, P, Q)
        F = pair_form(ctx)
        ok = (
            isinstance(F.a, int)
            and isinstance(F.b, int)
            and isinstance(F.c, int)
            and F.discriminant == -Q.D
            and F.a > 0
        )
        shifted = pair_form(pairing_context(E, Q.D, P, Q, ell=ctx.ell + ctx.ell_period))
        ok = ok and equivalent(F, shifted)
        down = pair_form(pairing_context(E, Q.D, P, Q, ell=ctx.ell - ctx.ell_period))
        ok = ok and equivalent(F, down)
        if not ok:
            failures += 1
            continue
        key = (E.a4, E.a6, Q.D)
        if key in prev:
            a1, F1 = prev[key]
            a2 = Fraction(ctx.alpha, ctx.G)
            if inequivalence_guard(a1, a2, Q.D):
                guard_checked += 1
                if equivalent(F1, F):
                    failures += 1
        prev[key] = (Fraction(ctx.alpha, ctx.G), F)
    return failures, guard_checked


def test_pairing_fuzz_small():
    failures, guard_checked = run_pairing_fuzz(250)
    assert failures == 0
    assert guard_checked > 0
