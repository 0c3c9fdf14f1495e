import random
from fractions import Fraction

import pytest

from classpair.errors import InvalidDiscriminant, NotFundamental, NotPositiveDefinite
from classpair.qforms import (
    IDENTITY,
    FundamentalDecomposition,
    QuadraticForm,
    _count_numpy,
    _form_triples,
    class_number,
    equivalent,
    fundamental_decomposition,
    hurwitz_class_number,
    hurwitz_class_number_direct,
    is_fundamental,
    is_reduced,
    kronecker_chi,
    reduce_form,
    reduced_forms,
    transform,
    unit_weight,
)

T_SHIFT = ((1, 1), (0, 1))
S_FLIP = ((0, -1), (1, 0))


def _det(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def _random_posdef_form(rng):
    while True:
        a = rng.randrange(1, 25)
        b = rng.randrange(-40, 41)
        c = rng.randrange(1, 40)
        F = QuadraticForm(a, b, c)
        if F.is_positive_definite:
            return F


def _random_unimodular(rng, steps=6):
    M = IDENTITY
    for _ in range(steps):
        if rng.random() < 0.5:
            k = rng.randrange(-3, 4)
            M = (
                (M[0][0], M[0][0] * k + M[0][1]),
                (M[1][0], M[1][0] * k + M[1][1]),
            )
        else:
            M = ((-M[0][1], M[0][0]), (-M[1][1], M[1][0]))
    return M


def test_reduce_worked_examples():
    red, M = reduce_form(QuadraticForm(3, 12, 14))
    assert red == QuadraticForm(2, 0, 3)
    assert transform(QuadraticForm(3, 12, 14), M) == red
    assert _det(M) == 1

    red, _ = reduce_form(QuadraticForm(1, 8, 22))
    assert red == QuadraticForm(1, 0, 6)

    already = QuadraticForm(1, 0, 6)
    red, M = reduce_form(already)
    assert red == already and M == IDENTITY


def test_reduce_fuzz_certified():
    rng = random.Random(99)
    for _ in range(400):
        F = _random_posdef_form(rng)
        red, M = reduce_form(F)
        assert is_reduced(red)
        assert red.discriminant == F.discriminant
        assert transform(F, M) == red
        assert _det(M) == 1
        again, M2 = reduce_form(red)
        assert again == red and M2 == IDENTITY


def test_reduce_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        reduce_form(QuadraticForm(1, 5, 1))
    with pytest.raises(NotPositiveDefinite):
        reduce_form(QuadraticForm(-1, 0, -6))


def test_equivalence_relation_and_invariance():
    rng = random.Random(5)
    assert not equivalent(QuadraticForm(3, 12, 14), QuadraticForm(1, 8, 22))
    assert not equivalent(QuadraticForm(1, 0, 6), QuadraticForm(1, 1, 6))  # disc differ
    for _ in range(100):
        F = _random_posdef_form(rng)
        G = transform(F, _random_unimodular(rng))
        assert equivalent(F, G)
        assert equivalent(G, F)


def test_reduced_forms_examples():
    assert [f.coefficients() for f in reduced_forms(24)] == [(1, 0, 6), (2, 0, 3)]
    assert [f.coefficients() for f in reduced_forms(3)] == [(1, 1, 1)]
    assert sorted(f.coefficients() for f in reduced_forms(23)) == [
        (1, 1, 6),
        (2, -1, 3),
        (2, 1, 3),
    ]
    for f in reduced_forms(163):
        assert is_reduced(f)


def test_class_number_examples():
    assert class_number(3) == 1
    assert class_number(4) == 1
    assert class_number(24) == 2
    assert class_number(163) == 1
    with pytest.raises(InvalidDiscriminant):
        class_number(5)
    with pytest.raises(InvalidDiscriminant):
        class_number(-3)


def test_numpy_count_matches_python():
    for D in list(range(3, 400)) + [4000, 40003, 123456 * 4]:
        if D % 4 not in (0, 3):
            continue
        assert _count_numpy(D) == len(_form_triples(D))


def test_is_fundamental():
    assert is_fundamental(24)
    assert is_fundamental(4)
    assert is_fundamental(7)
    assert is_fundamental(8)
    assert not is_fundamental(12)
    assert not is_fundamental(16)
    assert not is_fundamental(27)
    assert not is_fundamental(0)
    # brute check: -D fundamental iff every decomposition has conductor 1
    for D in range(3, 300):
        if D % 4 not in (0, 3):
            assert not is_fundamental(D)
            continue
        dec = fundamental_decomposition(D)
        assert is_fundamental(D) == (dec.f == 1)


def test_fundamental_decomposition_examples():
    assert fundamental_decomposition(12) == FundamentalDecomposition(3, 2)
    assert fundamental_decomposition(24) == FundamentalDecomposition(24, 1)
    assert fundamental_decomposition(75) == FundamentalDecomposition(3, 5)
    assert fundamental_decomposition(16) == FundamentalDecomposition(4, 2)
    for D in range(3, 500):
        if D % 4 not in (0, 3):
            continue
        dec = fundamental_decomposition(D)
        assert dec.D0 * dec.f * dec.f == D
        assert is_fundamental(dec.D0)


def test_kronecker_chi():
    assert kronecker_chi(4, 3) == -1
    assert kronecker_chi(3, 2) == -1
    assert kronecker_chi(24, 1) == 1
    assert kronecker_chi(7, 7) == 0
    with pytest.raises(NotFundamental):
        kronecker_chi(12, 5)


def test_unit_weight():
    assert unit_weight(3) == 3
    assert unit_weight(4) == 2
    assert unit_weight(7) == 1


def test_hurwitz_examples():
    assert hurwitz_class_number(3) == Fraction(1, 3)
    assert hurwitz_class_number(4) == Fraction(1, 2)
    assert hurwitz_class_number(12) == Fraction(4, 3)
    assert hurwitz_class_number(16) == Fraction(3, 2)
    assert hurwitz_class_number(23) == 3


def test_hurwitz_formula_matches_direct_count_small():
    for D in range(3, 800):
        if D % 4 in (0, 3):
            assert hurwitz_class_number(D) == hurwitz_class_number_direct(D), D


def test_hurwitz_fundamental_relation():
    # for fundamental -D with D > 4: H(-D) = h(-D)
    for D in range(5, 400):
        if D % 4 in (0, 3) and is_fundamental(D):
            assert hurwitz_class_number(D) == class_number(D)
