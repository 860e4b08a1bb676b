from fractions import Fraction

import pytest

from isotwirl import exactlin


def test_inverse_roundtrip():
    A = [[Fraction(2), Fraction(1)], [Fraction(7), Fraction(4)]]
    Ainv = exactlin.inverse(A)
    assert exactlin.mat_eq(exactlin.mat_mul(A, Ainv), exactlin.identity(2))


def test_inverse_raises_on_singular():
    A = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    with pytest.raises(exactlin.SingularGram):
        exactlin.inverse(A)


def test_rank():
    A = [[Fraction(1), Fraction(2), Fraction(3)],
         [Fraction(2), Fraction(4), Fraction(6)],
         [Fraction(0), Fraction(1), Fraction(1)]]
    assert exactlin.rank(A) == 2


def test_pinv_psd_moore_penrose_conditions():
    # rank-1 PSD: A = v v^T
    v = [Fraction(1), Fraction(2), Fraction(-1)]
    A = [[a * b for b in v] for a in v]
    P, full = exactlin.pinv_psd(A)
    assert not full
    assert exactlin.mat_eq(exactlin.mat_mul(A, exactlin.mat_mul(P, A)), A)
    assert exactlin.mat_eq(exactlin.mat_mul(P, exactlin.mat_mul(A, P)), P)
    AP = exactlin.mat_mul(A, P)
    assert exactlin.mat_eq(AP, exactlin.transpose(AP))


def test_pinv_psd_equals_inverse_when_full_rank():
    A = [[Fraction(5), Fraction(1)], [Fraction(1), Fraction(3)]]
    P, full = exactlin.pinv_psd(A)
    assert full
    assert exactlin.mat_eq(P, exactlin.inverse(A))


def test_mat_vec():
    A = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    assert exactlin.mat_vec(A, [Fraction(1), Fraction(1)]) == [Fraction(3), Fraction(7)]
