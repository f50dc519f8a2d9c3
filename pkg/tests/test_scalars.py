from fractions import Fraction

import pytest

from supergeom.scalars import I, ONE, QI, ZERO


def test_basic_arithmetic():
    a = QI(Fraction(1, 2), Fraction(3))
    b = QI(2, -1)
    assert a + b == QI(Fraction(5, 2), 2)
    assert a - b == QI(Fraction(-3, 2), 4)
    assert a * b == QI(4, Fraction(11, 2))
    assert -a == QI(Fraction(-1, 2), -3)


def test_i_squares_to_minus_one():
    assert I * I == QI(-1)
    assert I ** 4 == ONE


def test_division_is_exact():
    a = QI(1, 1)
    assert a / a == ONE
    assert (a * a) / a == a
    assert QI(2) / QI(3) == QI(Fraction(2, 3))
    assert ONE / I == -I


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_equality_with_plain_numbers():
    assert QI(3) == 3
    assert QI(Fraction(1, 2)) == Fraction(1, 2)
    assert QI(0, 1) != 1


def test_str_forms():
    assert str(QI(3)) == "3"
    assert str(QI(Fraction(-1, 2))) == "-1/2"
    assert str(QI(0, 1)) == "i"
    assert str(QI(0, -1)) == "-i"
    assert str(QI(0, 2)) == "2*i"
    assert str(QI(1, 1)) == "1+i"
    assert str(QI(Fraction(3, 2), -2)) == "3/2-2*i"


def test_pow_negative():
    assert QI(2) ** -2 == QI(Fraction(1, 4))
