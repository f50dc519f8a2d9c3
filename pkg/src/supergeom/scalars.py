"""Exact Gaussian-rational scalars.

QI models the field Q(i): a rational real part plus a rational imaginary
part, both plain fractions.Fraction.  Every operation is exact, so rank
computations and ideal-membership answers downstream are certificates,
never epsilon judgements.
"""

from __future__ import annotations

from fractions import Fraction

_F0 = Fraction(0)
_F1 = Fraction(1)


class QI:
    """An element a + b*i of Q(i) with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def of(value) -> "QI":
        if isinstance(value, QI):
            return value
        return QI(value)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other) -> "QI":
        other = QI.of(other)
        return QI(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "QI":
        other = QI.of(other)
        return QI(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "QI":
        return QI.of(other) - self

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __mul__(self, other) -> "QI":
        other = QI.of(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return QI(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "QI":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "QI":
        return self * QI.of(other).inverse()

    def __rtruediv__(self, other) -> "QI":
        return QI.of(other) * self.inverse()

    def __pow__(self, k: int) -> "QI":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "QI":
        return QI(self.re, -self.im)

    def __repr__(self) -> str:
        return f"QI({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        # Expression form accepted back by the source parser.
        if not self.im:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}*i"
        if not self.re:
            return imag
        sep = "+" if self.im > 0 else "-"
        mag = imag.lstrip("-")
        return f"{self.re}{sep}{mag}"


ZERO = QI(_F0, _F0)
ONE = QI(_F1, _F0)
I = QI(_F0, _F1)
