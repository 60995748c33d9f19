"""
Exact arithmetic in the field Q(sqrt 2).
Elements are q1 + q2 * sqrt(2) with rational q1, q2.
They serve as the evaluable domain of additive functions that are additive but not linear
(see `obeq.core.handles.LatticeAdditive`).
"""

import fractions
import functools
import math

SQRT2 = math.sqrt(2.0)

@functools.total_ordering
class QuadraticSurd(object):
    """
    An exact number q1 + q2 * sqrt(2).
    Supports +, -, *, / (with other surds, ints and Fractions), comparison, and float().
    """

    __slots__ = ('_rational', '_irrational')

    def __init__(self, rational = 0, irrational = 0):
        self._rational = fractions.Fraction(rational)
        self._irrational = fractions.Fraction(irrational)

    @property
    def rational(self):
        return self._rational

    @property
    def irrational(self):
        return self._irrational

    def conjugate(self):
        return QuadraticSurd(self._rational, -self._irrational)

    def norm(self):
        """
        q1^2 - 2 q2^2, which is zero only for zero (sqrt 2 is irrational).
        """

        return self._rational ** 2 - 2 * self._irrational ** 2

    def sign(self):
        """
        The exact sign (-1, 0, 1), decided without floating point.
        """

        a = self._rational
        b = self._irrational

        if (a == 0 and b == 0):
            return 0

        if (a >= 0 and b >= 0):
            return 1

        if (a <= 0 and b <= 0):
            return -1

        # Opposite signs: compare a^2 with 2 b^2.
        if (a > 0):
            return 1 if (a * a > 2 * b * b) else -1

        return 1 if (2 * b * b > a * a) else -1

    def __add__(self, other):
        other = _coerce(other)
        if (other is NotImplemented):
            return other

        return QuadraticSurd(self._rational + other._rational,
                self._irrational + other._irrational)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self._rational, -self._irrational)

    def __sub__(self, other):
        other = _coerce(other)
        if (other is NotImplemented):
            return other

        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if (other is NotImplemented):
            return other

        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if (other is NotImplemented):
            return other

        a, b = self._rational, self._irrational
        c, d = other._rational, other._irrational

        return QuadraticSurd(a * c + 2 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if (other is NotImplemented):
            return other

        norm = other.norm()
        if (norm == 0):
            raise ZeroDivisionError('Division by zero in Q(sqrt 2).')

        product = self * other.conjugate()
        return QuadraticSurd(product._rational / norm, product._irrational / norm)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if (other is NotImplemented):
            return other

        return other / self

    def __eq__(self, other):
        other = _coerce(other)
        if (other is NotImplemented):
            return False

        return (self._rational == other._rational and self._irrational == other._irrational)

    def __lt__(self, other):
        other = _coerce(other)
        if (other is NotImplemented):
            return other

        return (self - other).sign() < 0

    def __hash__(self):
        return hash((self._rational, self._irrational))

    def __float__(self):
        return float(self._rational) + float(self._irrational) * SQRT2

    def __repr__(self):
        return 'QuadraticSurd(%s, %s)' % (self._rational, self._irrational)

    def __str__(self):
        return '%s + %s*sqrt(2)' % (self._rational, self._irrational)

def _coerce(value):
    if (isinstance(value, QuadraticSurd)):
        return value

    if (isinstance(value, (int, fractions.Fraction))):
        return QuadraticSurd(value, 0)

    return NotImplemented
