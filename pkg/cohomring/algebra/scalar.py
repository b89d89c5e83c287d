"""Exact scalars: rationals and elements of the cyclotomic field Q(zeta_k)."""

from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple, Union

from sympy import Symbol, cyclotomic_poly, totient

from cohomring.core.exceptions import FieldMismatchError

_x = Symbol("x")

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_coefficients(k: int) -> Tuple[int, ...]:
    """Coefficients of Phi_k, lowest power first. Phi_k is monic."""
    poly = cyclotomic_poly(k, _x, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def euler_phi(k: int) -> int:
    return int(totient(k))


def _reduce(coeffs: Sequence[Fraction], k: int) -> Tuple[Fraction, ...]:
    """Remainder of a power-basis vector modulo Phi_k."""
    phi = cyclotomic_coefficients(k)
    width = len(phi) - 1
    rem = [Fraction(c) for c in coeffs]
    for top in range(len(rem) - 1, width - 1, -1):
        lead = rem[top]
        if lead == 0:
            continue
        shift = top - width
        for i, c in enumerate(phi):
            if c:
                rem[shift + i] -= lead * c
    rem = rem[:width] + [Fraction(0)] * max(0, width - len(rem))
    return tuple(rem)


class Cyclotomic:
    """An element of Q(zeta_k) in the power basis 1, zeta, ..., zeta^(phi(k)-1).

    Instances are immutable. Rationals mix freely with any k; two
    cyclotomic values only combine when their orders agree.
    """

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Sequence[Rational]):
        if k < 1:
            raise ValueError(f"cyclotomic order must be positive, got {k}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", _reduce(coeffs, k))

    def __setattr__(self, name, value):
        raise AttributeError("Cyclotomic values are immutable")

    @classmethod
    def zeta(cls, k: int, power: int = 1) -> "Cyclotomic":
        """zeta_k ** power, any integer power."""
        power %= k
        return cls(k, [0] * power + [1])

    @classmethod
    def rational(cls, k: int, value: Rational) -> "Cyclotomic":
        return cls(k, [value])

    # coercion

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.k != self.k:
                raise FieldMismatchError(
                    f"cannot combine elements of Q(zeta_{self.k}) and Q(zeta_{other.k})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.k, [other])
        return NotImplemented

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.k, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.k, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic(self.k, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prod = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return Cyclotomic(self.k, prod)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic(self.k, [1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "Cyclotomic":
        """Solve self * y = 1 in the power basis."""
        from cohomring.algebra.linalg import solve

        if self == 0:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        width = len(self.coeffs)
        columns = []
        for j in range(width):
            columns.append((self * Cyclotomic.zeta(self.k, j)).coeffs)
        matrix = [[columns[j][i] for j in range(width)] for i in range(width)]
        rhs = [Fraction(1)] + [Fraction(0)] * (width - 1)
        solution = solve(matrix, rhs)
        return Cyclotomic(self.k, solution)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    # comparison

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.k == other.k and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*z{self.k}")
            else:
                terms.append(f"{c}*z{self.k}^{i}")
        return " + ".join(terms) if terms else "0"


Scalar = Union[Fraction, Cyclotomic]


def as_scalar(value) -> Scalar:
    """Normalize ints and rational strings to Fraction; leave Cyclotomic alone."""
    if isinstance(value, Cyclotomic):
        return value
    return Fraction(value)


def scalar_mul(a, b) -> Scalar:
    """Exact product; mixed-order cyclotomic operands raise FieldMismatchError."""
    a, b = as_scalar(a), as_scalar(b)
    if isinstance(b, Cyclotomic) and not isinstance(a, Cyclotomic):
        return b * a
    return a * b


def simplify(value: Scalar) -> Scalar:
    """Collapse a rational-valued Cyclotomic back to a Fraction."""
    if isinstance(value, Cyclotomic) and value.is_rational():
        return value.coeffs[0]
    return value
