"""Truncated power series in t, where t tracks cohomological degree."""

from fractions import Fraction
from typing import Iterable, List, Optional, Sequence


class PoincareSeries:
    """Coefficients c_0..c_N of a power series, exact and immutable."""

    __slots__ = ("truncation", "coeffs")

    def __init__(self, truncation: int, coeffs: Iterable = ()):
        if truncation < 0:
            raise ValueError(f"truncation must be non-negative, got {truncation}")
        values = [Fraction(c) for c in coeffs][: truncation + 1]
        values += [Fraction(0)] * (truncation + 1 - len(values))
        object.__setattr__(self, "truncation", truncation)
        object.__setattr__(self, "coeffs", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("PoincareSeries is immutable")

    @classmethod
    def zero(cls, truncation: int) -> "PoincareSeries":
        return cls(truncation)

    @classmethod
    def one(cls, truncation: int) -> "PoincareSeries":
        return cls(truncation, [1])

    @classmethod
    def monomial(cls, truncation: int, degree: int, coeff=1) -> "PoincareSeries":
        values = [0] * (truncation + 1)
        if 0 <= degree <= truncation:
            values[degree] = coeff
        return cls(truncation, values)

    @classmethod
    def geometric(cls, degree: int, truncation: int) -> "PoincareSeries":
        """1/(1 - t^degree)."""
        if degree <= 0:
            raise ValueError(f"geometric series needs a positive degree, got {degree}")
        return cls(truncation, [1 if d % degree == 0 else 0 for d in range(truncation + 1)])

    @classmethod
    def from_polynomial(cls, truncation: int, coeffs: Sequence) -> "PoincareSeries":
        return cls(truncation, coeffs)

    # access

    def __getitem__(self, degree: int) -> Fraction:
        if 0 <= degree <= self.truncation:
            return self.coeffs[degree]
        raise IndexError(f"degree {degree} outside 0..{self.truncation}")

    def __len__(self):
        return self.truncation + 1

    def truncate(self, truncation: int) -> "PoincareSeries":
        if truncation > self.truncation:
            raise ValueError(
                f"cannot extend a series known to degree {self.truncation} to {truncation}"
            )
        return PoincareSeries(truncation, self.coeffs)

    def is_dimension_series(self) -> bool:
        return all(c >= 0 and c.denominator == 1 for c in self.coeffs)

    def dimensions(self) -> List[int]:
        return [int(c) for c in self.coeffs]

    def first_difference(self, other: "PoincareSeries") -> Optional[int]:
        """Lowest degree where the two series disagree, up to the shorter truncation."""
        for d in range(min(self.truncation, other.truncation) + 1):
            if self.coeffs[d] != other.coeffs[d]:
                return d
        return None

    # arithmetic

    def _common(self, other: "PoincareSeries") -> int:
        return min(self.truncation, other.truncation)

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        n = self._common(other)
        return PoincareSeries(n, [self.coeffs[d] + other.coeffs[d] for d in range(n + 1)])

    def __sub__(self, other: "PoincareSeries") -> "PoincareSeries":
        n = self._common(other)
        return PoincareSeries(n, [self.coeffs[d] - other.coeffs[d] for d in range(n + 1)])

    def __neg__(self):
        return PoincareSeries(self.truncation, [-c for c in self.coeffs])

    def scale(self, factor) -> "PoincareSeries":
        return PoincareSeries(self.truncation, [c * factor for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, PoincareSeries):
            return self.scale(other)
        n = self._common(other)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return PoincareSeries(n, out)

    __rmul__ = __mul__

    def shift(self, degree: int) -> "PoincareSeries":
        """Multiply by t^degree, keeping the truncation."""
        return PoincareSeries(self.truncation, [0] * degree + list(self.coeffs))

    def inverse(self) -> "PoincareSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv = [Fraction(0)] * (self.truncation + 1)
        inv[0] = 1 / c0
        for d in range(1, self.truncation + 1):
            acc = sum((self.coeffs[i] * inv[d - i] for i in range(1, d + 1)), Fraction(0))
            inv[d] = -acc / c0
        return PoincareSeries(self.truncation, inv)

    def __truediv__(self, other):
        if isinstance(other, PoincareSeries):
            return self * other.inverse()
        return self.scale(Fraction(1) / Fraction(other))

    def __eq__(self, other):
        if not isinstance(other, PoincareSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.truncation, self.coeffs))

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:12])
        more = ", ..." if self.truncation >= 12 else ""
        return f"PoincareSeries(N={self.truncation}: {shown}{more})"


def product_of_geometric(degrees: Sequence[int], truncation: int) -> PoincareSeries:
    """1 / prod (1 - t^d)."""
    series = PoincareSeries.one(truncation)
    for d in degrees:
        series = series * PoincareSeries.geometric(d, truncation)
    return series
