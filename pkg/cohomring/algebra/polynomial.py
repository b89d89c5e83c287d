"""Graded polynomials in torus variables of cohomological degree 2."""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from cohomring.algebra.scalar import Scalar, as_scalar
from cohomring.core.exceptions import ShapeMismatchError

Exponent = Tuple[int, ...]


def homogeneous_monomials(r: int, d: int) -> List[Exponent]:
    """Exponent vectors of cohomological degree d, lex descending.

    Odd or negative d has no monomials. (2,0) precedes (1,1) precedes (0,2).
    """
    if d < 0 or d % 2:
        return []
    return _compositions(r, d // 2)


def _compositions(r: int, m: int) -> List[Exponent]:
    if r == 0:
        return [()] if m == 0 else []
    if r == 1:
        return [(m,)]
    out = []
    for first in range(m, -1, -1):
        for rest in _compositions(r - 1, m - first):
            out.append((first,) + rest)
    return out


class GradedPolynomial:
    """Immutable sparse polynomial: exponent tuple -> nonzero scalar."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, object]] = None):
        clean: Dict[Exponent, Scalar] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ShapeMismatchError(
                    f"exponent {exps} does not have {nvars} entries"
                )
            coeff = as_scalar(coeff)
            if coeff != 0:
                clean[exps] = coeff
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "GradedPolynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value=1) -> "GradedPolynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "GradedPolynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "GradedPolynomial":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def from_vector(
        cls, nvars: int, monomials: Sequence[Exponent], vector: Sequence
    ) -> "GradedPolynomial":
        return cls(nvars, {m: c for m, c in zip(monomials, vector) if c != 0})

    # inspection

    @property
    def terms(self) -> Dict[Exponent, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[Exponent, Scalar]]:
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> List[int]:
        return sorted({2 * sum(e) for e in self._terms})

    @property
    def degree(self) -> int:
        """Cohomological degree of a homogeneous polynomial (-1 for zero)."""
        degs = self.degrees()
        if not degs:
            return -1
        if len(degs) > 1:
            raise ValueError(f"polynomial is not homogeneous: degrees {degs}")
        return degs[0]

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_component(self, d: int) -> "GradedPolynomial":
        return GradedPolynomial(
            self.nvars, {e: c for e, c in self._terms.items() if 2 * sum(e) == d}
        )

    def coefficient(self, exps: Exponent) -> Scalar:
        return self._terms.get(tuple(exps), Fraction(0))

    def leading_term(self) -> Tuple[Exponent, Scalar]:
        """Lex-largest monomial and its coefficient."""
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        lead = max(self._terms)
        return lead, self._terms[lead]

    def normalized(self) -> "GradedPolynomial":
        """Rescale so the lex-leading coefficient is 1; zero stays zero."""
        if not self._terms:
            return self
        _, lead = self.leading_term()
        return self.scale(Fraction(1) / lead)

    def to_vector(self, monomials: Sequence[Exponent]) -> List[Scalar]:
        return [self._terms.get(m, Fraction(0)) for m in monomials]

    # arithmetic

    def _check(self, other: "GradedPolynomial"):
        if other.nvars != self.nvars:
            raise ShapeMismatchError(
                f"polynomials in {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other):
        if not isinstance(other, GradedPolynomial):
            other = GradedPolynomial.constant(self.nvars, other)
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return GradedPolynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, GradedPolynomial):
            other = GradedPolynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "GradedPolynomial":
        factor = as_scalar(factor)
        if factor == 0:
            return GradedPolynomial.zero(self.nvars)
        return GradedPolynomial(self.nvars, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            return self.scale(other)
        self._check(other)
        out: Dict[Exponent, Scalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return GradedPolynomial(self.nvars, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int):
        result = GradedPolynomial.one(self.nvars)
        for _ in range(exponent):
            result = result * self
        return result

    def substitute_linear(self, matrix: Sequence[Sequence], target_nvars: int) -> "GradedPolynomial":
        """Send variable i to sum_j matrix[i][j] * y_j in target_nvars variables."""
        if len(matrix) != self.nvars or any(len(row) != target_nvars for row in matrix):
            raise ShapeMismatchError(
                f"substitution needs a {self.nvars}x{target_nvars} matrix"
            )
        images = []
        for row in matrix:
            form = {}
            for j, c in enumerate(row):
                if c != 0:
                    exps = [0] * target_nvars
                    exps[j] = 1
                    form[tuple(exps)] = c
            images.append(GradedPolynomial(target_nvars, form))
        powers: Dict[Tuple[int, int], GradedPolynomial] = {}

        def power(i: int, e: int) -> GradedPolynomial:
            if e == 0:
                return GradedPolynomial.one(target_nvars)
            if (i, e) not in powers:
                powers[(i, e)] = power(i, e - 1) * images[i]
            return powers[(i, e)]

        result = GradedPolynomial.zero(target_nvars)
        for exps, coeff in self._terms.items():
            term = GradedPolynomial.constant(target_nvars, coeff)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
                    if term.is_zero():
                        break
            result = result + term
        return result

    # comparison

    def __eq__(self, other):
        if isinstance(other, GradedPolynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == GradedPolynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"GradedPolynomial({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = ["x"] if self.nvars == 1 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exps in sorted(self._terms, reverse=True):
            coeff = self._terms[exps]
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                parts.append(f"({coeff})" if " " in str(coeff) else str(coeff))
            elif coeff == 1:
                parts.append(mono)
            elif coeff == -1:
                parts.append(f"-{mono}")
            else:
                shown = f"({coeff})" if " " in str(coeff) or "/" in str(coeff) else str(coeff)
                parts.append(f"{shown}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def substitute_linear(p: GradedPolynomial, matrix: Sequence[Sequence], target_nvars: int) -> GradedPolynomial:
    return p.substitute_linear(matrix, target_nvars)
