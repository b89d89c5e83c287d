from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from cohomring.algebra.polynomial import GradedPolynomial
from cohomring.algebra.series import PoincareSeries
from cohomring.models.group import DihedralData
from cohomring.models.shape import PresentationShape


class CaseTag(str, Enum):
    CIRCLE = "Circle"
    ODD_ODD = "OddOdd"
    ODD_EVEN = "OddEven"
    EVEN_EVEN = "EvenEven"
    GENERIC_MV = "GenericMV"


class Classification(BaseModel):
    model_config = ConfigDict(frozen=True)

    case: CaseTag
    legs_swapped: bool = False
    reason: str = ""


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class MVClass(BaseModel):
    """A homogeneous Mayer-Vietoris class.

    Even classes are pairs (minus, plus) of K-invariants with equal
    restrictions to H. Odd classes carry an H-invariant representative of
    degree - 1, kept reduced modulo im rho- + im rho+.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    parity: Parity
    degree: int
    minus: Optional[GradedPolynomial] = None
    plus: Optional[GradedPolynomial] = None
    representative: Optional[GradedPolynomial] = None

    def is_zero(self) -> bool:
        if self.parity == Parity.EVEN:
            return self.minus.is_zero() and self.plus.is_zero()
        return self.representative.is_zero()

    def __str__(self):
        if self.parity == Parity.EVEN:
            return f"({self.minus}, {self.plus})"
        return f"[{self.representative}]"


class Generator(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    degree: int
    polynomial: Optional[GradedPolynomial] = None
    representative: Optional[MVClass] = None


class TrichotomyCase(str, Enum):
    I = "I"
    II = "II"
    III = "III"


class EigenspaceRow(BaseModel):
    """dim E_l in one degree, indexed by l = 0..k-1."""

    model_config = ConfigDict(frozen=True)

    degree: int
    dims: List[int]


class TrichotomyReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int
    case: TrichotomyCase
    n_minus: int
    n_plus: int
    p_minus: GradedPolynomial
    p_plus: GradedPolynomial
    j: Optional[int] = None  # case III only
    q: Optional[GradedPolynomial] = None  # case III, coefficients in Q(zeta_k)
    eigenspaces: List[EigenspaceRow] = Field(default_factory=list)
    matched_cases: List[TrichotomyCase] = Field(default_factory=list)
    parity_ok: bool = True
    effective: bool = True
    sphere_class: Optional[GradedPolynomial] = None
    sphere_degree: int

    @property
    def p(self) -> Optional[GradedPolynomial]:
        """The common eigenvector of case I."""
        return self.p_minus if self.case == TrichotomyCase.I else None


class RingPresentation(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    case: CaseTag
    legs_swapped: bool = False
    shape: PresentationShape
    generators: List[Generator] = Field(default_factory=list)
    relations: List[str] = Field(default_factory=list)
    series: PoincareSeries
    sphere_degree: Optional[int] = None
    dihedral: Optional[DihedralData] = None
    trichotomy: Optional[TrichotomyReport] = None
    odd_generators: List[Generator] = Field(default_factory=list)  # generic case: module generators


class ValidationCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    degree: Optional[int] = None
    reason: str = ""


class ValidationReport(BaseModel):
    spec_name: str
    truncation: int
    checks: List[ValidationCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[ValidationCheck]:
        return [check for check in self.checks if not check.passed]

    def summary(self) -> str:
        if self.passed:
            return f"{self.spec_name}: all {len(self.checks)} checks passed"
        first = self.failures[0]
        return f"{self.spec_name}: {first.name} failed: {first.reason}"
