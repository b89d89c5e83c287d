from typing import List, Optional

from pydantic import BaseModel, Field


class ComparisonRow(BaseModel):
    degree: int
    even_mv: int
    odd_mv: int
    even_presentation: int
    odd_presentation: int
    match: bool
    exactness_defect: int = 0


class SpotCheck(BaseModel):
    name: str
    inputs: str
    output: str
    passed: bool


class FreenessRow(BaseModel):
    leg: str  # minus, plus
    identity: str
    passed: bool
    first_failure: Optional[int] = None
    skipped: bool = False
    reason: str = ""


class VerificationReport(BaseModel):
    spec_name: str
    truncation: int
    rows: List[ComparisonRow] = Field(default_factory=list)
    spotchecks: List[SpotCheck] = Field(default_factory=list)
    freeness: List[FreenessRow] = Field(default_factory=list)
    first_mismatch: Optional[int] = None
    presentation_error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return (
            self.presentation_error is None
            and all(row.match and row.exactness_defect == 0 for row in self.rows)
            and all(check.passed for check in self.spotchecks)
            and all(row.passed for row in self.freeness)
        )

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


# Machine report; field names are frozen in docs/schema.md

class MachineGenerator(BaseModel):
    name: str
    degree: int


class MachineTrichotomy(BaseModel):
    case: str  # I, II, III
    j: Optional[int] = None
    p_minus: str
    p_plus: str
    sphere_class: Optional[str] = None


class MachineVerification(BaseModel):
    rows: List[ComparisonRow]
    spotchecks: List[SpotCheck] = Field(default_factory=list)
    freeness: List[FreenessRow] = Field(default_factory=list)
    first_mismatch: Optional[int] = None
    verdict: str  # pass, fail


class MachineReport(BaseModel):
    spec: str
    truncation: int
    case: str
    legs_swapped: bool = False
    k: Optional[int] = None
    trichotomy: Optional[MachineTrichotomy] = None
    generators: List[MachineGenerator] = Field(default_factory=list)
    relations: List[str] = Field(default_factory=list)
    sphere_degree: Optional[int] = None
    series: List[str]
    verification: Optional[MachineVerification] = None
