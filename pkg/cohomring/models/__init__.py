from .group import DihedralData, Matrix, MatrixGroup
from .action import ActionSpec, AmbientGroup, Leg, OrbitType, SubgroupDatum
from .shape import PresentationShape, ShapeKind
from .cohomology import (
    CaseTag, Classification, Generator, MVClass, Parity, RingPresentation,
    TrichotomyCase, TrichotomyReport, ValidationCheck, ValidationReport,
)
from .invariant_ring import InvariantRing
from .report import MachineReport, VerificationReport
from .spec_file import SpecFile

__all__ = [
    "DihedralData", "Matrix", "MatrixGroup",
    "ActionSpec", "AmbientGroup", "Leg", "OrbitType", "SubgroupDatum",
    "PresentationShape", "ShapeKind",
    "CaseTag", "Classification", "Generator", "MVClass", "Parity", "RingPresentation",
    "TrichotomyCase", "TrichotomyReport", "ValidationCheck", "ValidationReport",
    "InvariantRing",
    "MachineReport", "VerificationReport",
    "SpecFile",
]
