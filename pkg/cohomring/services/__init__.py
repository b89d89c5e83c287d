from .group_service import group_service
from .invariant_service import invariant_service
from .cohomology_service import cohomology_service
from .presentation_service import presentation_service
from .verification_service import verification_service
from .spec_service import spec_service
from .report_service import report_service

__all__ = [
    "group_service",
    "invariant_service",
    "cohomology_service",
    "presentation_service",
    "verification_service",
    "spec_service",
    "report_service",
]
