from typing import List, Optional

from cohomring.models.action import ActionSpec
from cohomring.models.cohomology import RingPresentation, ValidationReport
from cohomring.models.report import (
    MachineGenerator,
    MachineReport,
    MachineTrichotomy,
    MachineVerification,
    VerificationReport,
)
import logging

logger = logging.getLogger(__name__)

REPORT_FORMATS = ("text", "machine")


class ReportService:
    def __init__(self):
        pass

    def machine_report(
        self,
        spec: ActionSpec,
        presentation: RingPresentation,
        verification: Optional[VerificationReport] = None,
    ) -> MachineReport:
        trichotomy = None
        if presentation.trichotomy is not None:
            t = presentation.trichotomy
            trichotomy = MachineTrichotomy(
                case=t.case.value,
                j=t.j,
                p_minus=str(t.p_minus),
                p_plus=str(t.p_plus),
                sphere_class=str(t.sphere_class) if t.sphere_class is not None else None,
            )
        machine_verification = None
        if verification is not None:
            machine_verification = MachineVerification(
                rows=verification.rows,
                spotchecks=verification.spotchecks,
                freeness=verification.freeness,
                first_mismatch=verification.first_mismatch,
                verdict=verification.verdict,
            )
        return MachineReport(
            spec=spec.name,
            truncation=presentation.series.truncation,
            case=presentation.case.value,
            legs_swapped=presentation.legs_swapped,
            k=presentation.dihedral.k if presentation.dihedral is not None else None,
            trichotomy=trichotomy,
            generators=[
                MachineGenerator(name=g.name, degree=g.degree)
                for g in presentation.generators + presentation.odd_generators
            ],
            relations=presentation.relations,
            sphere_degree=presentation.sphere_degree,
            series=presentation.series.to_strings(),
            verification=machine_verification,
        )

    def render_machine(
        self,
        spec: ActionSpec,
        presentation: RingPresentation,
        verification: Optional[VerificationReport] = None,
    ) -> str:
        """Deterministic JSON; field names are documented in docs/schema.md."""
        return self.machine_report(spec, presentation, verification).model_dump_json(indent=2) + "\n"

    def render_text(
        self,
        spec: ActionSpec,
        presentation: RingPresentation,
        verification: Optional[VerificationReport] = None,
    ) -> str:
        lines: List[str] = [f"spec: {spec.name}", f"case: {presentation.case.value}"]
        if presentation.legs_swapped:
            lines.append("legs swapped: the odd sphere is on the minus side")
        if presentation.dihedral is not None:
            lines.append(f"k = {presentation.dihedral.k}")
        t = presentation.trichotomy
        if t is not None:
            case = f"trichotomy: case {t.case.value}"
            if t.j is not None:
                case += f" (j = {t.j})"
            lines.append(case)
            lines.append(f"  p- = {t.p_minus}")
            lines.append(f"  p+ = {t.p_plus}")
            if t.sphere_class is not None:
                lines.append(f"  sphere class = {t.sphere_class}")
            lines.append(f"  quotient action effective: {'yes' if t.effective else 'no'}")
        gens = ", ".join(f"{g.name} (degree {g.degree})" for g in presentation.generators)
        lines.append(f"generators: {gens or 'none'}")
        if presentation.odd_generators:
            odd = ", ".join(f"{g.name} (degree {g.degree})" for g in presentation.odd_generators)
            lines.append(f"odd module generators: {odd}")
        for relation in presentation.relations:
            lines.append(f"relation: {relation}")
        if presentation.sphere_degree is not None:
            lines.append(f"sphere degree: {presentation.sphere_degree}")
        lines.append(
            f"series to degree {presentation.series.truncation}: {' '.join(presentation.series.to_strings())}"
        )
        if verification is not None:
            lines.extend(self._verification_lines(verification))
        return "\n".join(lines) + "\n"

    def _verification_lines(self, report: VerificationReport) -> List[str]:
        lines = ["", "degree  even(MV)  odd(MV)  even(P)  odd(P)  defect  match"]
        for row in report.rows:
            lines.append(
                f"{row.degree:>6}  {row.even_mv:>8}  {row.odd_mv:>7}  {row.even_presentation:>7}  "
                f"{row.odd_presentation:>6}  {row.exactness_defect:>6}  {'ok' if row.match else 'MISMATCH'}"
            )
        if report.presentation_error:
            lines.append(f"presentation error: {report.presentation_error}")
        passed = sum(1 for check in report.spotchecks if check.passed)
        lines.append(f"spot-checks: {passed}/{len(report.spotchecks)} passed")
        for check in report.spotchecks:
            if not check.passed:
                lines.append(f"  FAILED {check.name}: {check.inputs} -> {check.output}")
        for row in report.freeness:
            if row.skipped:
                lines.append(f"freeness {row.leg}: skipped ({row.reason})")
            else:
                status = "ok" if row.passed else f"fails at degree {row.first_failure}"
                lines.append(f"freeness {row.leg}: {row.identity}: {status}")
        if report.first_mismatch is not None:
            lines.append(f"first mismatch at degree {report.first_mismatch}")
        lines.append(f"verdict: {report.verdict}")
        return lines

    def render_validation(self, report: ValidationReport) -> str:
        lines = [f"spec: {report.spec_name}", "validation failed"]
        for check in report.failures:
            where = f" at degree {check.degree}" if check.degree is not None else ""
            lines.append(f"  {check.name}{where}: {check.reason}")
        return "\n".join(lines) + "\n"


# Create service instance
report_service = ReportService()
