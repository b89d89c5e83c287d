import random
from typing import Dict, List, Optional

from cohomring.core.config import settings
from cohomring.core.exceptions import EngineError
from cohomring.models.action import ActionSpec, OrbitType
from cohomring.models.cohomology import MVClass, Parity, RingPresentation
from cohomring.models.report import ComparisonRow, FreenessRow, SpotCheck, VerificationReport
from cohomring.services.cohomology_service import S0_REASON, cohomology_service
from cohomring.services.invariant_service import invariant_service
from cohomring.services.presentation_service import presentation_service
import logging

logger = logging.getLogger(__name__)


class VerificationService:
    def __init__(self):
        pass

    def compare_series(
        self,
        spec: ActionSpec,
        truncation: Optional[int] = None,
        presentation: Optional[RingPresentation] = None,
    ) -> VerificationReport:
        """Degreewise comparison of the presentation against the Mayer-Vietoris oracle."""
        truncation = settings.max_degree if truncation is None else truncation
        report = VerificationReport(spec_name=spec.name, truncation=truncation)
        if presentation is None:
            try:
                presentation = presentation_service.present(spec, truncation)
            except EngineError as e:
                logger.error(f"Failed to build presentation for {spec.name}: {e.detail}")
                report.presentation_error = e.detail

        if spec.orbit_type == OrbitType.CIRCLE:
            oracle = self._circle_oracle(spec, truncation)
            defects = [0] * (truncation + 1)
        else:
            oracle = cohomology_service.mv_dimensions(spec, truncation + 1)
            defects = self._exactness_defects(spec, oracle, truncation)

        series = presentation.series if presentation is not None else None
        for d in range(truncation + 1):
            even_mv, odd_mv = oracle[d]
            if series is not None and d <= series.truncation:
                total = int(series[d])
            else:
                total = 0
            even_p, odd_p = (total, 0) if d % 2 == 0 else (0, total)
            match = series is not None and even_p == even_mv and odd_p == odd_mv
            report.rows.append(
                ComparisonRow(
                    degree=d,
                    even_mv=even_mv,
                    odd_mv=odd_mv,
                    even_presentation=even_p,
                    odd_presentation=odd_p,
                    match=match,
                    exactness_defect=defects[d],
                )
            )
            if (not match or defects[d]) and report.first_mismatch is None:
                report.first_mismatch = d
        logger.info(
            f"Series comparison for {spec.name}: "
            f"{'pass' if report.first_mismatch is None else f'first mismatch at degree {report.first_mismatch}'}"
        )
        return report

    def _circle_oracle(self, spec: ActionSpec, truncation: int) -> List[tuple]:
        """Direct invariant dimensions of <W, aut>, tensored with a degree-1 exterior class."""
        group = presentation_service.translation_group(spec)
        ring = invariant_service.ring_for(group)
        rows = []
        for d in range(truncation + 1):
            if d % 2 == 0:
                rows.append((len(invariant_service.invariant_basis(ring, d)), 0))
            else:
                rows.append((0, len(invariant_service.invariant_basis(ring, d - 1))))
        return rows

    def _exactness_defects(self, spec: ActionSpec, oracle, truncation: int) -> List[int]:
        """even(d) - [K-(d) + K+(d)] + H(d) - odd(d+1), zero when the four-term sequence is exact."""
        ctx = cohomology_service.context(spec)
        defects = []
        for d in range(truncation + 1):
            k_dims = len(ctx.k_basis("minus", d)) + len(ctx.k_basis("plus", d))
            h_dim = len(ctx.h_basis(d))
            defects.append(oracle[d][0] - k_dims + h_dim - oracle[d + 1][1])
        return defects

    def product_spotchecks(
        self,
        spec: ActionSpec,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        truncation: Optional[int] = None,
        presentation: Optional[RingPresentation] = None,
    ) -> List[SpotCheck]:
        """Seeded random checks of the product rules, plus the presentation's relations."""
        trials = settings.spotcheck_trials if trials is None else trials
        seed = settings.spotcheck_seed if seed is None else seed
        truncation = settings.max_degree if truncation is None else truncation
        if spec.orbit_type == OrbitType.CIRCLE:
            return []
        rng = random.Random(seed)
        checks: List[SpotCheck] = []
        pair_limit = max(truncation // 2, 1)
        triple_limit = max(truncation // 3, 1)
        tables = self._class_tables(spec, pair_limit)
        even_degrees = [d for d, (even, _) in tables.items() if even]
        odd_degrees = [d for d, (_, odd) in tables.items() if odd]

        def random_class(parity: Parity, limit: int) -> Optional[MVClass]:
            pool = [d for d in (even_degrees if parity == Parity.EVEN else odd_degrees) if d <= limit]
            if not pool:
                return None
            d = rng.choice(pool)
            basis = tables[d][0] if parity == Parity.EVEN else tables[d][1]
            cls = cohomology_service.zero_class(spec, d)
            for b in basis:
                cls = cohomology_service.add(spec, cls, cohomology_service.scale(spec, b, rng.randint(-3, 3)))
            if cls.is_zero():
                cls = basis[0]
            return cls

        unit = cohomology_service.unit(spec)
        for _ in range(trials):
            parity = rng.choice([Parity.EVEN, Parity.ODD])
            x = random_class(parity, pair_limit) or random_class(Parity.EVEN, pair_limit)
            if x is not None:
                product = cohomology_service.mv_multiply(spec, unit, x)
                checks.append(self._check("unit", f"1 * {x}", str(product), cohomology_service.equal(spec, product, x)))

            a = random_class(Parity.ODD, pair_limit)
            b = random_class(Parity.ODD, pair_limit)
            if a is not None and b is not None:
                product = cohomology_service.mv_multiply(spec, a, b)
                checks.append(self._check("odd*odd = 0", f"{a} * {b}", str(product), product.is_zero()))

            a = random_class(Parity.EVEN, pair_limit)
            b = random_class(Parity.EVEN, pair_limit)
            if a is not None and b is not None:
                product = cohomology_service.mv_multiply(spec, a, b)
                checks.append(
                    self._check("even*even in fiber product", f"{a} * {b}", str(product), cohomology_service.is_member(spec, product))
                )

            a = random_class(Parity.EVEN, triple_limit)
            b = random_class(Parity.EVEN, triple_limit)
            c = random_class(rng.choice([Parity.EVEN, Parity.ODD]), triple_limit) or random_class(Parity.EVEN, triple_limit)
            if a is not None and b is not None and c is not None:
                left = cohomology_service.mv_multiply(spec, cohomology_service.mv_multiply(spec, a, b), c)
                right = cohomology_service.mv_multiply(spec, a, cohomology_service.mv_multiply(spec, b, c))
                checks.append(
                    self._check("associativity", f"({a} * {b}) * {c}", str(left), cohomology_service.equal(spec, left, right))
                )

        if presentation is not None:
            checks.extend(self._relation_checks(spec, presentation))
        return checks

    def _class_tables(self, spec: ActionSpec, limit: int) -> Dict[int, tuple]:
        return {d: cohomology_service.mv_degree(spec, d) for d in range(1, limit + 1)}

    def _relation_checks(self, spec: ActionSpec, presentation: RingPresentation) -> List[SpotCheck]:
        work = spec.swapped() if presentation.legs_swapped else spec
        checks = []
        reps = {g.name: g.representative for g in presentation.generators if g.representative is not None}
        for name, rep in reps.items():
            checks.append(
                self._check(f"generator {name} is a class", name, str(rep), cohomology_service.is_member(work, rep))
            )
        if "e_minus" in reps and "e_plus" in reps:
            product = cohomology_service.mv_multiply(work, reps["e_minus"], reps["e_plus"])
            checks.append(self._check("e_minus*e_plus = 0", "e_minus * e_plus", str(product), product.is_zero()))
        if "z" in reps:
            z = reps["z"]
            checks.append(self._check("sphere class is nonzero", "z", str(z), not z.is_zero()))
            square = cohomology_service.mv_multiply(work, z, z)
            checks.append(self._check("z^2 = 0", "z * z", str(square), square.is_zero()))
        return checks

    def _check(self, name: str, inputs: str, output: str, passed: bool) -> SpotCheck:
        if not passed:
            logger.error(f"Spot-check {name} failed on {inputs}: got {output}")
        return SpotCheck(name=name, inputs=inputs, output=output, passed=passed)

    def freeness_checks(self, spec: ActionSpec, truncation: Optional[int] = None) -> List[FreenessRow]:
        """Per-leg series identities P_H = P_K (1 - t^(n+1)) or P_K (1 + t^n)."""
        truncation = settings.max_degree if truncation is None else truncation
        if spec.orbit_type == OrbitType.CIRCLE:
            return []
        rows = []
        for side in ("minus", "plus"):
            leg = spec.minus if side == "minus" else spec.plus
            if leg.sphere_dimension == 0 or not leg.orientable:
                reason = S0_REASON if leg.sphere_dimension == 0 else "non-orientable leg"
                rows.append(FreenessRow(leg=side, identity="-", passed=True, skipped=True, reason=reason))
                continue
            expected, actual, text = cohomology_service.freeness_series(spec, side, truncation)
            first = expected.first_difference(actual)
            rows.append(FreenessRow(leg=side, identity=text, passed=first is None, first_failure=first))
        return rows

    def verify(
        self,
        spec: ActionSpec,
        truncation: Optional[int] = None,
        trials: Optional[int] = None,
        seed: Optional[int] = None,
        presentation: Optional[RingPresentation] = None,
    ) -> VerificationReport:
        """compare_series, product_spotchecks and freeness_checks in one report."""
        truncation = settings.max_degree if truncation is None else truncation
        if presentation is None:
            try:
                presentation = presentation_service.present(spec, truncation)
            except EngineError as e:
                logger.error(f"Failed to build presentation for {spec.name}: {e.detail}")
        report = self.compare_series(spec, truncation, presentation)
        if presentation is None and report.presentation_error is None:
            report.presentation_error = "presentation could not be built"
        report.spotchecks = self.product_spotchecks(spec, trials, seed, truncation, presentation)
        report.freeness = self.freeness_checks(spec, truncation)
        logger.info(f"Verification of {spec.name}: {report.verdict}")
        return report


# Create service instance
verification_service = VerificationService()
