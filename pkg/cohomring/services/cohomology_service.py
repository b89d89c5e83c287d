from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from cohomring.algebra.linalg import (
    inverse,
    matmul,
    nullspace,
    rank,
    reduce_against,
    rref,
    solve,
    transpose,
)
from cohomring.algebra.polynomial import GradedPolynomial, homogeneous_monomials
from cohomring.algebra.series import PoincareSeries
from cohomring.core.cache import LRUCache
from cohomring.core.config import settings
from cohomring.core.exceptions import EngineError, EulerClassError, IndexTwoError
from cohomring.models.action import ActionSpec, Leg, OrbitType, SubgroupDatum
from cohomring.models.cohomology import (
    CaseTag,
    Classification,
    MVClass,
    Parity,
    ValidationCheck,
    ValidationReport,
)
from cohomring.models.group import Matrix, MatrixGroup
from cohomring.services.group_service import group_service
from cohomring.services.invariant_service import invariant_service
import logging
import threading

logger = logging.getLogger(__name__)

S0_REASON = "S⁰ leg"


def transport_group(weyl: MatrixGroup, embedding: Matrix) -> MatrixGroup:
    """Express W(K) in the torus coordinates of H along an equal-rank embedding.

    restrict(act(g, p)) = act(g', restrict(p)) with g' = (E^T)^-1 g E^T.
    """
    if not weyl.rank:
        return weyl
    et = transpose(embedding)
    et_inv = inverse(et)
    gens = [matmul(matmul(et_inv, g), et) for g in (weyl.generators or weyl.elements)]
    return group_service.close_group(gens, rank=weyl.rank)


class MVContext:
    """Per-spec degreewise data for the Mayer-Vietoris computation."""

    def __init__(self, spec: ActionSpec):
        self.spec = spec
        self.ring_h = invariant_service.ring_for(spec.H.weyl)
        self.ring_minus = invariant_service.ring_for(spec.Kminus.weyl)
        self.ring_plus = invariant_service.ring_for(spec.Kplus.weyl)
        self._restrictions: Dict[Tuple[str, int], List[GradedPolynomial]] = {}
        self._spans: Dict[int, Tuple[List[List], List[int]]] = {}
        self._lock = threading.Lock()

    @property
    def h_nvars(self) -> int:
        return self.spec.H.rank

    def leg(self, side: str) -> Leg:
        return self.spec.minus if side == "minus" else self.spec.plus

    def ring(self, side: str):
        return self.ring_minus if side == "minus" else self.ring_plus

    def k_basis(self, side: str, degree: int) -> List[GradedPolynomial]:
        return invariant_service.invariant_basis(self.ring(side), degree)

    def h_basis(self, degree: int) -> List[GradedPolynomial]:
        return invariant_service.invariant_basis(self.ring_h, degree)

    def restricted_basis(self, side: str, degree: int) -> List[GradedPolynomial]:
        """rho*(b) for the K-invariant basis b of the degree."""
        key = (side, degree)
        cached = self._restrictions.get(key)
        if cached is not None:
            return cached
        embedding = self.leg(side).embedding
        images = [invariant_service.restrict(embedding, b) for b in self.k_basis(side, degree)]
        with self._lock:
            return self._restrictions.setdefault(key, images)

    def restriction_matrix(self, side: str, degree: int) -> List[List]:
        """Columns are rho*(b) in H-monomial coordinates."""
        monomials = homogeneous_monomials(self.h_nvars, degree)
        rows = [img.to_vector(monomials) for img in self.restricted_basis(side, degree)]
        return [list(col) for col in transpose(rows, ncols=len(monomials))]

    def image_span(self, h_degree: int) -> Tuple[List[List], List[int]]:
        """rref of im rho- + im rho+ in H-monomial coordinates."""
        cached = self._spans.get(h_degree)
        if cached is not None:
            return cached
        monomials = homogeneous_monomials(self.h_nvars, h_degree)
        rows = [
            img.to_vector(monomials)
            for side in ("minus", "plus")
            for img in self.restricted_basis(side, h_degree)
        ]
        span = rref(rows) if rows else ([], [])
        with self._lock:
            return self._spans.setdefault(h_degree, span)

    def reduce_odd(self, q: GradedPolynomial, h_degree: int) -> GradedPolynomial:
        monomials = homogeneous_monomials(self.h_nvars, h_degree)
        span, pivots = self.image_span(h_degree)
        reduced = reduce_against(q.to_vector(monomials), span, pivots)
        return GradedPolynomial.from_vector(self.h_nvars, monomials, reduced)


class CohomologyService:
    def __init__(self):
        self._contexts: LRUCache[MVContext] = LRUCache(settings.cache_size)

    def context(self, spec: ActionSpec) -> MVContext:
        """Shared per-spec context, keyed by the spec's content."""
        return self._contexts.get_or_create(spec, lambda: MVContext(spec))

    # validation

    def validate(self, spec: ActionSpec, truncation: Optional[int] = None) -> ValidationReport:
        """Check the spec's hypotheses degreewise; failures are reported, never raised."""
        truncation = settings.max_degree if truncation is None else truncation
        report = ValidationReport(spec_name=spec.name, truncation=truncation)
        if spec.orbit_type == OrbitType.CIRCLE:
            report.checks.append(self._guard("translation normalizes W(K)", self._check_circle, spec))
        else:
            for side in ("minus", "plus"):
                leg = spec.minus if side == "minus" else spec.plus
                if leg.sphere_dimension == 0:
                    report.checks.append(
                        ValidationCheck(name=f"{side} sphere dimension", passed=False, reason=S0_REASON)
                    )
                    continue
                report.checks.append(
                    ValidationCheck(name=f"{side} sphere dimension", passed=True)
                )
                for name, check in (
                    ("restriction is W(H)-invariant", self._check_restriction_invariant),
                    ("restriction degree condition", self._check_restriction_rank),
                    ("freeness identity", self._check_freeness),
                ):
                    report.checks.append(
                        self._guard(f"{side} {name}", check, spec, side, truncation)
                    )
            if spec.G is not None:
                report.checks.append(
                    self._guard("G composites agree", self._check_ambient, spec, truncation)
                )
        if report.passed:
            logger.info(f"Validated {spec.name} to degree {truncation}")
        else:
            logger.info(f"Validation failed: {report.summary()}")
        return report

    def _guard(self, name: str, check, *args) -> ValidationCheck:
        try:
            passed, degree, reason = check(*args)
        except EngineError as e:
            passed, degree, reason = False, None, e.detail
        except Exception as e:
            logger.error(f"Failed to run check {name}: {e}")
            passed, degree, reason = False, None, f"check raised {type(e).__name__}: {e}"
        return ValidationCheck(name=name, passed=passed, degree=degree, reason=reason)

    def _check_circle(self, spec: ActionSpec):
        if not group_service.aut_normalizes(spec.translation_aut, spec.K.weyl):
            return False, None, "translation automorphism does not normalize W(K)"
        return True, None, ""

    def _check_restriction_invariant(self, spec: ActionSpec, side: str, truncation: int):
        ctx = self.context(spec)
        for d in range(0, truncation + 1, 2):
            for img in ctx.restricted_basis(side, d):
                if not invariant_service.is_invariant(spec.H.weyl, img):
                    return False, d, f"restricted invariant {img} is not W(H)-invariant at degree {d}"
        return True, None, ""

    def _check_restriction_rank(self, spec: ActionSpec, side: str, truncation: int):
        """Even legs inject degreewise; orientable odd legs surject."""
        leg = spec.minus if side == "minus" else spec.plus
        ctx = self.context(spec)
        if not leg.is_odd:
            if leg.subgroup.rank != spec.H.rank:
                return False, None, (
                    f"even sphere leg needs equal ranks, got rank K = {leg.subgroup.rank}, rank H = {spec.H.rank}"
                )
            for d in range(0, truncation + 1, 2):
                if rank(ctx.restriction_matrix(side, d)) != len(ctx.k_basis(side, d)):
                    return False, d, f"restriction is not injective at degree {d}"
            return True, None, ""
        if not leg.orientable:
            return True, None, "skipped: non-orientable leg"
        for d in range(0, truncation + 1, 2):
            if rank(ctx.restriction_matrix(side, d)) != len(ctx.h_basis(d)):
                return False, d, f"restriction is not surjective at degree {d}"
        return True, None, ""

    def _check_freeness(self, spec: ActionSpec, side: str, truncation: int):
        leg = spec.minus if side == "minus" else spec.plus
        if not leg.orientable:
            return True, None, "skipped: non-orientable leg"
        expected, actual, _ = self.freeness_series(spec, side, truncation)
        degree = expected.first_difference(actual)
        if degree is not None:
            return False, degree, f"freeness identity fails at degree {degree}"
        return True, None, ""

    def freeness_series(self, spec: ActionSpec, side: str, truncation: int):
        """(P_K * factor, P_H, description) for one leg."""
        leg = spec.minus if side == "minus" else spec.plus
        n = leg.sphere_dimension
        p_k = invariant_service.molien(leg.subgroup.weyl, truncation)
        p_h = invariant_service.molien(spec.H.weyl, truncation)
        if leg.is_odd:
            factor = PoincareSeries.one(truncation) - PoincareSeries.monomial(truncation, n + 1)
            text = f"P_H = P_K (1 - t^{n + 1})"
        else:
            factor = PoincareSeries.one(truncation) + PoincareSeries.monomial(truncation, n)
            text = f"P_H = P_K (1 + t^{n})"
        return p_k * factor, p_h, text

    def _check_ambient(self, spec: ActionSpec, truncation: int):
        ring_g = invariant_service.ring_for(spec.G.subgroup.weyl)
        for d in range(0, truncation + 1, 2):
            for g in invariant_service.invariant_basis(ring_g, d):
                via_minus = invariant_service.restrict(
                    spec.minus.embedding, invariant_service.restrict(spec.G.embedding_minus, g)
                )
                via_plus = invariant_service.restrict(
                    spec.plus.embedding, invariant_service.restrict(spec.G.embedding_plus, g)
                )
                if via_minus != via_plus:
                    return False, d, f"H*_G -> H*_H composites differ on {g} at degree {d}"
        return True, None, ""

    # classification

    def classify(self, spec: ActionSpec) -> Classification:
        """Pick the closed form whose hypotheses the spec meets, else GenericMV."""
        if spec.orbit_type == OrbitType.CIRCLE:
            return Classification(case=CaseTag.CIRCLE, reason="orbit space is a circle")
        minus, plus = spec.minus, spec.plus
        if minus.sphere_dimension == 0 or plus.sphere_dimension == 0:
            return Classification(case=CaseTag.GENERIC_MV, reason=S0_REASON)
        if not (minus.orientable and plus.orientable):
            return Classification(case=CaseTag.GENERIC_MV, reason="non-orientable leg")
        if minus.is_odd and plus.is_odd:
            return Classification(case=CaseTag.ODD_ODD, reason="both spheres odd")
        if minus.is_odd != plus.is_odd:
            return Classification(
                case=CaseTag.ODD_EVEN, legs_swapped=minus.is_odd, reason="one odd and one even sphere"
            )
        try:
            self.transported_weyl(spec)
        except EngineError as e:
            return Classification(case=CaseTag.GENERIC_MV, reason=f"index-two check failed: {e.detail}")
        return Classification(case=CaseTag.EVEN_EVEN, reason="both spheres even")

    def transported_weyl(self, spec: ActionSpec) -> Tuple[MatrixGroup, MatrixGroup]:
        """W(K-) and W(K+) in H coordinates, checked to contain W(H) with index two."""
        groups = []
        for leg in (spec.minus, spec.plus):
            if leg.subgroup.rank != spec.H.rank:
                raise IndexTwoError(f"{leg.subgroup.name} and {spec.H.name} have different ranks")
            moved = transport_group(leg.subgroup.weyl, leg.embedding)
            group_service.index_two_check(spec.H.weyl, moved)
            groups.append(moved)
        return groups[0], groups[1]

    # Mayer-Vietoris

    def mv_degree(self, spec: ActionSpec, degree: int) -> Tuple[List[MVClass], List[MVClass]]:
        """Bases of the even and odd parts of H^degree_G."""
        ctx = self.context(spec)
        if degree % 2 == 0:
            return self._even_part(ctx, degree), []
        return [], self._odd_part(ctx, degree)

    def _even_part(self, ctx: MVContext, degree: int) -> List[MVClass]:
        b_minus = ctx.k_basis("minus", degree)
        b_plus = ctx.k_basis("plus", degree)
        m_minus = ctx.restriction_matrix("minus", degree)
        m_plus = ctx.restriction_matrix("plus", degree)
        width = len(b_minus) + len(b_plus)
        # rho-(x-) - rho+(x+) = 0
        rows = [list(r_m) + [-c for c in r_p] for r_m, r_p in zip(m_minus, m_plus)]
        classes = []
        for vec in nullspace(rows, width):
            minus = _combine(ctx.spec.Kminus.rank, b_minus, vec[: len(b_minus)])
            plus = _combine(ctx.spec.Kplus.rank, b_plus, vec[len(b_minus):])
            classes.append(MVClass(parity=Parity.EVEN, degree=degree, minus=minus, plus=plus))
        return classes

    def _odd_part(self, ctx: MVContext, degree: int) -> List[MVClass]:
        h_degree = degree - 1
        monomials = homogeneous_monomials(ctx.h_nvars, h_degree)
        span, pivots = ctx.image_span(h_degree)
        residues = [reduce_against(b.to_vector(monomials), span, pivots) for b in ctx.h_basis(h_degree)]
        fresh, _ = rref(residues)
        return [
            MVClass(
                parity=Parity.ODD,
                degree=degree,
                representative=GradedPolynomial.from_vector(ctx.h_nvars, monomials, row),
            )
            for row in fresh
        ]

    def mv_dimensions(self, spec: ActionSpec, truncation: int) -> List[Tuple[int, int]]:
        """(even dim, odd dim) for every degree 0..truncation."""
        degrees = list(range(truncation + 1))

        def dims(d: int) -> Tuple[int, int]:
            even, odd = self.mv_degree(spec, d)
            return len(even), len(odd)

        if settings.workers > 1:
            with ThreadPoolExecutor(max_workers=settings.workers) as pool:
                return list(pool.map(dims, degrees))
        return [dims(d) for d in degrees]

    def even_class(self, spec: ActionSpec, minus: GradedPolynomial, plus: GradedPolynomial, degree: int) -> MVClass:
        """The even class (minus, plus); the two restrictions to H must agree."""
        cls = MVClass(parity=Parity.EVEN, degree=degree, minus=minus, plus=plus)
        if not self.is_member(spec, cls):
            raise EngineError(f"({minus}, {plus}) is not in the fiber product of {spec.name}")
        return cls

    def odd_class(self, spec: ActionSpec, q: GradedPolynomial, degree: int) -> MVClass:
        """The odd class of q, q an H-invariant of degree - 1, in canonical form."""
        ctx = self.context(spec)
        return MVClass(parity=Parity.ODD, degree=degree, representative=ctx.reduce_odd(q, degree - 1))

    def zero_class(self, spec: ActionSpec, degree: int) -> MVClass:
        if degree % 2 == 0:
            return MVClass(
                parity=Parity.EVEN,
                degree=degree,
                minus=GradedPolynomial.zero(spec.Kminus.rank),
                plus=GradedPolynomial.zero(spec.Kplus.rank),
            )
        return MVClass(parity=Parity.ODD, degree=degree, representative=GradedPolynomial.zero(spec.H.rank))

    def unit(self, spec: ActionSpec) -> MVClass:
        return MVClass(
            parity=Parity.EVEN,
            degree=0,
            minus=GradedPolynomial.one(spec.Kminus.rank),
            plus=GradedPolynomial.one(spec.Kplus.rank),
        )

    def is_member(self, spec: ActionSpec, cls: MVClass) -> bool:
        """Even classes: equal restrictions. Odd classes: W(H)-invariant representative."""
        if cls.parity == Parity.EVEN:
            r_minus = invariant_service.restrict(spec.minus.embedding, cls.minus)
            r_plus = invariant_service.restrict(spec.plus.embedding, cls.plus)
            return r_minus == r_plus
        return invariant_service.is_invariant(spec.H.weyl, cls.representative)

    def mv_multiply(self, spec: ActionSpec, a: MVClass, b: MVClass) -> MVClass:
        degree = a.degree + b.degree
        if a.parity == Parity.ODD and b.parity == Parity.ODD:
            return self.zero_class(spec, degree)
        if a.parity == Parity.EVEN and b.parity == Parity.EVEN:
            return MVClass(
                parity=Parity.EVEN, degree=degree, minus=a.minus * b.minus, plus=a.plus * b.plus
            )
        even, odd = (a, b) if a.parity == Parity.EVEN else (b, a)
        lifted = invariant_service.restrict(spec.minus.embedding, even.minus)
        return self.odd_class(spec, lifted * odd.representative, degree)

    def add(self, spec: ActionSpec, a: MVClass, b: MVClass) -> MVClass:
        if a.degree != b.degree or a.parity != b.parity:
            raise EngineError(f"cannot add classes of degrees {a.degree} and {b.degree}")
        if a.parity == Parity.EVEN:
            return MVClass(parity=Parity.EVEN, degree=a.degree, minus=a.minus + b.minus, plus=a.plus + b.plus)
        return self.odd_class(spec, a.representative + b.representative, a.degree)

    def scale(self, spec: ActionSpec, a: MVClass, factor) -> MVClass:
        if a.parity == Parity.EVEN:
            return MVClass(parity=Parity.EVEN, degree=a.degree, minus=a.minus * factor, plus=a.plus * factor)
        return MVClass(parity=Parity.ODD, degree=a.degree, representative=a.representative * factor)

    def equal(self, spec: ActionSpec, a: MVClass, b: MVClass) -> bool:
        if a.degree != b.degree or a.parity != b.parity:
            return a.is_zero() and b.is_zero()
        if a.parity == Parity.EVEN:
            return a.minus == b.minus and a.plus == b.plus
        ctx = self.context(spec)
        h_degree = a.degree - 1
        return ctx.reduce_odd(a.representative - b.representative, h_degree).is_zero()

    def class_vector(self, spec: ActionSpec, cls: MVClass) -> List:
        """Coordinates of a class: (minus, plus) monomials for even, reduced H coordinates for odd."""
        if cls.parity == Parity.EVEN:
            return cls.minus.to_vector(homogeneous_monomials(spec.Kminus.rank, cls.degree)) + cls.plus.to_vector(
                homogeneous_monomials(spec.Kplus.rank, cls.degree)
            )
        ctx = self.context(spec)
        reduced = ctx.reduce_odd(cls.representative, cls.degree - 1)
        return reduced.to_vector(homogeneous_monomials(spec.H.rank, cls.degree - 1))

    def class_from_vector(self, spec: ActionSpec, degree: int, vector: Sequence) -> MVClass:
        if degree % 2 == 0:
            mon_minus = homogeneous_monomials(spec.Kminus.rank, degree)
            mon_plus = homogeneous_monomials(spec.Kplus.rank, degree)
            return MVClass(
                parity=Parity.EVEN,
                degree=degree,
                minus=GradedPolynomial.from_vector(spec.Kminus.rank, mon_minus, vector[: len(mon_minus)]),
                plus=GradedPolynomial.from_vector(spec.Kplus.rank, mon_plus, vector[len(mon_minus):]),
            )
        monomials = homogeneous_monomials(spec.H.rank, degree - 1)
        return MVClass(
            parity=Parity.ODD,
            degree=degree,
            representative=GradedPolynomial.from_vector(spec.H.rank, monomials, vector),
        )

    def lift(self, spec: ActionSpec, side: str, target: GradedPolynomial, degree: int) -> Optional[GradedPolynomial]:
        """Some K-invariant x of the degree with rho*(x) = target, or None."""
        ctx = self.context(spec)
        basis = ctx.k_basis(side, degree)
        if not basis:
            return GradedPolynomial.zero(ctx.leg(side).subgroup.rank) if target.is_zero() else None
        monomials = homogeneous_monomials(ctx.h_nvars, degree)
        matrix = ctx.restriction_matrix(side, degree)
        rhs = target.to_vector(monomials)
        if not matrix:
            return GradedPolynomial.zero(ctx.leg(side).subgroup.rank)
        coords = solve(matrix, rhs)
        if coords is None:
            return None
        return _combine(ctx.leg(side).subgroup.rank, basis, coords)

    # Euler class

    def euler_generator(
        self,
        K: SubgroupDatum,
        H: SubgroupDatum,
        embedding: Matrix,
        n: int,
        truncation: Optional[int] = None,
    ) -> GradedPolynomial:
        """Generator of ker(H*_K -> H*_H) for an odd sphere K/H of dimension n.

        The checks run to max(truncation, n + 1) so the class is found below its own degree.
        """
        truncation = settings.max_degree if truncation is None else truncation
        if n % 2 == 0:
            raise EulerClassError(f"Euler class needs an odd sphere, got dimension {n}")
        ring_k = invariant_service.ring_for(K.weyl)
        euler_degree = n + 1
        search = max(truncation, euler_degree)

        kernels: Dict[int, List[GradedPolynomial]] = {}
        for d in range(0, search + 1, 2):
            basis = invariant_service.invariant_basis(ring_k, d)
            monomials = homogeneous_monomials(H.rank, d)
            images = [invariant_service.restrict(embedding, b).to_vector(monomials) for b in basis]
            columns = [list(c) for c in transpose(images, ncols=len(monomials))]
            kernels[d] = [_combine(K.rank, basis, v) for v in nullspace(columns, len(basis))]

        first = next((d for d in sorted(kernels) if kernels[d]), None)
        if first != euler_degree or len(kernels[first]) != 1:
            found = "no kernel" if first is None else f"{len(kernels[first])} kernel elements in degree {first}"
            raise EulerClassError(
                f"expected a one-dimensional kernel first in degree {euler_degree}, found {found}"
            )
        e = kernels[first][0].normalized()

        for d, kernel in kernels.items():
            expected = len(invariant_service.invariant_basis(ring_k, d - euler_degree)) if d >= euler_degree else 0
            if len(kernel) != expected:
                raise EulerClassError(
                    f"kernel is not principal: dimension {len(kernel)} in degree {d}, expected {expected}"
                )
        p_k = invariant_service.molien(K.weyl, search)
        p_h = invariant_service.molien(H.weyl, search)
        factor = PoincareSeries.one(search) - PoincareSeries.monomial(search, euler_degree)
        mismatch = (p_k * factor).first_difference(p_h)
        if mismatch is not None:
            raise EulerClassError(f"series identity P_K (1 - t^{euler_degree}) = P_H fails at degree {mismatch}")
        logger.info(f"Euler class of {K.name} -> {H.name}: {e} in degree {euler_degree}")
        return e

    # H*_G-module structure

    def module_image(self, spec: ActionSpec, degree: int) -> List[MVClass]:
        """Images of a basis of H^degree_G in the even part, when a G block is given."""
        if spec.G is None:
            raise EngineError(f"{spec.name} has no G block")
        ring_g = invariant_service.ring_for(spec.G.subgroup.weyl)
        classes = []
        for g in invariant_service.invariant_basis(ring_g, degree):
            classes.append(
                MVClass(
                    parity=Parity.EVEN,
                    degree=degree,
                    minus=invariant_service.restrict(spec.G.embedding_minus, g),
                    plus=invariant_service.restrict(spec.G.embedding_plus, g),
                )
            )
        return classes


def _combine(nvars: int, basis: Sequence[GradedPolynomial], coeffs: Sequence) -> GradedPolynomial:
    total = GradedPolynomial.zero(nvars)
    for b, c in zip(basis, coeffs):
        if c != 0:
            total = total + b * c
    return total


# Create service instance
cohomology_service = CohomologyService()
