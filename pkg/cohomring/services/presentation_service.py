from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Set

from cohomring.algebra.linalg import mat_vec, rref
from cohomring.algebra.polynomial import GradedPolynomial, homogeneous_monomials
from cohomring.algebra.scalar import Cyclotomic, simplify
from cohomring.algebra.series import PoincareSeries
from cohomring.algebra.shapes import series_from_shape
from cohomring.core.config import settings
from cohomring.core.exceptions import (
    EngineError,
    SpecValidationError,
    TrichotomyError,
    WrongCaseError,
)
from cohomring.models.action import ActionSpec, OrbitType
from cohomring.models.cohomology import (
    CaseTag,
    EigenspaceRow,
    Generator,
    MVClass,
    Parity,
    RingPresentation,
    TrichotomyCase,
    TrichotomyReport,
)
from cohomring.models.group import DihedralData, Matrix
from cohomring.models.shape import PresentationShape, ShapeKind
from cohomring.services.cohomology_service import cohomology_service
from cohomring.services.group_service import act, group_service
from cohomring.services.invariant_service import greedy_generators, invariant_service
import logging

logger = logging.getLogger(__name__)


class _InvariantOperator:
    """A polynomial map restricted to one degree of the W(H)-invariants.

    Coordinates are read off at the rref pivots of the invariant basis.
    """

    def __init__(self, basis: List[GradedPolynomial], nvars: int, degree: int):
        self.basis = basis
        self.nvars = nvars
        self.monomials = homogeneous_monomials(nvars, degree)
        rows = [b.to_vector(self.monomials) for b in basis]
        _, self.pivots = rref(rows) if rows else ([], [])

    def coords(self, p: GradedPolynomial) -> List:
        vector = p.to_vector(self.monomials)
        return [vector[c] for c in self.pivots]

    def poly(self, coords: Sequence) -> GradedPolynomial:
        total = GradedPolynomial.zero(self.nvars)
        for b, c in zip(self.basis, coords):
            if c != 0:
                total = total + b * c
        return total

    def matrix(self, fn) -> List[List]:
        """Column j holds the coordinates of fn(basis[j])."""
        columns = [self.coords(fn(b)) for b in self.basis]
        return [[columns[j][i] for j in range(len(columns))] for i in range(len(self.basis))]


def _proportional(u: Sequence, v: Sequence) -> bool:
    """u = c v for some scalar c, v nonzero."""
    pivot = next((i for i, x in enumerate(v) if x != 0), None)
    if pivot is None or all(x == 0 for x in u):
        return False
    ratio = u[pivot] / v[pivot]
    return all(a == ratio * b for a, b in zip(u, v))


class PresentationService:
    def __init__(self):
        pass

    # dispatcher

    def present(self, spec: ActionSpec, truncation: Optional[int] = None) -> RingPresentation:
        """Build the presentation matching the spec's case."""
        truncation = settings.max_degree if truncation is None else truncation
        try:
            if spec.orbit_type == OrbitType.CIRCLE:
                return self.mapping_torus_presentation(spec, truncation)
            case = cohomology_service.classify(spec).case
            builders = {
                CaseTag.ODD_ODD: self.present_odd_odd,
                CaseTag.ODD_EVEN: self.present_odd_even,
                CaseTag.EVEN_EVEN: self.present_even_even,
                CaseTag.GENERIC_MV: self.present_generic,
            }
            presentation = builders[case](spec, truncation)
            logger.info(f"Presented {spec.name} as {presentation.case.value}")
            return presentation
        except EngineError:
            raise
        except Exception as e:
            logger.error(f"Failed to present {spec.name}: {e}")
            raise EngineError(f"Failed to present {spec.name}: {e}")

    def _require(self, spec: ActionSpec, case: CaseTag):
        classification = cohomology_service.classify(spec)
        if classification.case != case:
            raise WrongCaseError(
                f"{spec.name} is {classification.case.value}, not {case.value}"
            )
        return classification

    # odd legs

    def present_odd_even(self, spec: ActionSpec, truncation: Optional[int] = None) -> RingPresentation:
        """H*_{K-} + e H*_H[e] inside H*_H[e], with K+/H the odd sphere."""
        truncation = settings.max_degree if truncation is None else truncation
        classification = self._require(spec, CaseTag.ODD_EVEN)
        work = spec.swapped() if classification.legs_swapped else spec
        e = cohomology_service.euler_generator(
            work.Kplus, work.H, work.plus.embedding, work.n_plus, truncation
        )
        euler_degree = work.n_plus + 1
        shape = PresentationShape(
            kind=ShapeKind.ODD_EVEN,
            base_series=invariant_service.molien(work.H.weyl, truncation),
            summand_series=invariant_service.molien(work.Kminus.weyl, truncation),
            nilpotent_degrees=[euler_degree],
        )
        generators = []
        ring_minus = invariant_service.ring_for(work.Kminus.weyl)
        for i, (degree, a) in enumerate(invariant_service.minimal_generators(ring_minus, truncation), 1):
            restricted = invariant_service.restrict(work.minus.embedding, a)
            b = cohomology_service.lift(work, "plus", restricted, degree)
            rep = None if b is None else cohomology_service.even_class(work, a, b, degree)
            generators.append(Generator(name=f"a{i}", degree=degree, polynomial=a, representative=rep))
        zero_minus = GradedPolynomial.zero(work.Kminus.rank)
        generators.append(
            Generator(
                name="e",
                degree=euler_degree,
                polynomial=e,
                representative=cohomology_service.even_class(work, zero_minus, e, euler_degree),
            )
        )
        return RingPresentation(
            case=CaseTag.ODD_EVEN,
            legs_swapped=classification.legs_swapped,
            shape=shape,
            generators=generators,
            relations=[f"H*_{work.Kminus.name} + e*H*_{work.H.name}[e] inside H*_{work.H.name}[e]"],
            series=series_from_shape(shape, truncation),
        )

    def present_odd_odd(self, spec: ActionSpec, truncation: Optional[int] = None) -> RingPresentation:
        """H*_H[e-, e+]/(e- e+)."""
        truncation = settings.max_degree if truncation is None else truncation
        self._require(spec, CaseTag.ODD_ODD)
        e_minus = cohomology_service.euler_generator(
            spec.Kminus, spec.H, spec.minus.embedding, spec.n_minus, truncation
        )
        e_plus = cohomology_service.euler_generator(
            spec.Kplus, spec.H, spec.plus.embedding, spec.n_plus, truncation
        )
        ring_h = invariant_service.ring_for(spec.H.weyl)
        h_generators = invariant_service.minimal_generators(ring_h, truncation)
        shape = PresentationShape(
            kind=ShapeKind.ADJOIN_TWO_NILPOTENTS,
            generator_degrees=[d for d, _ in h_generators],
            base_series=invariant_service.molien(spec.H.weyl, truncation),
            nilpotent_degrees=[spec.n_minus + 1, spec.n_plus + 1],
        )
        generators = []
        for i, (degree, h) in enumerate(h_generators, 1):
            lift_minus = cohomology_service.lift(spec, "minus", h, degree)
            lift_plus = cohomology_service.lift(spec, "plus", h, degree)
            rep = None
            if lift_minus is not None and lift_plus is not None:
                rep = cohomology_service.even_class(spec, lift_minus, lift_plus, degree)
            generators.append(Generator(name=f"h{i}", degree=degree, polynomial=h, representative=rep))
        generators.append(
            Generator(
                name="e_minus",
                degree=spec.n_minus + 1,
                polynomial=e_minus,
                representative=cohomology_service.even_class(
                    spec, e_minus, GradedPolynomial.zero(spec.Kplus.rank), spec.n_minus + 1
                ),
            )
        )
        generators.append(
            Generator(
                name="e_plus",
                degree=spec.n_plus + 1,
                polynomial=e_plus,
                representative=cohomology_service.even_class(
                    spec, GradedPolynomial.zero(spec.Kminus.rank), e_plus, spec.n_plus + 1
                ),
            )
        )
        return RingPresentation(
            case=CaseTag.ODD_ODD,
            shape=shape,
            generators=generators,
            relations=["e_minus*e_plus = 0"],
            series=series_from_shape(shape, truncation),
        )

    # even legs

    def dihedral_for(self, spec: ActionSpec) -> DihedralData:
        weyl_minus, weyl_plus = cohomology_service.transported_weyl(spec)
        return group_service.dihedral_parameters(spec.H.weyl, weyl_minus, weyl_plus)

    def _phi(self, spec: ActionSpec, w: Matrix, n: int, truncation: int, label: str) -> GradedPolynomial:
        """Lowest-degree W(H)-invariant basis element moved by w; its degree must be n."""
        ring_h = invariant_service.ring_for(spec.H.weyl)
        for d in range(2, truncation + 1, 2):
            for b in invariant_service.invariant_basis(ring_h, d):
                if act(w, b) != b:
                    if d != n:
                        raise TrichotomyError(
                            f"w{label} first moves an invariant in degree {d}, expected {n}"
                        )
                    return b
        raise TrichotomyError(f"w{label} fixes every W(H)-invariant up to degree {truncation}")

    def trichotomy_classify(
        self,
        spec: ActionSpec,
        truncation: Optional[int] = None,
        dihedral: Optional[DihedralData] = None,
    ) -> TrichotomyReport:
        """Locate p- and p+ among the eigenspaces of r = w+ w- and decide case I, II or III.

        Invariants are searched to max(truncation, n-, n+, sphere degree); the
        eigenspace table in the report stops at the truncation.
        """
        truncation = settings.max_degree if truncation is None else truncation
        self._require(spec, CaseTag.EVEN_EVEN)
        dd = dihedral or self.dihedral_for(spec)
        k, n_minus, n_plus = dd.k, spec.n_minus, spec.n_plus
        nvars = spec.H.rank
        ring_h = invariant_service.ring_for(spec.H.weyl)

        half_sum = (n_minus + n_plus) // 2
        parity_ok = (k * half_sum) % 2 == 0
        sphere_degree = k * half_sum + 1
        if not parity_ok:
            raise TrichotomyError(f"k(n- + n+)/2 = {k * half_sum} is odd for k = {k}")
        search = max(truncation, n_minus, n_plus, sphere_degree)

        p = {}
        for label, w, n in (("-", dd.w_minus, n_minus), ("+", dd.w_plus, n_plus)):
            phi = self._phi(spec, w, n, search, label)
            p[label] = ((phi - act(w, phi)) * Fraction(1, 2)).normalized()
        p_minus, p_plus = p["-"], p["+"]

        def rotate(q: GradedPolynomial) -> GradedPolynomial:
            return act(dd.w_plus, act(dd.w_minus, q))

        # eigenspace dimensions from traces of powers of r
        table = []
        for d in range(0, truncation + 1, 2):
            op = _InvariantOperator(invariant_service.invariant_basis(ring_h, d), nvars, d)
            table.append(EigenspaceRow(degree=d, dims=self._eigen_dims(op, rotate, k)))

        def project(op: _InvariantOperator, vec: List, ell: int) -> List:
            """(1/k) sum_j zeta^(-l j) r^j applied to vec."""
            rot = op.matrix(rotate)
            total = [Fraction(0)] * len(vec)
            current = list(vec)
            for j in range(k):
                weight = Cyclotomic.zeta(k, -ell * j)
                total = [t + weight * c for t, c in zip(total, current)]
                current = mat_vec(rot, current)
            return [simplify(t * Fraction(1, k)) for t in total]

        op_minus = _InvariantOperator(invariant_service.invariant_basis(ring_h, n_minus), nvars, n_minus)
        op_plus = _InvariantOperator(invariant_service.invariant_basis(ring_h, n_plus), nvars, n_plus)
        v_minus, v_plus = op_minus.coords(p_minus), op_plus.coords(p_plus)
        support_minus = {ell for ell in range(k) if any(x != 0 for x in project(op_minus, v_minus, ell))}
        support_plus = {ell for ell in range(k) if any(x != 0 for x in project(op_plus, v_plus, ell))}

        matched: List[TrichotomyCase] = []
        j_found, q_poly = None, None
        if k == 1 and n_minus == n_plus and p_minus == p_plus:
            matched.append(TrichotomyCase.I)
        if k == 2 and support_minus == {1} and support_plus == {1}:
            matched.append(TrichotomyCase.II)
        if k > 2 and n_minus == n_plus and len(support_plus) == 2:
            ell = min(support_plus)
            j = min(ell, k - ell)
            dims = self._eigen_dims(op_plus, rotate, k)
            if (
                support_plus == {j, k - j}
                and support_minus == {j, k - j}
                and 0 < j < k / 2
                and gcd(j, k) == 1
                and dims[j] == 1
                and dims[k - j] == 1
            ):
                q = project(op_plus, v_plus, j)
                w_minus_q = mat_vec(op_plus.matrix(lambda b: act(dd.w_minus, b)), q)
                difference = [a - b for a, b in zip(q, w_minus_q)]
                if _proportional(difference, v_minus):
                    matched.append(TrichotomyCase.III)
                    j_found = j
                    q_poly = op_plus.poly(q)

        if len(matched) != 1:
            found = ", ".join(c.value for c in matched) or "none"
            raise TrichotomyError(f"expected exactly one trichotomy case, matched {found}")

        sphere_class = self.sphere_class(dd, p_minus, p_plus, sphere_degree)
        effective = invariant_service.quotient_action_effective(dd, search)
        logger.info(f"Trichotomy for {spec.name}: k = {k}, case {matched[0].value}")
        return TrichotomyReport(
            k=k,
            case=matched[0],
            n_minus=n_minus,
            n_plus=n_plus,
            p_minus=p_minus,
            p_plus=p_plus,
            j=j_found,
            q=q_poly,
            eigenspaces=table,
            matched_cases=matched,
            parity_ok=parity_ok,
            effective=effective,
            sphere_class=sphere_class,
            sphere_degree=sphere_degree,
        )

    def _eigen_dims(self, op: _InvariantOperator, rotate, k: int) -> List[int]:
        """dim E_l = (1/k) sum_j zeta^(-l j) tr(r^j)."""
        size = len(op.basis)
        if size == 0:
            return [0] * k
        rot = op.matrix(rotate)
        traces = []
        power = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
        for _ in range(k):
            traces.append(sum((power[i][i] for i in range(size)), Fraction(0)))
            power = [[sum((rot[i][t] * power[t][j] for t in range(size)), Fraction(0)) for j in range(size)] for i in range(size)]
        dims = []
        for ell in range(k):
            total = sum((Cyclotomic.zeta(k, -ell * j) * traces[j] for j in range(k)), Cyclotomic(k, [0]))
            value = simplify(total * Fraction(1, k))
            if isinstance(value, Cyclotomic) or value.denominator != 1:
                raise TrichotomyError(f"eigenspace dimension {value} is not an integer")
            dims.append(int(value))
        return dims

    def sphere_class(
        self,
        dihedral: DihedralData,
        p_minus: GradedPolynomial,
        p_plus: GradedPolynomial,
        sphere_degree: int,
    ) -> GradedPolynomial:
        """Product of the distinct lines in the Xi-orbits of p- and p+."""
        lines: Set[GradedPolynomial] = set()
        for p in (p_minus, p_plus):
            for g in dihedral.xi.elements:
                lines.add(act(g, p).normalized())
        if len(lines) != dihedral.k:
            raise TrichotomyError(f"found {len(lines)} eigenvector lines, expected k = {dihedral.k}")
        product = GradedPolynomial.one(p_minus.nvars)
        for line in sorted(lines, key=lambda q: q.leading_term()[0], reverse=True):
            product = product * line
        if product.degree + 1 != sphere_degree:
            raise TrichotomyError(
                f"sphere class has degree {product.degree}, expected {sphere_degree - 1}"
            )
        return product

    def present_even_even(self, spec: ActionSpec, truncation: Optional[int] = None) -> RingPresentation:
        """(H*_S)^Xi tensor an exterior class of degree k(n- + n+)/2 + 1."""
        truncation = settings.max_degree if truncation is None else truncation
        self._require(spec, CaseTag.EVEN_EVEN)
        dd = self.dihedral_for(spec)
        report = self.trichotomy_classify(spec, truncation, dihedral=dd)
        ring_xi = invariant_service.ring_for(dd.xi)
        xi_generators = invariant_service.minimal_generators(ring_xi, truncation)
        shape = PresentationShape(
            kind=ShapeKind.TENSOR_WITH_EXTERIOR,
            generator_degrees=[d for d, _ in xi_generators],
            base_series=invariant_service.molien(dd.xi, truncation),
            exterior_degree=report.sphere_degree,
        )
        generators = []
        for i, (degree, f) in enumerate(xi_generators, 1):
            lift_minus = cohomology_service.lift(spec, "minus", f, degree)
            lift_plus = cohomology_service.lift(spec, "plus", f, degree)
            rep = None
            if lift_minus is not None and lift_plus is not None:
                rep = cohomology_service.even_class(spec, lift_minus, lift_plus, degree)
            generators.append(Generator(name=f"f{i}", degree=degree, polynomial=f, representative=rep))
        generators.append(
            Generator(
                name="z",
                degree=report.sphere_degree,
                polynomial=report.sphere_class,
                representative=cohomology_service.odd_class(spec, report.sphere_class, report.sphere_degree),
            )
        )
        return RingPresentation(
            case=CaseTag.EVEN_EVEN,
            shape=shape,
            generators=generators,
            relations=["z^2 = 0"],
            series=series_from_shape(shape, truncation),
            sphere_degree=report.sphere_degree,
            dihedral=dd,
            trichotomy=report,
        )

    # generic

    def present_generic(self, spec: ActionSpec, truncation: Optional[int] = None) -> RingPresentation:
        """Degreewise Mayer-Vietoris table with greedy even generators and odd module generators."""
        truncation = settings.max_degree if truncation is None else truncation
        if spec.orbit_type != OrbitType.INTERVAL:
            raise WrongCaseError(f"{spec.name} is not an interval spec")
        dims = cohomology_service.mv_dimensions(spec, truncation)
        even_series = PoincareSeries(truncation, [e for e, _ in dims])
        odd_series = PoincareSeries(truncation, [o for _, o in dims])

        def basis(parity: Parity):
            def in_degree(d: int) -> List[MVClass]:
                even, odd = cohomology_service.mv_degree(spec, d)
                return even if parity == Parity.EVEN else odd
            return in_degree

        to_vector = lambda d, cls: cohomology_service.class_vector(spec, cls)
        from_vector = lambda d, row: cohomology_service.class_from_vector(spec, d, row)
        multiply = lambda gen, b: cohomology_service.mv_multiply(spec, b, gen)

        even_gens = greedy_generators(
            basis_in_degree=basis(Parity.EVEN),
            multiply=multiply,
            to_vector=to_vector,
            from_vector=from_vector,
            truncation=truncation,
            start=1,
        )
        odd_gens = greedy_generators(
            basis_in_degree=basis(Parity.ODD),
            multiply=multiply,
            to_vector=to_vector,
            from_vector=from_vector,
            truncation=truncation,
            start=1,
            multipliers_in_degree=basis(Parity.EVEN),
        )
        shape = PresentationShape(
            kind=ShapeKind.FIBER_PRODUCT_GENERIC,
            generator_degrees=[d for d, _ in even_gens],
            even_series=even_series,
            odd_series=odd_series,
        )
        return RingPresentation(
            case=CaseTag.GENERIC_MV,
            shape=shape,
            generators=[
                Generator(name=f"g{i}", degree=d, representative=cls)
                for i, (d, cls) in enumerate(even_gens, 1)
            ],
            odd_generators=[
                Generator(name=f"u{i}", degree=d, representative=cls)
                for i, (d, cls) in enumerate(odd_gens, 1)
            ],
            relations=["odd*odd = 0", "even*odd descends through rho*_-"],
            series=series_from_shape(shape, truncation),
        )

    # circle

    def mapping_torus_presentation(self, spec: ActionSpec, truncation: Optional[int] = None) -> RingPresentation:
        """Invariants of <W(K), aut> tensor an exterior class of degree 1."""
        truncation = settings.max_degree if truncation is None else truncation
        if spec.orbit_type != OrbitType.CIRCLE:
            raise WrongCaseError(f"{spec.name} is not a circle spec")
        if not group_service.aut_normalizes(spec.translation_aut, spec.K.weyl):
            raise SpecValidationError(f"{spec.name}: translation automorphism does not normalize W(K)")
        group = self.translation_group(spec)
        ring = invariant_service.ring_for(group)
        gens = invariant_service.minimal_generators(ring, truncation)
        shape = PresentationShape(
            kind=ShapeKind.TENSOR_WITH_EXTERIOR,
            generator_degrees=[d for d, _ in gens],
            base_series=invariant_service.molien(group, truncation),
            exterior_degree=1,
        )
        generators = [Generator(name=f"c{i}", degree=d, polynomial=f) for i, (d, f) in enumerate(gens, 1)]
        generators.append(Generator(name="s1", degree=1))
        return RingPresentation(
            case=CaseTag.CIRCLE,
            shape=shape,
            generators=generators,
            relations=["s1^2 = 0"],
            series=series_from_shape(shape, truncation),
            sphere_degree=1,
        )

    def translation_group(self, spec: ActionSpec):
        weyl = spec.K.weyl
        base = list(weyl.generators) or list(weyl.elements[1:])
        return group_service.close_group(base + [spec.translation_aut], rank=spec.K.rank)


# Create service instance
presentation_service = PresentationService()
