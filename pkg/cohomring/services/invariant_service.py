from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Matrix as SympyMatrix, Rational

from cohomring.algebra.linalg import reduce_against, rref, transpose
from cohomring.algebra.polynomial import GradedPolynomial, homogeneous_monomials
from cohomring.algebra.series import PoincareSeries
from cohomring.core.cache import LRUCache
from cohomring.core.config import settings
from cohomring.core.exceptions import EngineError, ShapeMismatchError
from cohomring.models.group import DihedralData, Matrix, MatrixGroup
from cohomring.models.invariant_ring import InvariantRing
from cohomring.services.group_service import act
import logging

logger = logging.getLogger(__name__)


def to_rows(polys: Sequence[GradedPolynomial], monomials) -> List[List]:
    return [p.to_vector(monomials) for p in polys]


def from_rows(nvars: int, rows: Sequence[Sequence], monomials) -> List[GradedPolynomial]:
    return [GradedPolynomial.from_vector(nvars, monomials, row) for row in rows]


def greedy_generators(
    basis_in_degree,
    multiply,
    to_vector,
    from_vector,
    truncation: int,
    start: int = 1,
    multipliers_in_degree=None,
) -> List[Tuple[int, object]]:
    """Degreewise greedy generators of a graded algebra or module.

    basis_in_degree(d) lists a spanning set of degree d, multiply(gen, b)
    multiplies a chosen generator into degree d, and to_vector/from_vector
    move between elements and coordinates in degree d. For module
    generators, multipliers_in_degree(e) lists the acting ring in degree e
    (it defaults to basis_in_degree). In each degree the
    new generators are the rref of the basis modulo everything reachable
    from lower generators, leading coefficient 1.
    """
    multipliers_in_degree = multipliers_in_degree or basis_in_degree
    chosen: List[Tuple[int, object]] = []
    for d in range(start, truncation + 1):
        basis = basis_in_degree(d)
        if not basis:
            continue
        reachable = []
        for gen_degree, gen in chosen:
            if gen_degree >= d:
                continue
            for b in multipliers_in_degree(d - gen_degree):
                reachable.append(to_vector(d, multiply(gen, b)))
        span, pivots = rref(reachable) if reachable else ([], [])
        residues = [reduce_against(to_vector(d, b), span, pivots) for b in basis]
        fresh, _ = rref(residues)
        for row in fresh:
            chosen.append((d, from_vector(d, row)))
    return chosen


class InvariantService:
    def __init__(self):
        self._rings: LRUCache[InvariantRing] = LRUCache(settings.cache_size)
        self._molien: LRUCache[PoincareSeries] = LRUCache(settings.cache_size)

    def ring_for(self, group: MatrixGroup) -> InvariantRing:
        """Shared InvariantRing per group, so bases are computed once."""
        key = (group.rank, group.elements)
        return self._rings.get_or_create(key, lambda: InvariantRing(group=group))

    def molien(self, group: MatrixGroup, truncation: int) -> PoincareSeries:
        """(1/|G|) sum_g 1/det(I - t^2 g), expanded to the truncation."""
        key = (group.rank, group.elements)
        cached = self._molien.get(key)
        if cached is not None and cached.truncation >= truncation:
            return cached.truncate(truncation)
        try:
            counts: Dict[Tuple[Fraction, ...], int] = {}
            for g in group.elements:
                coeffs = self._det_one_minus(g)
                counts[coeffs] = counts.get(coeffs, 0) + 1
            total = PoincareSeries.zero(truncation)
            for coeffs, count in counts.items():
                det = [Fraction(0)] * (2 * len(coeffs))
                for i, c in enumerate(coeffs):
                    det[2 * i] = c
                total = total + PoincareSeries(truncation, det).inverse().scale(count)
            series = total.scale(Fraction(1, group.order))
            self._molien.put(key, series)
            return series
        except EngineError:
            raise
        except Exception as e:
            logger.error(f"Failed to compute Molien series: {e}")
            raise EngineError(f"Failed to compute Molien series: {e}")

    def _det_one_minus(self, g: Matrix) -> Tuple[Fraction, ...]:
        """Coefficients of det(I - s g) in s, lowest first."""
        if not g:
            return (Fraction(1),)
        m = SympyMatrix([[Rational(x.numerator, x.denominator) for x in row] for row in g])
        # det(lambda I - g) = sum a_i lambda^(r-i), so det(I - s g) = sum a_i s^i
        return tuple(Fraction(int(c.p), int(c.q)) for c in m.charpoly().all_coeffs())

    def is_invariant(self, group: MatrixGroup, p: GradedPolynomial) -> bool:
        return all(act(g, p) == p for g in group.generators or group.elements)

    def invariant_basis(self, ring: InvariantRing, degree: int) -> List[GradedPolynomial]:
        """Reynolds-average each monomial of the degree, then row-reduce."""
        cached = ring.cached(degree)
        if cached is not None:
            return cached
        nvars = ring.nvars
        monomials = homogeneous_monomials(nvars, degree)
        if not monomials:
            return ring.store(degree, [])
        group = ring.group
        if group.is_trivial():
            basis = [GradedPolynomial(nvars, {m: 1}) for m in monomials]
            return ring.store(degree, basis)
        scale = Fraction(1, group.order)
        rows = []
        for mono in monomials:
            monomial = GradedPolynomial(nvars, {mono: 1})
            average = GradedPolynomial.zero(nvars)
            for g in group.elements:
                average = average + act(g, monomial)
            if average.is_zero():
                continue
            row = average.scale(scale).to_vector(monomials)
            rows.append(row)
        reduced, _ = rref(rows)
        basis = from_rows(nvars, reduced, monomials)
        logger.debug(f"Invariant basis in degree {degree}: {len(basis)} elements")
        return ring.store(degree, basis)

    def minimal_generators(self, ring: InvariantRing, truncation: int) -> List[Tuple[int, GradedPolynomial]]:
        """Greedy minimal generating set of the invariant ring up to the truncation."""
        nvars = ring.nvars
        return greedy_generators(
            basis_in_degree=lambda d: self.invariant_basis(ring, d),
            multiply=lambda gen, b: gen * b,
            to_vector=lambda d, p: p.to_vector(homogeneous_monomials(nvars, d)),
            from_vector=lambda d, row: GradedPolynomial.from_vector(
                nvars, homogeneous_monomials(nvars, d), row
            ),
            truncation=truncation,
            start=2,
        )

    def restrict(self, embedding: Matrix, p: GradedPolynomial) -> GradedPolynomial:
        """Pull p back along the torus embedding (rows: images of H coordinates)."""
        source_rank = len(embedding)
        if embedding and len(embedding[0]) != p.nvars:
            raise ShapeMismatchError(
                f"embedding has {len(embedding[0])} columns but p has {p.nvars} variables"
            )
        return p.substitute_linear(transpose(embedding, ncols=p.nvars), source_rank)

    def xi_invariants(self, dihedral: DihedralData, degree: int) -> List[GradedPolynomial]:
        """Degree-d basis of the Xi-invariants inside H*_H."""
        return self.invariant_basis(self.ring_for(dihedral.xi), degree)

    def quotient_action_effective(self, dihedral: DihedralData, truncation: int) -> bool:
        """Every element of Xi outside W(H) moves some W(H)-invariant of degree <= truncation."""
        ring_h = self.ring_for(dihedral.weyl_h)
        outside = [g for g in dihedral.xi.elements if g not in dihedral.weyl_h]
        for g in outside:
            moved = False
            for d in range(2, truncation + 1, 2):
                if any(act(g, b) != b for b in self.invariant_basis(ring_h, d)):
                    moved = True
                    break
            if not moved:
                return False
        return True


# Create service instance
invariant_service = InvariantService()
