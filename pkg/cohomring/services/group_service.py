from collections import deque
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from cohomring.algebra.linalg import identity, inverse, is_invertible, matmul, to_matrix
from cohomring.algebra.polynomial import GradedPolynomial
from cohomring.core.config import settings
from cohomring.core.exceptions import (
    EngineError,
    GroupCapExceededError,
    IndexTwoError,
    ShapeMismatchError,
)
from cohomring.models.group import DihedralData, Matrix, MatrixGroup
import logging

logger = logging.getLogger(__name__)

WEYL_TYPES = ("A", "B", "C", "D", "torus", "trivial")


def act(g: Matrix, p: GradedPolynomial) -> GradedPolynomial:
    """Substitute each variable by its image row under g."""
    return p.substitute_linear(g, len(g))


def _permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Row i is the unit vector e_{perm[i]}."""
    n = len(perm)
    return to_matrix([[1 if j == perm[i] else 0 for j in range(n)] for i in range(n)])


class GroupService:
    def __init__(self):
        pass

    def close_group(
        self,
        generators: Iterable[Sequence[Sequence]],
        cap: Optional[int] = None,
        rank: Optional[int] = None,
    ) -> MatrixGroup:
        """Enumerate the group generated by invertible square matrices."""
        cap = settings.group_cap if cap is None else cap
        gens: List[Matrix] = [to_matrix(g) for g in generators]
        if rank is None:
            if not gens:
                raise ShapeMismatchError("rank is required for a group without generators")
            rank = len(gens[0])
        for g in gens:
            if len(g) != rank or any(len(row) != rank for row in g):
                raise ShapeMismatchError(f"generator is not {rank}x{rank}: {g}")
            if not is_invertible(g):
                raise ShapeMismatchError(f"generator is singular: {g}")

        one = identity(rank)
        elements: List[Matrix] = [one]
        seen = {one}
        queue = deque([one])
        while queue:
            current = queue.popleft()
            for g in gens:
                product = matmul(current, g)
                if product in seen:
                    continue
                if len(elements) >= cap:
                    raise GroupCapExceededError(
                        f"group enumeration exceeded the cap of {cap} elements"
                    )
                seen.add(product)
                elements.append(product)
                queue.append(product)

        logger.debug(f"Enumerated group of order {len(elements)} in rank {rank}")
        return MatrixGroup(rank=rank, generators=tuple(gens), elements=tuple(elements))

    def weyl_standard(self, kind: str, n: int) -> MatrixGroup:
        """Standard Weyl group action on rank-n coordinates (A uses the sum-zero model)."""
        if kind not in WEYL_TYPES:
            raise EngineError(f"unknown Weyl type {kind!r}; expected one of {', '.join(WEYL_TYPES)}")
        if kind in ("torus", "trivial"):
            if n < 0:
                raise EngineError(f"rank must be non-negative, got {n}")
            return self.close_group([], rank=n)
        if n < 1:
            raise EngineError(f"Weyl type {kind} needs n >= 1, got {n}")

        if kind == "A":
            # S_n permuting t_1..t_n on the sum-zero model, t_n eliminated
            return self.close_group(
                [self._sum_zero_transposition(n, i) for i in range(n - 1)], rank=n - 1
            )

        gens = []
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            gens.append(_permutation_matrix(perm))
        if kind in ("B", "C"):
            flip = [list(row) for row in identity(n)]
            flip[n - 1][n - 1] = Fraction(-1)
            gens.append(to_matrix(flip))
        elif kind == "D" and n >= 2:
            swap = [list(row) for row in identity(n)]
            swap[n - 2][n - 2] = swap[n - 1][n - 1] = Fraction(0)
            swap[n - 2][n - 1] = swap[n - 1][n - 2] = Fraction(-1)
            gens.append(to_matrix(swap))
        return self.close_group(gens, rank=n)

    def _sum_zero_transposition(self, m: int, i: int) -> Matrix:
        """Transposition (t_{i+1} t_{i+2}) of S_m on coordinates t_1..t_{m-1}."""
        rank = m - 1
        perm = list(range(m))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        rows = []
        for a in range(rank):
            target = perm[a]
            if target == m - 1:
                rows.append([-1] * rank)
            else:
                rows.append([1 if b == target else 0 for b in range(rank)])
        return to_matrix(rows)

    def index_two_check(self, weyl_h: MatrixGroup, weyl_k: MatrixGroup) -> Matrix:
        """Return some w in W(K) outside W(H), after checking W(H) is normal of index two."""
        if weyl_h.rank != weyl_k.rank:
            raise IndexTwoError(f"ranks differ: {weyl_h.rank} and {weyl_k.rank}")
        if not weyl_h.issubset(weyl_k):
            raise IndexTwoError("W(H) is not a subgroup of W(K)")
        if weyl_k.order != 2 * weyl_h.order:
            raise IndexTwoError(
                f"index of W(H) in W(K) is {Fraction(weyl_k.order, weyl_h.order)}, not 2"
            )
        w = next(g for g in weyl_k.elements if g not in weyl_h)
        w_inv = inverse(w)
        for h in weyl_h.elements:
            if matmul(matmul(w, h), w_inv) not in weyl_h:
                raise IndexTwoError("W(H) is not normal in W(K)")
        return w

    def dihedral_parameters(
        self, weyl_h: MatrixGroup, weyl_minus: MatrixGroup, weyl_plus: MatrixGroup
    ) -> DihedralData:
        """Coset representatives w-, w+, the order k of w+ w- modulo W(H), and Xi."""
        try:
            w_minus = self.index_two_check(weyl_h, weyl_minus)
            w_plus = self.index_two_check(weyl_h, weyl_plus)
            rotation = matmul(w_plus, w_minus)
            k, power = 1, rotation
            while power not in weyl_h:
                k += 1
                power = matmul(power, rotation)
                if k > settings.group_cap:
                    raise GroupCapExceededError(
                        f"w+ w- has no power in W(H) below {settings.group_cap}"
                    )
            base = list(weyl_h.generators) or list(weyl_h.elements[1:])
            xi = self.close_group(base + [w_minus, w_plus], rank=weyl_h.rank)
            logger.info(f"Dihedral quotient: k = {k}, |Xi| = {xi.order}, |W(H)| = {weyl_h.order}")
            return DihedralData(k=k, w_minus=w_minus, w_plus=w_plus, weyl_h=weyl_h, xi=xi)
        except EngineError:
            raise
        except Exception as e:
            logger.error(f"Failed to compute dihedral parameters: {e}")
            raise EngineError(f"Failed to compute dihedral parameters: {e}")

    def aut_normalizes(self, matrix: Sequence[Sequence], weyl: MatrixGroup) -> bool:
        """True iff M W M^-1 = W as sets."""
        m = to_matrix(matrix)
        if len(m) != weyl.rank or not is_invertible(m):
            return False
        if weyl.rank == 0:
            return True
        m_inv = inverse(m)
        return all(matmul(matmul(m, g), m_inv) in weyl for g in weyl.elements)

    def element_order(self, g: Matrix, cap: Optional[int] = None) -> int:
        cap = settings.group_cap if cap is None else cap
        one = identity(len(g))
        power, order = g, 1
        while power != one:
            power = matmul(power, g)
            order += 1
            if order > cap:
                raise GroupCapExceededError(f"element order exceeds {cap}")
        return order


# Create service instance
group_service = GroupService()
