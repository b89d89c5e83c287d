from fractions import Fraction
from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr

Matrix = Tuple[Tuple[Fraction, ...], ...]


class MatrixGroup(BaseModel):
    """A fully enumerated finite group of rational r x r matrices.

    elements is deduplicated with the identity first. Built by
    group_service.close_group; construct directly only from trusted data.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rank: int = Field(ge=0)
    generators: Tuple[Matrix, ...] = ()
    elements: Tuple[Matrix, ...]

    _index: Dict[Matrix, int] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        self._index = {m: i for i, m in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, matrix: Matrix) -> bool:
        return matrix in self._index

    def index(self, matrix: Matrix) -> int:
        return self._index[matrix]

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def issubset(self, other: "MatrixGroup") -> bool:
        return self.rank == other.rank and all(m in other for m in self.elements)

    def same_elements(self, other: "MatrixGroup") -> bool:
        return self.order == other.order and self.issubset(other)


class DihedralData(BaseModel):
    """Xi = <W(H), w-, w+> with k the order of w+ w- modulo W(H)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    k: int = Field(ge=1)
    w_minus: Matrix
    w_plus: Matrix
    weyl_h: MatrixGroup
    xi: MatrixGroup

    @property
    def quotient_order(self) -> int:
        return self.xi.order // self.weyl_h.order
