from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from cohomring.models.group import Matrix, MatrixGroup


class OrbitType(str, Enum):
    INTERVAL = "interval"
    CIRCLE = "circle"


class SubgroupDatum(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    rank: int = Field(ge=0)
    weyl: MatrixGroup

    @model_validator(mode="after")
    def check_weyl_rank(self):
        if self.weyl.rank != self.rank:
            raise ValueError(
                f"Weyl group of {self.name} acts in rank {self.weyl.rank}, expected {self.rank}"
            )
        return self


class Leg(BaseModel):
    """One singular orbit G/K of the interval.

    embedding has one row per torus coordinate of H, giving its image in
    the torus of K. sphere_dimension is dim K/H.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    subgroup: SubgroupDatum
    embedding: Matrix
    sphere_dimension: int = Field(ge=0)
    orientable: bool = True

    @property
    def is_odd(self) -> bool:
        return self.sphere_dimension % 2 == 1


class AmbientGroup(BaseModel):
    """Optional G block; embeddings map each K torus into the torus of G."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    subgroup: SubgroupDatum
    embedding_minus: Matrix
    embedding_plus: Matrix


class ActionSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = "unnamed"
    orbit_type: OrbitType = OrbitType.INTERVAL

    # interval
    H: Optional[SubgroupDatum] = None
    minus: Optional[Leg] = None
    plus: Optional[Leg] = None
    G: Optional[AmbientGroup] = None

    # circle
    K: Optional[SubgroupDatum] = None
    translation_aut: Optional[Matrix] = None

    @model_validator(mode="after")
    def check_blocks(self):
        if self.orbit_type == OrbitType.INTERVAL:
            if self.H is None or self.minus is None or self.plus is None:
                raise ValueError("interval specs need H and both legs")
            for label, leg in (("minus", self.minus), ("plus", self.plus)):
                _check_shape(leg.embedding, self.H.rank, leg.subgroup.rank, f"{label} embedding")
            if self.G is not None:
                _check_shape(
                    self.G.embedding_minus, self.minus.subgroup.rank, self.G.subgroup.rank,
                    "G embedding_minus",
                )
                _check_shape(
                    self.G.embedding_plus, self.plus.subgroup.rank, self.G.subgroup.rank,
                    "G embedding_plus",
                )
        else:
            if self.K is None or self.translation_aut is None:
                raise ValueError("circle specs need K and translation_aut")
            _check_shape(self.translation_aut, self.K.rank, self.K.rank, "translation_aut")
        return self

    @property
    def Kminus(self) -> SubgroupDatum:
        return self.minus.subgroup

    @property
    def Kplus(self) -> SubgroupDatum:
        return self.plus.subgroup

    @property
    def n_minus(self) -> int:
        return self.minus.sphere_dimension

    @property
    def n_plus(self) -> int:
        return self.plus.sphere_dimension

    def swapped(self) -> "ActionSpec":
        """The same action with the two legs exchanged."""
        ambient = None
        if self.G is not None:
            ambient = AmbientGroup(
                subgroup=self.G.subgroup,
                embedding_minus=self.G.embedding_plus,
                embedding_plus=self.G.embedding_minus,
            )
        return self.model_copy(update={"minus": self.plus, "plus": self.minus, "G": ambient})


def _check_shape(matrix: Matrix, rows: int, cols: int, what: str) -> None:
    if len(matrix) != rows or any(len(row) != cols for row in matrix):
        got_cols = len(matrix[0]) if matrix else cols
        raise ValueError(f"{what} must be {rows}x{cols}, got {len(matrix)}x{got_cols}")
