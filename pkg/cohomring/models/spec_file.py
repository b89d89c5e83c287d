from fractions import Fraction
from typing import List, Optional, Union

from pydantic import BaseModel, ConfigDict, StrictInt, StrictStr, field_validator, model_validator

# Matrix entries are integers or exact rational strings such as "-1/2"
Entry = Union[StrictInt, StrictStr]
RawMatrix = List[List[Entry]]


def parse_entry(value: Entry) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a rational number: {value!r}")


def parse_matrix(rows: RawMatrix) -> List[List[Fraction]]:
    return [[parse_entry(x) for x in row] for row in rows]


class WeylBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Optional[str] = None  # A, B, C, D, torus, trivial
    n: Optional[int] = None
    generators: Optional[List[RawMatrix]] = None

    @field_validator("generators")
    @classmethod
    def check_square(cls, generators):
        if generators is None:
            return generators
        for i, g in enumerate(generators):
            size = len(g)
            for row in g:
                if len(row) != size:
                    raise ValueError(
                        f"Weyl generator {i} is not square: {size} rows but a row of length {len(row)}"
                    )
            parse_matrix(g)
        return generators

    @model_validator(mode="after")
    def check_form(self):
        if (self.type is None) == (self.generators is None):
            raise ValueError("weyl needs exactly one of 'type' or 'generators'")
        if self.type is not None and self.n is None:
            raise ValueError("weyl 'type' needs 'n'")
        return self


class SubgroupBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    rank: int
    weyl: WeylBlock


class LegBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subgroup: SubgroupBlock
    embedding: RawMatrix
    sphere_dimension: int
    orientable: bool = True

    @field_validator("embedding")
    @classmethod
    def check_entries(cls, embedding):
        parse_matrix(embedding)
        return embedding


class AmbientBlock(BaseModel):
    model_config = ConfigDict(extra="forbid")

    subgroup: SubgroupBlock
    embedding_minus: RawMatrix
    embedding_plus: RawMatrix


class SpecFile(BaseModel):
    """Raw spec-file document, before groups are enumerated."""

    model_config = ConfigDict(extra="forbid")

    name: str
    orbit: str = "interval"  # interval, circle
    description: Optional[str] = None

    # interval
    H: Optional[SubgroupBlock] = None
    minus: Optional[LegBlock] = None
    plus: Optional[LegBlock] = None
    G: Optional[AmbientBlock] = None

    # circle
    K: Optional[SubgroupBlock] = None
    translation_aut: Optional[RawMatrix] = None

    @field_validator("orbit")
    @classmethod
    def check_orbit(cls, orbit):
        if orbit not in ("interval", "circle"):
            raise ValueError(f"orbit must be 'interval' or 'circle', got {orbit!r}")
        return orbit

    @model_validator(mode="after")
    def check_blocks(self):
        if self.orbit == "interval":
            missing = [key for key in ("H", "minus", "plus") if getattr(self, key) is None]
            if missing:
                raise ValueError(f"interval spec is missing {', '.join(missing)}")
        else:
            missing = [key for key in ("K", "translation_aut") if getattr(self, key) is None]
            if missing:
                raise ValueError(f"circle spec is missing {', '.join(missing)}")
        return self
