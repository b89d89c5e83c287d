from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from cohomring.algebra.series import PoincareSeries


class ShapeKind(str, Enum):
    FREE_POLYNOMIAL = "free-polynomial"
    TENSOR_WITH_EXTERIOR = "tensor-with-exterior"
    ADJOIN_TWO_NILPOTENTS = "adjoin-two-nilpotents"
    ODD_EVEN = "odd-even"
    FIBER_PRODUCT_GENERIC = "fiber-product-generic"


class PresentationShape(BaseModel):
    """Relation pattern of a presentation, enough to recover its series.

    base_series overrides the free polynomial ring on generator_degrees when
    the base ring is given only through its Molien series.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: ShapeKind
    generator_degrees: List[int] = Field(default_factory=list)
    base_series: Optional[PoincareSeries] = None
    exterior_degree: Optional[int] = None  # tensor-with-exterior
    nilpotent_degrees: List[int] = Field(default_factory=list)  # adjoin-two-nilpotents, odd-even
    summand_series: Optional[PoincareSeries] = None  # odd-even: series of H*_{K-}
    even_series: Optional[PoincareSeries] = None  # fiber-product-generic
    odd_series: Optional[PoincareSeries] = None  # fiber-product-generic
