from cohomring.algebra.series import PoincareSeries, product_of_geometric
from cohomring.core.exceptions import UnsupportedShapeError
from cohomring.models.shape import PresentationShape, ShapeKind


def _base(shape: PresentationShape, truncation: int) -> PoincareSeries:
    if shape.base_series is not None:
        if shape.base_series.truncation < truncation:
            raise UnsupportedShapeError(
                f"base series known to degree {shape.base_series.truncation}, need {truncation}"
            )
        return shape.base_series.truncate(truncation)
    if any(d <= 0 for d in shape.generator_degrees):
        raise UnsupportedShapeError(f"generator degrees must be positive: {shape.generator_degrees}")
    return product_of_geometric(shape.generator_degrees, truncation)


def _nilpotent_tail(degree: int, truncation: int) -> PoincareSeries:
    """t^a / (1 - t^a)."""
    return PoincareSeries.geometric(degree, truncation).shift(degree)


def _require(series, what: str, truncation: int) -> PoincareSeries:
    if series is None:
        raise UnsupportedShapeError(f"shape is missing its {what}")
    if series.truncation < truncation:
        raise UnsupportedShapeError(f"{what} known to degree {series.truncation}, need {truncation}")
    return series.truncate(truncation)


def series_from_shape(shape: PresentationShape, truncation: int) -> PoincareSeries:
    """Graded dimension series of a presentation shape to the given truncation."""
    kind = shape.kind
    if kind == ShapeKind.FREE_POLYNOMIAL:
        return _base(shape, truncation)

    if kind == ShapeKind.TENSOR_WITH_EXTERIOR:
        if shape.exterior_degree is None or shape.exterior_degree <= 0:
            raise UnsupportedShapeError("tensor-with-exterior needs a positive exterior degree")
        base = _base(shape, truncation)
        return base + base.shift(shape.exterior_degree)

    if kind == ShapeKind.ADJOIN_TWO_NILPOTENTS:
        if len(shape.nilpotent_degrees) != 2 or min(shape.nilpotent_degrees) <= 0:
            raise UnsupportedShapeError("adjoin-two-nilpotents needs two positive degrees")
        a, b = shape.nilpotent_degrees
        factor = (
            PoincareSeries.one(truncation)
            + _nilpotent_tail(a, truncation)
            + _nilpotent_tail(b, truncation)
        )
        return _base(shape, truncation) * factor

    if kind == ShapeKind.ODD_EVEN:
        if len(shape.nilpotent_degrees) != 1 or shape.nilpotent_degrees[0] <= 0:
            raise UnsupportedShapeError("odd-even needs exactly one Euler class degree")
        a = shape.nilpotent_degrees[0]
        summand = _require(shape.summand_series, "summand series", truncation)
        return summand + _base(shape, truncation) * _nilpotent_tail(a, truncation)

    if kind == ShapeKind.FIBER_PRODUCT_GENERIC:
        even = _require(shape.even_series, "even series", truncation)
        odd = _require(shape.odd_series, "odd series", truncation)
        return even + odd

    raise UnsupportedShapeError(f"unsupported shape {kind}")
