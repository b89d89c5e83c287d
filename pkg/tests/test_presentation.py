from fractions import Fraction

import pytest

from cohomring.algebra.polynomial import GradedPolynomial
from cohomring.algebra.series import PoincareSeries, product_of_geometric
from cohomring.core.exceptions import SpecValidationError, WrongCaseError
from cohomring.models.action import ActionSpec, OrbitType, SubgroupDatum
from cohomring.models.cohomology import CaseTag, TrichotomyCase
from cohomring.models.shape import ShapeKind
from cohomring.services.cohomology_service import cohomology_service
from cohomring.services.group_service import group_service
from cohomring.services.presentation_service import presentation_service

N = 24

x1 = GradedPolynomial.variable(2, 0)
x2 = GradedPolynomial.variable(2, 1)


def exterior(series: PoincareSeries, degree: int) -> PoincareSeries:
    return series + series.shift(degree)


def test_trichotomy_su3_s7(su3_s7):
    report = presentation_service.trichotomy_classify(su3_s7, N)
    assert report.k == 3
    assert report.case == TrichotomyCase.III
    assert report.matched_cases == [TrichotomyCase.III]
    assert report.j == 1
    assert report.p_minus == x1 - x2
    assert report.p_plus == x1 + x2 * 2
    assert report.sphere_degree == 7
    assert report.sphere_class.degree == 6
    assert report.parity_ok
    assert report.effective


def test_trichotomy_su3_s7_eigenspaces(su3_s7):
    report = presentation_service.trichotomy_classify(su3_s7, 8)
    dims = {row.degree: row.dims for row in report.eigenspaces}
    # degree 2: the rotation acts on linear forms with eigenvalues zeta, zeta^2
    assert dims[2] == [0, 1, 1]
    assert dims[0] == [1, 0, 0]
    assert all(sum(row) == row_degree // 2 + 1 for row_degree, row in dims.items())


def test_trichotomy_case_one(bundled):
    for name in ("sp2", "su3_self", "suspension_su2"):
        report = presentation_service.trichotomy_classify(bundled(name), N)
        assert report.k == 1
        assert report.case == TrichotomyCase.I
        assert report.p == report.p_minus
        assert report.sphere_degree == 3
    assert presentation_service.trichotomy_classify(bundled("sp2"), N).p == x2


def test_trichotomy_case_two(bundled):
    report = presentation_service.trichotomy_classify(bundled("synthetic_k2"), N)
    assert report.k == 2
    assert report.case == TrichotomyCase.II
    assert report.p_minus == x2
    assert report.p_plus == x1
    assert report.sphere_class == x1 * x2
    assert report.sphere_degree == 5


def test_present_even_even_su3_s7(su3_s7):
    presentation = presentation_service.present_even_even(su3_s7, N)
    assert presentation.case == CaseTag.EVEN_EVEN
    assert presentation.shape.kind == ShapeKind.TENSOR_WITH_EXTERIOR
    assert [g.degree for g in presentation.generators if g.name != "z"] == [4, 6]
    assert presentation.sphere_degree == 7
    assert presentation.dihedral.k == 3
    assert presentation.series == exterior(product_of_geometric([4, 6], N), 7)


def test_present_even_even_other_specs(bundled):
    sp2 = presentation_service.present(bundled("sp2"), N)
    assert sp2.series == exterior(product_of_geometric([4, 4], N), 3)
    k2 = presentation_service.present(bundled("synthetic_k2"), N)
    assert k2.series == exterior(product_of_geometric([4, 4], N), 5)
    assert k2.relations == ["z^2 = 0"]


def test_present_odd_odd(s4):
    presentation = presentation_service.present_odd_odd(s4, N)
    assert presentation.shape.kind == ShapeKind.ADJOIN_TWO_NILPOTENTS
    assert [(g.name, g.degree) for g in presentation.generators] == [("e_minus", 4), ("e_plus", 4)]
    assert presentation.relations == ["e_minus*e_plus = 0"]
    assert [presentation.series[d] for d in range(0, 13, 4)] == [1, 2, 2, 2]


def test_present_odd_even(u2):
    presentation = presentation_service.present_odd_even(u2, N)
    assert presentation.shape.kind == ShapeKind.ODD_EVEN
    assert not presentation.legs_swapped
    names = [(g.name, g.degree) for g in presentation.generators]
    assert names == [("a1", 4), ("e", 4)]
    assert all(g.representative is not None for g in presentation.generators)
    assert [presentation.series[d] for d in range(0, 11, 2)] == [1, 0, 2, 1, 3, 2]


def test_present_odd_even_with_swapped_legs(u2):
    swapped = presentation_service.present(u2.swapped(), N)
    assert swapped.legs_swapped
    assert swapped.series == presentation_service.present(u2, N).series


def test_present_generic(bundled):
    presentation = presentation_service.present_generic(bundled("o3_o2"), N)
    assert presentation.case == CaseTag.GENERIC_MV
    assert presentation.shape.even_series == PoincareSeries.geometric(4, N)
    assert presentation.shape.odd_series == PoincareSeries.zero(N)
    assert [g.degree for g in presentation.generators] == [4]
    assert presentation.odd_generators == []


def test_generic_agrees_with_closed_forms(su3_s7):
    generic = presentation_service.present_generic(su3_s7, 16)
    closed = presentation_service.present_even_even(su3_s7, 16)
    assert generic.series == closed.series
    assert [g.degree for g in generic.odd_generators] == [7]


def test_mapping_torus(bundled):
    flip = presentation_service.mapping_torus_presentation(bundled("torus_flip"), N)
    assert flip.series == exterior(PoincareSeries.geometric(4, N), 1)
    identity = presentation_service.present(bundled("torus_identity"), N)
    assert identity.series == exterior(PoincareSeries.geometric(2, N), 1)
    assert identity.series[1] == 1


def test_mapping_torus_needs_a_normalizing_translation(bundled):
    zero = Fraction(0)
    singular = bundled("torus_flip").model_copy(update={"translation_aut": ((zero,),)})
    with pytest.raises(SpecValidationError, match="does not normalize"):
        presentation_service.mapping_torus_presentation(singular, N)

    reflection = ((Fraction(-1), zero), (zero, Fraction(1)))
    swap = ((zero, Fraction(1)), (Fraction(1), zero))
    K = SubgroupDatum(name="T2", rank=2, weyl=group_service.close_group([reflection], rank=2))
    swapped = ActionSpec(name="swap", orbit_type=OrbitType.CIRCLE, K=K, translation_aut=swap)
    assert not cohomology_service.validate(swapped, N).passed
    with pytest.raises(SpecValidationError, match="does not normalize"):
        presentation_service.present(swapped, N)


def test_wrong_case(bundled):
    with pytest.raises(WrongCaseError):
        presentation_service.present_odd_odd(bundled("su3_s7"), N)
    with pytest.raises(WrongCaseError):
        presentation_service.present_even_even(bundled("s4_oddodd"), N)
    with pytest.raises(WrongCaseError):
        presentation_service.mapping_torus_presentation(bundled("sp2"), N)
    with pytest.raises(WrongCaseError):
        presentation_service.present_generic(bundled("torus_flip"), N)


def test_sphere_class_representative_is_a_nonzero_odd_class(su3_s7):
    presentation = presentation_service.present_even_even(su3_s7, N)
    z = next(g for g in presentation.generators if g.name == "z")
    assert z.degree == 7
    assert not z.representative.is_zero()
    assert cohomology_service.is_member(su3_s7, z.representative)


def test_sphere_class_counts_lines(bundled):
    spec = bundled("synthetic_k2")
    dd = presentation_service.dihedral_for(spec)
    assert presentation_service.sphere_class(dd, x2, x1, 5) == x1 * x2
    scaled = presentation_service.sphere_class(dd, x2 * Fraction(-3), x1, 5)
    assert scaled == x1 * x2
