"""End-to-end checks on the bundled specs at truncation 40."""
import pytest

from cohomring.algebra.series import PoincareSeries, product_of_geometric
from cohomring.models.cohomology import CaseTag, TrichotomyCase
from cohomring.services.cohomology_service import S0_REASON, cohomology_service
from cohomring.services.group_service import group_service
from cohomring.services.presentation_service import presentation_service
from cohomring.services.verification_service import verification_service

N = 40


def with_exterior(series: PoincareSeries, degree: int) -> PoincareSeries:
    return series + series.shift(degree)


def test_o3_o2_is_a_polynomial_ring(bundled):
    presentation = presentation_service.present_generic(bundled("o3_o2"), N)
    assert presentation.shape.even_series == PoincareSeries.geometric(4, N)
    assert presentation.shape.odd_series == PoincareSeries.zero(N)
    assert [g.degree for g in presentation.generators] == [4]


def test_su3_on_s7(su3_s7):
    dd = presentation_service.dihedral_for(su3_s7)
    assert dd.k == 3
    presentation = presentation_service.present_even_even(su3_s7, N)
    assert sorted(g.degree for g in presentation.generators if g.name != "z") == [4, 6]
    assert presentation.sphere_degree == 7
    assert presentation.series == with_exterior(product_of_geometric([4, 6], N), 7)
    assert verification_service.compare_series(su3_s7, N, presentation).first_mismatch is None


def test_su3_on_itself(bundled):
    spec = bundled("su3_self")
    presentation = presentation_service.present(spec, N)
    assert presentation.dihedral.k == 1
    assert presentation.trichotomy.case == TrichotomyCase.I
    assert presentation.series == with_exterior(PoincareSeries.geometric(4, N), 3)
    assert verification_service.compare_series(spec, N, presentation).first_mismatch is None


def test_sp2(bundled):
    spec = bundled("sp2")
    presentation = presentation_service.present(spec, N)
    assert presentation.dihedral.k == 1
    assert presentation.sphere_degree == 3
    assert presentation.series == with_exterior(product_of_geometric([4, 4], N), 3)
    assert verification_service.compare_series(spec, N, presentation).first_mismatch is None


def test_rp3_connected_sum_is_rejected(bundled):
    spec = bundled("so3_rp3")
    report = cohomology_service.validate(spec, N)
    assert not report.passed
    assert any(check.reason == S0_REASON for check in report.failures)
    classification = cohomology_service.classify(spec)
    assert classification.case == CaseTag.GENERIC_MV
    assert classification.reason == S0_REASON


def test_s4_double_cone(s4):
    presentation = presentation_service.present(s4, N)
    expected = [1 if d == 0 else 2 if d % 4 == 0 else 0 for d in range(N + 1)]
    assert presentation.series == PoincareSeries(N, expected)
    checks = verification_service.product_spotchecks(s4, trials=5, seed=0, truncation=N, presentation=presentation)
    relation = next(check for check in checks if check.name == "e_minus*e_plus = 0")
    assert relation.passed


def test_u2_odd_even(u2):
    presentation = presentation_service.present(u2, N)
    report = verification_service.compare_series(u2, N, presentation)
    assert report.first_mismatch is None
    dims = cohomology_service.mv_dimensions(u2, N)
    assert [int(presentation.series[d]) for d in range(N + 1)] == [even + odd for even, odd in dims]


@pytest.mark.parametrize(
    "name, base_degree",
    [("torus_flip", 4), ("torus_identity", 2)],
)
def test_mapping_tori(bundled, name, base_degree):
    spec = bundled(name)
    presentation = presentation_service.present(spec, N)
    assert presentation.series == with_exterior(PoincareSeries.geometric(base_degree, N), 1)
    assert verification_service.compare_series(spec, N, presentation).first_mismatch is None
    assert group_service.aut_normalizes(spec.translation_aut, spec.K.weyl)
