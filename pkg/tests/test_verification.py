import pytest

from cohomring.algebra.shapes import series_from_shape
from cohomring.services.cohomology_service import S0_REASON
from cohomring.services.presentation_service import presentation_service
from cohomring.services.spec_service import spec_service
from cohomring.services.verification_service import verification_service
from tests.test_cohomology import MISLABELED_A2

N = 16


@pytest.mark.parametrize("name", ["su3_self", "su3_s7", "s4_oddodd", "u2_oddeven", "o3_o2", "torus_flip"])
def test_compare_series_passes(bundled, name):
    report = verification_service.compare_series(bundled(name), N)
    assert report.first_mismatch is None
    assert len(report.rows) == N + 1
    assert all(row.match and row.exactness_defect == 0 for row in report.rows)


def test_corrupted_exterior_degree_is_caught(bundled):
    spec = bundled("su3_self")
    presentation = presentation_service.present(spec, N)
    shape = presentation.shape.model_copy(update={"exterior_degree": 5})
    corrupted = presentation.model_copy(update={"shape": shape, "series": series_from_shape(shape, N)})
    report = verification_service.compare_series(spec, N, corrupted)
    assert report.first_mismatch == 3
    row = report.rows[3]
    assert (row.odd_mv, row.odd_presentation) == (1, 0)
    assert report.verdict == "fail"


def test_spotchecks_are_seeded(su3_s7):
    first = verification_service.product_spotchecks(su3_s7, trials=4, seed=11, truncation=12)
    second = verification_service.product_spotchecks(su3_s7, trials=4, seed=11, truncation=12)
    assert first == second
    assert first
    assert all(check.passed for check in first)


def test_relation_checks_for_odd_odd(s4):
    presentation = presentation_service.present(s4, N)
    checks = verification_service.product_spotchecks(s4, trials=2, seed=1, truncation=N, presentation=presentation)
    names = {check.name for check in checks}
    assert "e_minus*e_plus = 0" in names
    assert all(check.passed for check in checks)


def test_relation_checks_for_sphere_class(suspension):
    presentation = presentation_service.present(suspension, N)
    checks = verification_service.product_spotchecks(
        suspension, trials=1, seed=3, truncation=N, presentation=presentation
    )
    assert {"z^2 = 0", "sphere class is nonzero"} <= {check.name for check in checks}
    assert all(check.passed for check in checks)


def test_freeness_rows_fail_for_mislabeled_pair():
    rows = verification_service.freeness_checks(spec_service.parse(MISLABELED_A2), N)
    assert [row.leg for row in rows] == ["minus", "plus"]
    assert all(not row.passed and row.first_failure == 2 for row in rows)


def test_freeness_skips_s0_legs(bundled):
    rows = verification_service.freeness_checks(bundled("so3_rp3"), N)
    assert all(row.skipped and row.reason == S0_REASON for row in rows)


def test_freeness_identity_text(u2):
    rows = verification_service.freeness_checks(u2, N)
    assert rows[0].identity == "P_H = P_K (1 + t^2)"
    assert rows[1].identity == "P_H = P_K (1 - t^4)"
    assert all(row.passed for row in rows)


def test_verify_reports_pass(bundled):
    report = verification_service.verify(bundled("sp2"), 12, trials=3, seed=5)
    assert report.verdict == "pass"
    assert report.presentation_error is None
    assert report.spotchecks
    assert len(report.freeness) == 2


def test_circle_spec_has_no_product_checks(bundled):
    report = verification_service.verify(bundled("torus_identity"), 10, trials=3, seed=5)
    assert report.spotchecks == []
    assert report.freeness == []
    assert report.verdict == "pass"
