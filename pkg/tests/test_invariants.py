import pytest
from hypothesis import given, strategies as st

from cohomring.algebra.linalg import to_matrix
from cohomring.algebra.polynomial import GradedPolynomial
from cohomring.algebra.series import PoincareSeries, product_of_geometric
from cohomring.core.exceptions import EulerClassError
from cohomring.models.action import SubgroupDatum
from cohomring.services.cohomology_service import cohomology_service
from cohomring.services.group_service import act, group_service
from cohomring.services.invariant_service import invariant_service

N = 24

GROUPS = {
    "S3": group_service.weyl_standard("A", 3),
    "B2": group_service.weyl_standard("B", 2),
    "D3": group_service.weyl_standard("D", 3),
    "Z3": group_service.close_group([[[0, 1], [-1, -1]]]),
    "signs": group_service.close_group([[[1, 0], [0, -1]], [[-1, 0], [0, 1]]]),
    "trivial": group_service.weyl_standard("trivial", 2),
}


def test_molien_of_s3():
    assert invariant_service.molien(GROUPS["S3"], N) == product_of_geometric([4, 6], N)


def test_molien_of_b2():
    assert invariant_service.molien(GROUPS["B2"], N) == product_of_geometric([4, 8], N)


def test_molien_of_rank_zero_group():
    point = group_service.weyl_standard("trivial", 0)
    assert invariant_service.molien(point, N) == PoincareSeries.one(N)


@given(name=st.sampled_from(sorted(GROUPS)), degree=st.integers(min_value=0, max_value=16))
def test_molien_counts_invariants(name, degree):
    group = GROUPS[name]
    ring = invariant_service.ring_for(group)
    basis = invariant_service.invariant_basis(ring, degree)
    assert len(basis) == invariant_service.molien(group, N)[degree]
    assert all(invariant_service.is_invariant(group, b) for b in basis)


def test_ring_for_is_shared():
    assert invariant_service.ring_for(GROUPS["S3"]) is invariant_service.ring_for(GROUPS["S3"])


@pytest.mark.parametrize("name, degrees", [("S3", [4, 6]), ("B2", [4, 8]), ("D3", [4, 6, 8]), ("signs", [4, 4])])
def test_minimal_generator_degrees(name, degrees):
    ring = invariant_service.ring_for(GROUPS[name])
    assert [d for d, _ in invariant_service.minimal_generators(ring, 16)] == degrees


def test_z3_needs_more_generators_than_rank():
    ring = invariant_service.ring_for(GROUPS["Z3"])
    degrees = [d for d, _ in invariant_service.minimal_generators(ring, 16)]
    assert degrees[0] == 4
    assert len(degrees) > 2


def test_restrict_along_embedding():
    e1 = GradedPolynomial.variable(2, 0)
    e2 = GradedPolynomial.variable(2, 1)
    h = GradedPolynomial.variable(1, 0)
    embedding = to_matrix([[0, 1]])
    assert invariant_service.restrict(embedding, e1 + e2) == h
    assert invariant_service.restrict(embedding, e1 * e2).is_zero()
    point = invariant_service.restrict((), e1 * e1 + GradedPolynomial.one(2))
    assert point == GradedPolynomial.one(0)


def test_euler_generator_u2_over_u1():
    u2 = SubgroupDatum(name="U(2)", rank=2, weyl=group_service.close_group([[[0, 1], [1, 0]]]))
    u1 = SubgroupDatum(name="U(1)", rank=1, weyl=group_service.weyl_standard("trivial", 1))
    e = cohomology_service.euler_generator(u2, u1, to_matrix([[0, 1]]), 3, 20)
    assert e == GradedPolynomial.variable(2, 0) * GradedPolynomial.variable(2, 1)
    assert e.degree == 4


def test_euler_generator_su2_over_point():
    su2 = SubgroupDatum(name="SU(2)", rank=1, weyl=group_service.weyl_standard("A", 2))
    point = SubgroupDatum(name="1", rank=0, weyl=group_service.weyl_standard("trivial", 0))
    x = GradedPolynomial.variable(1, 0)
    assert cohomology_service.euler_generator(su2, point, (), 3, 20) == x * x


def test_euler_generator_rejects_bad_legs():
    su2 = SubgroupDatum(name="SU(2)", rank=1, weyl=group_service.weyl_standard("A", 2))
    u1 = SubgroupDatum(name="U(1)", rank=1, weyl=group_service.weyl_standard("trivial", 1))
    with pytest.raises(EulerClassError):
        cohomology_service.euler_generator(su2, u1, to_matrix([[1]]), 2, 20)
    with pytest.raises(EulerClassError):
        cohomology_service.euler_generator(su2, u1, to_matrix([[1]]), 3, 20)


def test_quotient_action_is_effective():
    trivial = GROUPS["trivial"]
    dd = group_service.dihedral_parameters(
        trivial,
        group_service.close_group([[[0, 1], [1, 0]]]),
        group_service.close_group([[[1, 0], [-1, -1]]]),
    )
    assert invariant_service.quotient_action_effective(dd, 8)
    for b in invariant_service.xi_invariants(dd, 4):
        assert all(act(g, b) == b for g in dd.xi.elements)
    assert len(invariant_service.xi_invariants(dd, 4)) == 1
