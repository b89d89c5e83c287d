import pytest

from cohomring.algebra.linalg import to_matrix
from cohomring.core.exceptions import EngineError, GroupCapExceededError, IndexTwoError, ShapeMismatchError
from cohomring.services.group_service import group_service

SWAP = to_matrix([[0, 1], [1, 0]])
REFLECT = to_matrix([[1, 0], [-1, -1]])


@pytest.mark.parametrize(
    "kind, n, rank, order",
    [
        ("A", 2, 1, 2),
        ("A", 3, 2, 6),
        ("A", 4, 3, 24),
        ("B", 2, 2, 8),
        ("C", 3, 3, 48),
        ("D", 2, 2, 4),
        ("D", 3, 3, 24),
        ("torus", 2, 2, 1),
        ("trivial", 0, 0, 1),
    ],
)
def test_weyl_standard_orders(kind, n, rank, order):
    group = group_service.weyl_standard(kind, n)
    assert group.rank == rank
    assert group.order == order


def test_weyl_standard_rejects_unknown_type():
    with pytest.raises(EngineError):
        group_service.weyl_standard("G", 2)


def test_close_group_identity_first_and_deduplicated():
    group = group_service.close_group([SWAP, REFLECT])
    assert group.order == 6
    assert group.elements[0] == to_matrix([[1, 0], [0, 1]])
    assert len(set(group.elements)) == 6
    assert SWAP in group


def test_close_group_cap():
    shear = [[1, 1], [0, 1]]
    with pytest.raises(GroupCapExceededError):
        group_service.close_group([shear], cap=50)


def test_close_group_rejects_bad_generators():
    with pytest.raises(ShapeMismatchError):
        group_service.close_group([[[1, 0]]])
    with pytest.raises(ShapeMismatchError):
        group_service.close_group([[[1, 2], [2, 4]]])


def test_index_two_check():
    trivial = group_service.weyl_standard("trivial", 1)
    sign = group_service.weyl_standard("A", 2)
    assert group_service.index_two_check(trivial, sign) == to_matrix([[-1]])
    with pytest.raises(IndexTwoError):
        group_service.index_two_check(group_service.weyl_standard("trivial", 2), group_service.weyl_standard("A", 3))


def test_dihedral_parameters_su3():
    trivial = group_service.weyl_standard("trivial", 2)
    minus = group_service.close_group([SWAP])
    plus = group_service.close_group([REFLECT])
    dd = group_service.dihedral_parameters(trivial, minus, plus)
    assert dd.k == 3
    assert dd.xi.order == 6
    assert dd.quotient_order == 6
    assert dd.w_minus == SWAP
    assert dd.w_plus == REFLECT


def test_dihedral_parameters_commuting_reflections():
    trivial = group_service.weyl_standard("trivial", 2)
    minus = group_service.close_group([[[1, 0], [0, -1]]])
    plus = group_service.close_group([[[-1, 0], [0, 1]]])
    dd = group_service.dihedral_parameters(trivial, minus, plus)
    assert dd.k == 2
    assert dd.xi.order == 4


def test_aut_normalizes_and_element_order():
    s3 = group_service.weyl_standard("A", 3)
    assert group_service.aut_normalizes(SWAP, s3)
    assert not group_service.aut_normalizes([[2, 0], [0, 1]], s3)
    assert group_service.element_order(to_matrix([[0, 1], [-1, -1]])) == 3
