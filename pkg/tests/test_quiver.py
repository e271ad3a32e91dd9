import pytest

from hallalg.errors import HallAlgError
from hallalg.quiver import Quiver, linear_quiver


def test_cycle_rejected():
    with pytest.raises(HallAlgError):
        Quiver(2, [(0, 1), (1, 0)])
    with pytest.raises(HallAlgError):
        Quiver(1, [(0, 0)])


def test_arrow_range_checked():
    with pytest.raises(HallAlgError):
        Quiver(2, [(0, 2)])


def test_finite_type_detection():
    assert linear_quiver(1).is_finite_type()
    assert linear_quiver(4).is_finite_type()
    assert Quiver(4, [(0, 3), (1, 3), (2, 3)]).is_finite_type()  # D4
    assert not Quiver(2, [(0, 1), (0, 1)]).is_finite_type()  # Kronecker
    # extended Dynkin A~2 as an acyclic orientation: 3-cycle broken open
    assert not Quiver(3, [(0, 1), (1, 2), (0, 2), (0, 2)]).is_finite_type()


def test_positive_root_counts():
    assert len(linear_quiver(1).positive_roots()) == 1
    assert len(linear_quiver(2).positive_roots()) == 3
    assert len(linear_quiver(3).positive_roots()) == 6
    assert len(linear_quiver(4).positive_roots()) == 10
    assert len(Quiver(4, [(0, 3), (1, 3), (2, 3)]).positive_roots()) == 12


def test_roots_are_sorted_and_unit_form():
    q = linear_quiver(3)
    roots = q.positive_roots()
    assert roots == sorted(roots)
    assert all(q.tits_form(d) == 1 for d in roots)


def test_non_finite_type_enumeration_rejected():
    kron = Quiver(2, [(0, 1), (0, 1)])
    with pytest.raises(HallAlgError):
        kron.positive_roots()


def test_paths_linear_orientation():
    q = linear_quiver(3)
    paths = q.paths_from(0)
    assert [(t, len(a)) for t, a in paths] == [(0, 0), (1, 1), (2, 2)]
    assert q.paths_from(2) == [(2, ())]
