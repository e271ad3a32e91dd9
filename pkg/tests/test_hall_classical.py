import itertools
from fractions import Fraction

import pytest

from hallalg.errors import MismatchError
from hallalg.hall_classical import ClassicalHall, HallElement
from hallalg.verify import verify_assoc, verify_unit


@pytest.fixture(scope="module")
def alg1(a1p2):
    return ClassicalHall(a1p2)


@pytest.fixture(scope="module")
def alg2(a2p2):
    return ClassicalHall(a2p2)


def test_hall_element_arithmetic(a1p2):
    s = a1p2.simple_class(0)
    zero = a1p2.zero_class()
    el = HallElement([(s, 1), (zero, Fraction(1, 2))])
    el2 = el + el.scaled(-1)
    assert el2 == HallElement()
    el3 = el.scaled(2) - el
    assert el3 == el
    assert el[s] == 1 and el[a1p2.iso_class({0: 2})] == 0


def test_hall_number_examples(alg1, a1p2):
    s = a1p2.simple_class(0)
    ss = a1p2.iso_class({0: 2})
    assert alg1.hall_number(s, s, ss) == 3
    # dimension-vector mismatch
    assert alg1.hall_number(s, s, a1p2.iso_class({0: 3})) == 0


def test_hall_number_q_plus_one(a1p3):
    alg = ClassicalHall(a1p3)
    s = a1p3.simple_class(0)
    assert alg.hall_number(s, s, a1p3.iso_class({0: 2})) == 4


def test_hall_number_a2_examples(alg2, a2p2):
    s1 = a2p2.class_by_name("S1")
    s2 = a2p2.class_by_name("S2")
    x = a2p2.class_by_name("X12")
    assert alg2.hall_number(s2, s1, x) == 1
    assert alg2.hall_number(s1, s2, x) == 0


def test_product_examples(alg2, a2p2):
    s1 = a2p2.class_by_name("S1")
    s2 = a2p2.class_by_name("S2")
    x = a2p2.class_by_name("X12")
    both = a2p2.iso_class({a2p2.indec_names().index("S1"): 1,
                           a2p2.indec_names().index("S2"): 1})
    assert alg2.product_classes(s1, s2) == HallElement([(both, 1)])
    assert alg2.product_classes(s2, s1) == HallElement([(both, 1), (x, 1)])
    assert alg2.product(alg2.unit(), HallElement([(x, 1)])) == HallElement([(x, 1)])


def test_product_grading(alg2, a2p2):
    for x, y in itertools.product(a2p2.classes_up_to_dim(2), repeat=2):
        dims = tuple(a + b for a, b in zip(x.dims, y.dims))
        for z, coeff in alg2.product_classes(x, y).items():
            assert z.dims == dims
            assert coeff > 0


def test_orbit_check_examples(alg1, alg2, a1p2, a2p2):
    s = a1p2.simple_class(0)
    ss = a1p2.iso_class({0: 2})
    assert alg1.orbit_check(s, s, ss) == Fraction(3)
    s1 = a2p2.class_by_name("S1")
    s2 = a2p2.class_by_name("S2")
    x = a2p2.class_by_name("X12")
    assert alg2.orbit_check(s2, s1, x) == Fraction(1)
    assert alg2.orbit_check(s1, s2, x) == Fraction(0)


@pytest.mark.parametrize("fixture_name,max_dim",
                         [("a1p2", 4), ("a2p2", 3), ("a1p3", 3)])
def test_orbit_check_matches_hall_number(request, fixture_name, max_dim):
    heart = request.getfixturevalue(fixture_name)
    alg = ClassicalHall(heart)
    classes = heart.classes_up_to_dim(max_dim)
    checked = 0
    for x, y in itertools.product(classes, repeat=2):
        if x.total_dim + y.total_dim > max_dim:
            continue
        dims = tuple(a + b for a, b in zip(x.dims, y.dims))
        for z in heart.classes_with_dims(dims):
            assert alg.orbit_check(x, y, z) == Fraction(alg.hall_number(x, y, z))
            checked += 1
    assert checked > 0


def test_associativity_and_unit_suites(a1p2, a2p2, a1p3):
    assert verify_assoc(a2p2, 3).ok
    assert verify_assoc(a1p2, 4).ok
    assert verify_assoc(a1p3, 3).ok
    assert verify_unit(a2p2, 3).ok


def test_mismatched_labels_rejected(alg2, a1p2):
    with pytest.raises(MismatchError):
        alg2.hall_number(a1p2.simple_class(0), a1p2.simple_class(0),
                         a1p2.simple_class(0))
