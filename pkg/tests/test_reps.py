import itertools
import random
from collections import Counter

import numpy as np
import pytest

from hallalg.config import Bounds
from hallalg.errors import HallAlgError, MismatchError, ResourceBoundError
from hallalg.fpmatrix import PrimeField
from hallalg.quiver import Quiver, linear_quiver
from hallalg.reps import (
    Heart,
    Rep,
    RepMorphism,
    aut_order,
    direct_sum,
    euler_form,
    euler_form_dims,
    ext1_dim,
    hom_basis,
    hom_dim,
    image_subspaces,
    indecomposables,
    is_indecomposable,
    kernel_subspaces,
    simple_rep,
    standard_resolution,
    subreps,
    zero_rep,
)

A2 = linear_quiver(2)


def a2_reps(p=2):
    s1 = simple_rep(A2, p, 0)
    s2 = simple_rep(A2, p, 1)
    x = Rep(A2, p, (1, 1), [np.array([[1]])])
    return s1, s2, x


def test_rep_validation():
    with pytest.raises(HallAlgError):
        Rep(A2, 2, (1,))  # wrong dim vector length
    with pytest.raises(HallAlgError):
        Rep(A2, 2, (1, 1), [np.zeros((2, 1))])  # wrong matrix shape
    with pytest.raises(HallAlgError):
        Rep(A2, 2, (1, -1))


def test_morphism_intertwining_enforced():
    s1, s2, x = a2_reps()
    RepMorphism(x, s1, [np.array([[1]]), np.zeros((0, 1))])
    RepMorphism(s2, x, [np.zeros((1, 0)), np.array([[1]])])  # socle inclusion
    with pytest.raises(HallAlgError):
        RepMorphism(x, s2, [np.zeros((0, 1)), np.array([[1]])])
    with pytest.raises(MismatchError):
        RepMorphism(s1, simple_rep(A2, 3, 0), [np.zeros((1, 1)), np.zeros((0, 0))])


def test_hom_examples():
    s1, s2, x = a2_reps()
    assert hom_dim(s1, s2) == 0
    assert hom_dim(x, s1) == 1
    assert hom_dim(x, s2) == 0
    a1 = linear_quiver(1)
    s = simple_rep(a1, 2, 0)
    assert len(hom_basis(s, s)) == 1


def test_hom_cardinality_is_p_power():
    # every tuple of per-vertex matrices that intertwines is in the span
    s1, s2, x = a2_reps()
    for m, n in [(s1, x), (x, x), (x, s1), (s1, s2), (direct_sum(s1, s2), x)]:
        field = PrimeField(2)
        count = 0
        shapes = [(n.dims[v], m.dims[v]) for v in range(2)]
        cells = sum(r * c for r, c in shapes)
        for flat in itertools.product(range(2), repeat=cells):
            mats, pos = [], 0
            for r, c in shapes:
                mats.append(np.array(flat[pos:pos + r * c], dtype=np.int64).reshape(r, c))
                pos += r * c
            ok = all(
                np.array_equal(
                    field.matmul(n.maps[a], mats[s]),
                    field.matmul(mats[t], m.maps[a]),
                )
                for a, (s, t) in enumerate(A2.arrows)
            )
            count += ok
        assert count == 2 ** hom_dim(m, n)


def test_ext1_examples():
    s1, s2, _ = a2_reps()
    assert ext1_dim(s1, s2) == 1
    assert ext1_dim(s2, s1) == 0
    a1 = linear_quiver(1)
    s = simple_rep(a1, 2, 0)
    assert ext1_dim(s, s) == 0


def test_euler_examples():
    s1, s2, x = a2_reps()
    assert euler_form(s1, s2) == -1
    assert euler_form(x, x) == 1
    a1 = linear_quiver(1)
    s = simple_rep(a1, 2, 0)
    assert euler_form(s, s) == 1


@pytest.mark.parametrize("p", [2, 3])
def test_euler_form_matches_bilinear_form(p):
    heart = Heart(A2, p)
    classes = heart.classes_up_to_dim(3)
    for x, y in itertools.product(classes, repeat=2):
        m, n = heart.rep_of(x), heart.rep_of(y)
        assert euler_form(m, n) == euler_form_dims(A2, m.dims, n.dims)


def test_aut_examples():
    a1 = linear_quiver(1)
    s = simple_rep(a1, 2, 0)
    assert aut_order(s) == 1
    assert aut_order(direct_sum(s, s)) == 6
    _, _, x = a2_reps()
    assert aut_order(x) == 1
    assert aut_order(zero_rep(A2, 2)) == 1


def test_aut_order_vs_full_brute_force():
    # invertible intertwining tuples counted over the whole matrix space
    field = PrimeField(2)
    for rep in [direct_sum(*a2_reps()[0:2]), a2_reps()[2],
                direct_sum(a2_reps()[2], a2_reps()[0])]:
        cells = sum(d * d for d in rep.dims)
        count = 0
        for flat in itertools.product(range(2), repeat=cells):
            mats, pos = [], 0
            for d in rep.dims:
                mats.append(np.array(flat[pos:pos + d * d], dtype=np.int64).reshape(d, d))
                pos += d * d
            ok = all(
                np.array_equal(
                    field.matmul(rep.maps[a], mats[s]),
                    field.matmul(mats[t], rep.maps[a]),
                )
                for a, (s, t) in enumerate(rep.quiver.arrows)
            ) and all(field.is_invertible(m) for m in mats)
            count += ok
        assert count == aut_order(rep)


def test_aut_order_bound():
    a1 = linear_quiver(1)
    big = direct_sum(*[simple_rep(a1, 2, 0)] * 5)  # End is 25-dimensional
    with pytest.raises(ResourceBoundError):
        aut_order(big)


def test_subreps_examples():
    a1 = linear_quiver(1)
    ss = direct_sum(simple_rep(a1, 2, 0), simple_rep(a1, 2, 0))
    pairs = subreps(ss)
    assert len(pairs) == 5
    assert sum(1 for incl, _ in pairs if incl.source.total_dim == 1) == 3

    _, _, x = a2_reps()
    pairs = subreps(x)
    assert sum(1 for incl, _ in pairs if incl.source.dims == (0, 1)) == 1
    assert sum(1 for incl, _ in pairs if incl.source.dims == (1, 0)) == 0

    z = zero_rep(A2, 2)
    assert len(subreps(z)) == 1


def test_subreps_dims_and_exactness():
    _, _, x = a2_reps()
    z = direct_sum(x, a2_reps()[0])
    for incl, quot in subreps(z):
        sub = incl.source
        assert tuple(s + q for s, q in zip(sub.dims, quot.dims)) == z.dims
        assert incl.is_injective()


def test_subreps_bound():
    a1 = linear_quiver(1)
    big = direct_sum(*[simple_rep(a1, 2, 0)] * 7)
    with pytest.raises(ResourceBoundError):
        subreps(big)
    s3 = direct_sum(*[simple_rep(a1, 2, 0)] * 3)
    with pytest.raises(ResourceBoundError):
        subreps(s3, Bounds(max_total_dim=2))
    # Gaussian binomial column sums: 1 + 7 + 7 + 1 subspaces of F_2^3
    assert len(subreps(s3)) == 16


def test_indecomposable_counts():
    assert len(indecomposables(linear_quiver(1), 2)) == 1
    assert len(indecomposables(linear_quiver(2), 2)) == 3
    assert len(indecomposables(linear_quiver(3), 2)) == 6
    d4 = Quiver(4, [(0, 3), (1, 3), (2, 3)])
    assert len(indecomposables(d4, 2)) == 12
    with pytest.raises(HallAlgError):
        indecomposables(Quiver(2, [(0, 1), (0, 1)]), 2)


def test_indecomposables_are_indecomposable():
    for rep in indecomposables(linear_quiver(3), 2):
        assert is_indecomposable(rep)
    assert not is_indecomposable(zero_rep(A2, 2))
    s1, s2, _ = a2_reps()
    assert not is_indecomposable(direct_sum(s1, s2))


def test_decompose_examples(a2p2):
    s1, s2, x = a2_reps()
    assert a2p2.decompose(x).label() == "X12"
    zero_map = Rep(A2, 2, (1, 1))
    assert a2p2.decompose(zero_map).label() == "S1+S2"
    assert a2p2.decompose(zero_rep(A2, 2)).label() == "0"


def test_decompose_additive(a2p2):
    rng = random.Random(5)
    reps = [a2p2.rep_of(c) for c in a2p2.classes_up_to_dim(2)]
    for _ in range(15):
        m, n = rng.choice(reps), rng.choice(reps)
        left = a2p2.decompose(direct_sum(m, n))
        union = Counter(dict(a2p2.decompose(m).parts))
        union.update(dict(a2p2.decompose(n).parts))
        assert left == a2p2.iso_class(union)


def brute_force_iso(m, n):
    """Search all per-vertex matrix tuples for an invertible intertwiner."""
    if m.dims != n.dims:
        return False
    field = PrimeField(m.p)
    cells = sum(d * d for d in m.dims)
    for flat in itertools.product(range(m.p), repeat=cells):
        mats, pos = [], 0
        for d in m.dims:
            mats.append(np.array(flat[pos:pos + d * d], dtype=np.int64).reshape(d, d))
            pos += d * d
        if not all(field.is_invertible(mm) for mm in mats):
            continue
        if all(
            np.array_equal(
                field.matmul(n.maps[a], mats[s]),
                field.matmul(mats[t], m.maps[a]),
            )
            for a, (s, t) in enumerate(m.quiver.arrows)
        ):
            return True
    return False


def test_iso_test_examples(a2p2):
    s1, s2, x = a2_reps()
    assert a2p2.iso_test(x, x)
    assert not a2p2.iso_test(x, Rep(A2, 2, (1, 1)))
    a1 = linear_quiver(1)
    h1 = Heart(a1, 2)
    ss = direct_sum(simple_rep(a1, 2, 0), simple_rep(a1, 2, 0))
    assert h1.iso_test(ss, ss)


def test_iso_test_vs_brute_force(a2p2):
    rng = random.Random(11)
    candidates = []
    for dims in [(1, 1), (2, 1), (1, 2), (2, 2)]:
        for _ in range(4):
            maps = [np.array(
                [[rng.randrange(2) for _ in range(dims[s])] for _ in range(dims[t])],
                dtype=np.int64,
            ) for s, t in A2.arrows]
            candidates.append(Rep(A2, 2, dims, maps))
    for _ in range(25):
        m, n = rng.choice(candidates), rng.choice(candidates)
        assert a2p2.iso_test(m, n) == brute_force_iso(m, n)


def test_decompose_round_trip_a3():
    # the canonical representative of decompose(m) is isomorphic to m,
    # certified by brute-force intertwiner search on a fresh quiver
    a3 = linear_quiver(3)
    heart = Heart(a3, 2)
    rng = random.Random(21)
    for _ in range(12):
        dims = tuple(rng.randint(0, 2) for _ in range(3))
        maps = [
            np.fromiter(
                (rng.randrange(2) for _ in range(dims[t] * dims[s])),
                dtype=np.int64, count=dims[t] * dims[s],
            ).reshape(dims[t], dims[s])
            for s, t in a3.arrows
        ]
        m = Rep(a3, 2, dims, maps)
        canonical = heart.rep_of(heart.decompose(m))
        assert brute_force_iso(m, canonical)


def test_standard_resolution_exact():
    for quiver in [linear_quiver(2), linear_quiver(3)]:
        for rep in indecomposables(quiver, 2):
            p1, p0, u, eps = standard_resolution(rep)
            assert u.is_injective()
            assert eps.is_surjective()
            ker = kernel_subspaces(eps)
            im = image_subspaces(u)
            assert all(np.array_equal(a, b) for a, b in zip(ker, im))


def test_heart_labels_and_lookup(a2p2):
    assert a2p2.indec_names() == ("S2", "S1", "X12")
    assert a2p2.class_by_name("X12").dims == (1, 1)
    assert a2p2.simple_class(0).label() == "S1"
    with pytest.raises(HallAlgError):
        a2p2.class_by_name("S9")


def test_class_enumeration(a2p2):
    labels = [c.label() for c in a2p2.classes_up_to_dim(2)]
    assert labels == ["0", "S1", "S2", "S1+S2", "S1^2", "S2^2", "X12"]
    by_dims = [c.label() for c in a2p2.classes_with_dims((1, 1))]
    assert by_dims == ["S1+S2", "X12"]


def test_heart_mismatch(a1p2, a2p2):
    with pytest.raises(MismatchError):
        a1p2.rep_of(a2p2.simple_class(0))
    with pytest.raises(MismatchError):
        a2p2.decompose(simple_rep(linear_quiver(2), 3, 0))
