import random
from fractions import Fraction

import pytest

from hallalg import homotopy as ht
from hallalg.errors import HallAlgError
from hallalg.verify import _random_fn, _random_map, _random_type, verify_homotopy


def test_type_normalization():
    x = ht.LFType([(2, 1, 1), ()])
    assert x.components == ((2,), ())
    with pytest.raises(HallAlgError):
        ht.LFType([(0,)])


def test_alternating_weight():
    assert ht.alternating_weight(()) == 1
    assert ht.alternating_weight((2,)) == Fraction(1, 2)
    assert ht.alternating_weight((2, 3)) == Fraction(3, 2)
    assert ht.alternating_weight((2, 3, 5)) == Fraction(3, 10)


def test_pushforward_examples():
    # one component with |pi_1| = 2 mapped to a point
    x = ht.LFType([(2,)])
    pt = ht.LFType([()])
    f = ht.LFMap(x, pt, (0,))
    assert ht.pushforward(f, {0: 1}) == {0: Fraction(1, 2)}

    # identity leaves any function unchanged
    y = ht.LFType([(2,), (3, 4)])
    assert ht.pushforward(ht.identity_map(y), {0: 5, 1: Fraction(1, 3)}) == {
        0: Fraction(5), 1: Fraction(1, 3)
    }

    # |pi_1| = 2 and |pi_2| = 3 gives 3/2
    x2 = ht.LFType([(2, 3)])
    f2 = ht.LFMap(x2, pt, (0,))
    assert ht.pushforward(f2, {0: 1}) == {0: Fraction(3, 2)}


def test_pushforward_via_fibers_examples():
    fiber = ht.LFType([(2,)])
    base = ht.LFType([(), ()])
    total, proj, fp = ht.product_projection(fiber, base)
    alpha = {i: 1 for i in range(len(total))}
    assert ht.pushforward_via_fibers(fp, alpha) == {
        0: Fraction(1, 2), 1: Fraction(1, 2)
    }

    # point fibers relabel the function
    point_fiber = ht.LFType([()])
    total2, proj2, fp2 = ht.product_projection(point_fiber, base)
    assert ht.pushforward_via_fibers(fp2, {0: 7}) == {0: Fraction(7)}

    # two unit components in the fiber double the value
    two = ht.LFType([(), ()])
    total3, proj3, fp3 = ht.product_projection(two, ht.LFType([()]))
    assert ht.pushforward_via_fibers(fp3, {0: 1, 1: 1}) == {0: Fraction(2)}


def test_pullback_examples():
    y = ht.LFType([()])
    x = ht.LFType([(), ()])
    f = ht.LFMap(x, y, (0, 0))
    assert ht.is_proper(f)
    assert ht.pullback(f, {0: 5}) == {0: Fraction(5), 1: Fraction(5)}
    ident = ht.identity_map(x)
    assert ht.pullback(ident, {1: Fraction(2, 3)}) == {1: Fraction(2, 3)}


def test_is_proper_always_true_on_finite_data():
    x = ht.LFType([(), (), ()])
    y = ht.LFType([()])
    assert ht.is_proper(ht.LFMap(x, y, (0, 0, 0)))
    assert ht.is_proper(ht.identity_map(x))


def test_function_domain_checked():
    x = ht.LFType([()])
    y = ht.LFType([(), ()])
    f = ht.LFMap(x, y, (0,))
    with pytest.raises(HallAlgError):
        ht.pushforward(f, {3: 1})
    with pytest.raises(HallAlgError):
        ht.pullback(f, {2: 1})


def test_linearity():
    rng = random.Random(3)
    for _ in range(50):
        x = _random_type(rng)
        y = _random_type(rng)
        f = _random_map(rng, x, y)
        a = _random_fn(rng, x)
        b = _random_fn(rng, x)
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        lhs = ht.pushforward(f, ht.add(ht.scale(a, c), b))
        rhs = ht.add(ht.scale(ht.pushforward(f, a), c), ht.pushforward(f, b))
        assert lhs == rhs
        g = _random_fn(rng, y)
        h = _random_fn(rng, y)
        assert ht.pullback(f, ht.add(g, h)) == ht.add(
            ht.pullback(f, g), ht.pullback(f, h)
        )


def test_functoriality_exhaustive_small():
    # all composable pairs on tiny types with orders in {1, 2, 3}
    types = [
        ht.LFType([()]),
        ht.LFType([(2,)]),
        ht.LFType([(3,), (2, 2)]),
    ]
    import itertools

    for xt, yt, zt in itertools.product(types, repeat=3):
        for fmap in itertools.product(range(len(yt)), repeat=len(xt)):
            for gmap in itertools.product(range(len(zt)), repeat=len(yt)):
                f = ht.LFMap(xt, yt, fmap)
                g = ht.LFMap(yt, zt, gmap)
                alpha = {i: Fraction(i + 1, 2) for i in range(len(xt))}
                assert ht.pushforward(ht.compose(g, f), alpha) == ht.pushforward(
                    g, ht.pushforward(f, alpha)
                )


def test_verify_homotopy_suite():
    report = verify_homotopy(seed=123, count=400)
    assert report.ok
    assert report.checked == 400 + 2 * 400
