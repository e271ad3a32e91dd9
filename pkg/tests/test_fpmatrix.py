import itertools
import random

import numpy as np
import pytest

from hallalg.errors import HallAlgError
from hallalg.fpmatrix import PrimeField, is_prime, kernel_basis, rank, solve


def brute_kernel_count(m, p):
    """Count kernel vectors by exhausting F_p^cols."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    count = 0
    for vec in itertools.product(range(p), repeat=cols):
        if not np.any((m @ np.array(vec, dtype=np.int64)) % p):
            count += 1
    return count


def test_prime_validation():
    PrimeField(2)
    PrimeField(13)
    with pytest.raises(HallAlgError):
        PrimeField(4)
    with pytest.raises(HallAlgError):
        PrimeField(1)
    with pytest.raises(HallAlgError):
        PrimeField(17)  # beyond the default bound
    PrimeField(17, max_p=17)
    assert is_prime(11) and not is_prime(12)


def test_rank_examples():
    assert rank(np.eye(2, dtype=int), 2) == 2
    assert rank([[1, 1], [1, 1]], 2) == 1
    assert rank(np.zeros((2, 3), dtype=int), 2) == 0


def test_kernel_examples():
    k = kernel_basis([[1, 1]], 2)
    assert k.shape == (1, 2)
    assert tuple(k[0]) == (1, 1)
    assert kernel_basis(np.eye(2, dtype=int), 2).shape == (0, 2)
    assert kernel_basis(np.zeros((1, 2), dtype=int), 2).shape == (2, 2)


def test_solve_examples():
    x = solve(np.eye(2, dtype=int), [1, 0], 2)
    assert tuple(x) == (1, 0)
    x = solve([[1, 1]], [1], 2)
    assert x is not None and (x[0] + x[1]) % 2 == 1
    assert solve([[0, 0]], [1], 2) is None


def test_solve_dimension_mismatch():
    with pytest.raises(HallAlgError):
        solve(np.eye(2, dtype=int), [1, 0, 0], 2)


@pytest.mark.parametrize("p", [2, 3])
def test_rank_nullity_vs_brute_force(p):
    rng = random.Random(p)
    field = PrimeField(p)
    for _ in range(60):
        rows = rng.randint(0, 4)
        cols = rng.randint(1, 4)
        m = np.fromiter(
            (rng.randrange(p) for _ in range(rows * cols)),
            dtype=np.int64, count=rows * cols,
        ).reshape(rows, cols)
        r = field.rank(m)
        k = field.kernel_basis(m)
        assert r + k.shape[0] == cols
        assert brute_kernel_count(m, p) == p ** k.shape[0]
        # kernel rows really solve m v = 0
        for row in k:
            assert not np.any((m @ row) % p)


@pytest.mark.parametrize("p", [2, 3])
def test_solve_vs_brute_force(p):
    rng = random.Random(10 + p)
    field = PrimeField(p)
    for _ in range(40):
        rows = rng.randint(1, 3)
        cols = rng.randint(1, 4)
        m = np.array(
            [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
            dtype=np.int64,
        )
        for b in itertools.product(range(p), repeat=rows):
            b = np.array(b, dtype=np.int64)
            solvable = any(
                not np.any((m @ np.array(x, dtype=np.int64) - b) % p)
                for x in itertools.product(range(p), repeat=cols)
            )
            got = field.solve(m, b)
            if solvable:
                assert got is not None
                assert not np.any((m @ got - b) % p)
            else:
                assert got is None


def test_rref_is_canonical():
    field = PrimeField(3)
    m = field.matrix([[2, 1, 0], [1, 1, 0], [0, 0, 0]])
    red, pivots = field.rref(m)
    assert list(pivots) == [0, 1]
    assert red[0, 0] == 1 and red[1, 1] == 1 and red[0, 1] == 0


def test_inverse_and_stable_power():
    field = PrimeField(5)
    m = field.matrix([[2, 1], [1, 1]])
    inv = field.inverse(m)
    assert np.array_equal(field.matmul(m, inv), field.identity(2))
    with pytest.raises(HallAlgError):
        field.inverse(field.matrix([[1, 1], [2, 2]]))
    nil = field.matrix([[0, 1], [0, 0]])
    assert not field.stable_power(nil, 2).any()
