"""Exact dense linear algebra over prime fields F_p.

Matrices are 2-d int64 numpy arrays with entries reduced into [0, p),
row-major.  Everything is exact integer arithmetic; no floating point.
Dimensions in scope stay small (< 100), so plain Gaussian elimination
via the selected kernel backend is all we need.
"""

from __future__ import annotations

import numpy as np

from . import backend
from .errors import HallAlgError


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The field F_p for a small prime p.

    Args:
        p: prime characteristic, at least 2.
        max_p: inclusive upper bound enforced at construction (default 13).
    """

    __slots__ = ("p",)

    def __init__(self, p, max_p=13):
        if not isinstance(p, int) or not is_prime(p):
            raise HallAlgError(f"field characteristic must be prime, got {p!r}")
        if p > max_p:
            raise HallAlgError(f"characteristic {p} exceeds the bound {max_p}")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def matrix(self, data, rows=None, cols=None):
        """Validate and reduce an array-like into an F_p matrix.

        Args:
            data: array-like of integers, shape (rows, cols).
            rows, cols: optional expected shape.

        Returns:
            A fresh int64 array with entries in [0, p).
        """
        m = np.asarray(data, dtype=np.int64) % self.p
        if m.ndim != 2:
            raise HallAlgError(f"expected a 2-d matrix, got ndim={m.ndim}")
        if rows is not None and m.shape[0] != rows:
            raise HallAlgError(f"expected {rows} rows, got {m.shape[0]}")
        if cols is not None and m.shape[1] != cols:
            raise HallAlgError(f"expected {cols} cols, got {m.shape[1]}")
        return m

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n):
        return np.eye(n, dtype=np.int64)

    def matmul(self, a, b):
        if a.shape[1] != b.shape[0]:
            raise HallAlgError(f"shape mismatch in product: {a.shape} @ {b.shape}")
        if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        return (a @ b) % self.p

    def rref(self, m):
        """Reduced row echelon form.

        Returns:
            (r, pivots): the RREF and the pivot column indices.
        """
        return backend.rref_mod(np.ascontiguousarray(m, dtype=np.int64), self.p)

    def rank(self, m):
        """Row rank over F_p; 0 <= rank <= min(rows, cols)."""
        if m.shape[0] == 0 or m.shape[1] == 0:
            return 0
        return int(backend.rank_mod(np.ascontiguousarray(m, dtype=np.int64), self.p))

    def kernel_basis(self, m):
        """Basis of the right kernel {v : m v = 0}, one vector per row.

        The row count equals cols - rank(m).  Basis vectors are indexed by
        the free columns of the RREF in ascending order, which makes the
        result deterministic.
        """
        rows, cols = m.shape
        if cols == 0:
            return np.zeros((0, 0), dtype=np.int64)
        if rows == 0:
            return self.identity(cols)
        red, pivots = self.rref(m)
        pivot_set = set(int(c) for c in pivots)
        free = [c for c in range(cols) if c not in pivot_set]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for row, pc in enumerate(pivots):
                basis[i, int(pc)] = (-int(red[row, f])) % self.p
        return basis

    def solve(self, a, b):
        """Some solution x of a x = b, or None when inconsistent.

        Args:
            a: (rows, cols) matrix.
            b: length-rows vector.
        """
        b = np.asarray(b, dtype=np.int64) % self.p
        if b.ndim != 1 or b.shape[0] != a.shape[0]:
            raise HallAlgError(
                f"right-hand side length {b.shape} does not match {a.shape[0]} rows"
            )
        x = self.solve_matrix(a, b.reshape(-1, 1))
        return None if x is None else x[:, 0]

    def solve_matrix(self, a, bmat):
        """Solve a X = bmat column-wise; None when any column is inconsistent."""
        rows, cols = a.shape
        k = bmat.shape[1]
        if bmat.shape[0] != rows:
            raise HallAlgError(f"shape mismatch: {a.shape} vs {bmat.shape}")
        if k == 0 or cols == 0:
            if np.any(bmat % self.p):
                return None
            return np.zeros((cols, k), dtype=np.int64)
        aug = np.hstack([a, bmat])
        red, pivots = self.rref(aug)
        x = np.zeros((cols, k), dtype=np.int64)
        for row, pc in enumerate(pivots):
            if int(pc) >= cols:
                return None
            x[int(pc)] = red[row, cols:]
        return x

    def is_invertible(self, m):
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    def inverse(self, m):
        if m.shape[0] != m.shape[1]:
            raise HallAlgError("only square matrices can be inverted")
        inv = self.solve_matrix(m, self.identity(m.shape[0]))
        if inv is None:
            raise HallAlgError("matrix is singular over F_p")
        return inv

    def stable_power(self, m, total_dim):
        """m^(2^k) for the first 2^k >= max(total_dim, 1).

        Kernel and image of an endomorphism stabilize at exponent
        total_dim, so this reaches the Fitting decomposition.
        """
        out = m % self.p
        k = 1
        while k < max(total_dim, 1):
            out = self.matmul(out, out)
            k *= 2
        return out


def rank(m, p):
    """Row rank of an integer matrix over F_p."""
    return PrimeField(p).rank(np.asarray(m, dtype=np.int64) % p)


def kernel_basis(m, p):
    """Rows form a basis of the right kernel of m over F_p."""
    f = PrimeField(p)
    return f.kernel_basis(f.matrix(m))


def solve(a, b, p):
    """Some x with a x = b over F_p, or None if inconsistent."""
    f = PrimeField(p)
    return f.solve(f.matrix(a), b)
