"""Numba-compiled mod-p kernels (the default backend).

Same signatures and results as hallalg._kernels_numpy; these carry the hot
inner loops: row reduction, invertible-endomorphism counting, and the
four-term exact sequence census.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _inv_mod(a, p):
    a = a % p
    for k in range(1, p):
        if (a * k) % p == 1:
            return k
    return 0


@njit(cache=True)
def _rref_inplace(m, p):
    rows, cols = m.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] % p != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        inv = _inv_mod(m[r, c], p)
        for j in range(cols):
            m[r, j] = (m[r, j] * inv) % p
        for i in range(rows):
            if i != r and m[i, c] % p != 0:
                f = m[i, c]
                for j in range(cols):
                    m[i, j] = (m[i, j] - f * m[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r].copy()


@njit(cache=True)
def rref_mod(a, p):
    m = a.copy()
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            m[i, j] = m[i, j] % p
    pivots = _rref_inplace(m, p)
    return m, pivots


@njit(cache=True)
def _rank_block(m, r0, r1, c0, c1, p):
    rows = r1 - r0
    cols = c1 - c0
    if rows == 0 or cols == 0:
        return 0
    blk = np.empty((rows, cols), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            blk[i, j] = m[r0 + i, c0 + j] % p
    return _rref_inplace(blk, p).shape[0]


@njit(cache=True)
def rank_mod(a, p):
    return _rank_block(a, 0, a.shape[0], 0, a.shape[1], p)


@njit(cache=True)
def count_invertible(mats, p):
    n = mats.shape[0]
    d = mats.shape[1]
    count = 0
    for i in range(n):
        if _rank_block(mats[i], 0, d, 0, d, p) == d:
            count += 1
    return count


@njit(cache=True)
def _combo_into(out, basis, idx, p):
    rows, cols = out.shape
    for i in range(rows):
        for j in range(cols):
            out[i, j] = 0
    t = idx
    for k in range(basis.shape[0]):
        dig = t % p
        t //= p
        if dig != 0:
            for i in range(rows):
                for j in range(cols):
                    out[i, j] = (out[i, j] + dig * basis[k, i, j]) % p


@njit(cache=True)
def _block_ranks_ok(m, roff, coff, want, p):
    for v in range(want.shape[0]):
        if _rank_block(m, roff[v], roff[v + 1], coff[v], coff[v + 1], p) != want[v]:
            return False
    return True


@njit(cache=True)
def _compose_is_zero(a, b, p):
    # checks a @ b == 0 mod p
    n, k = a.shape
    m = b.shape[1]
    for i in range(n):
        for j in range(m):
            acc = 0
            for t in range(k):
                acc += a[i, t] * b[t, j]
            if acc % p != 0:
                return False
    return True


@njit(cache=True)
def count_exact_triples(b_ky, b_yx, b_xc, koff, yoff, xoff, coff, p):
    nv = koff.shape[0] - 1
    kdim = np.empty(nv, dtype=np.int64)
    ydim = np.empty(nv, dtype=np.int64)
    xdim = np.empty(nv, dtype=np.int64)
    cdim = np.empty(nv, dtype=np.int64)
    v_rank = np.empty(nv, dtype=np.int64)
    for v in range(nv):
        kdim[v] = koff[v + 1] - koff[v]
        ydim[v] = yoff[v + 1] - yoff[v]
        xdim[v] = xoff[v + 1] - xoff[v]
        cdim[v] = coff[v + 1] - coff[v]
        v_rank[v] = ydim[v] - kdim[v]
        if v_rank[v] != xdim[v] - cdim[v] or v_rank[v] < 0 or cdim[v] > xdim[v]:
            return 0

    h1, h2, h3 = b_ky.shape[0], b_yx.shape[0], b_xc.shape[0]
    n1 = p ** h1
    n2 = p ** h2
    n3 = p ** h3
    vm = np.zeros((xoff[nv], yoff[nv]), dtype=np.int64)
    im = np.zeros((yoff[nv], koff[nv]), dtype=np.int64)
    qm = np.zeros((coff[nv], xoff[nv]), dtype=np.int64)

    total = 0
    for iv in range(n2):
        _combo_into(vm, b_yx, iv, p)
        if not _block_ranks_ok(vm, xoff, yoff, v_rank, p):
            continue
        n_incl = 0
        for ii in range(n1):
            _combo_into(im, b_ky, ii, p)
            if not _compose_is_zero(vm, im, p):
                continue
            if _block_ranks_ok(im, yoff, koff, kdim, p):
                n_incl += 1
        if n_incl == 0:
            continue
        n_proj = 0
        for iq in range(n3):
            _combo_into(qm, b_xc, iq, p)
            if not _compose_is_zero(qm, vm, p):
                continue
            if _block_ranks_ok(qm, coff, xoff, cdim, p):
                n_proj += 1
        total += n_incl * n_proj
    return total
