"""Pure NumPy implementations of the mod-p counting kernels.

Reference backend: bit-identical results to the numba kernels, no JIT.
Selected with HALLALG_BACKEND=numpy.
"""

from __future__ import annotations

import numpy as np


def rref_mod(a, p):
    """Reduced row echelon form of an integer matrix mod p.

    Returns (r, pivots) where r is the RREF (int64, entries in [0, p)) and
    pivots the array of pivot column indices.  The input is not modified.
    """
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots[r] = c
        r += 1
    return m, pivots[:r].copy()


def rank_mod(a, p):
    return int(rref_mod(a, p)[1].shape[0])


def count_invertible(mats, p):
    """Count matrices in the (n, d, d) batch that are invertible mod p."""
    n = mats.shape[0]
    d = mats.shape[1]
    count = 0
    for i in range(n):
        if rank_mod(mats[i], p) == d:
            count += 1
    return count


def _combo(basis, idx, p):
    # idx decoded little-endian in base p over the leading axis of basis
    out = np.zeros(basis.shape[1:], dtype=np.int64)
    t = idx
    for j in range(basis.shape[0]):
        dig = t % p
        t //= p
        if dig:
            out += dig * basis[j]
    return out % p


def _block_ranks_ok(m, roff, coff, want, p):
    # want[v] is the required rank of the v-th diagonal block
    for v in range(len(want)):
        blk = m[roff[v]:roff[v + 1], coff[v]:coff[v + 1]]
        if blk.size == 0:
            if want[v] != 0:
                return False
            continue
        if rank_mod(blk, p) != want[v]:
            return False
    return True


def count_exact_triples(b_ky, b_yx, b_xc, koff, yoff, xoff, coff, p):
    """Count triples (i, v, q) of composable block morphisms k->y->x->c forming
    a four-term exact sequence 0 -> k -> y -> x -> c -> 0.

    Each b_* is a stacked basis (h, rows, cols) of the relevant morphism
    space as block-diagonal matrices; *off are per-vertex block offsets.
    """
    nv = len(koff) - 1
    kdim = [int(koff[v + 1] - koff[v]) for v in range(nv)]
    ydim = [int(yoff[v + 1] - yoff[v]) for v in range(nv)]
    xdim = [int(xoff[v + 1] - xoff[v]) for v in range(nv)]
    cdim = [int(coff[v + 1] - coff[v]) for v in range(nv)]
    v_rank = [ydim[v] - kdim[v] for v in range(nv)]
    for v in range(nv):
        if v_rank[v] != xdim[v] - cdim[v] or v_rank[v] < 0 or cdim[v] > xdim[v]:
            return 0

    h1, h2, h3 = b_ky.shape[0], b_yx.shape[0], b_xc.shape[0]
    total = 0
    for iv in range(p ** h2):
        vm = _combo(b_yx, iv, p)
        if not _block_ranks_ok(vm, xoff, yoff, v_rank, p):
            continue
        n_incl = 0
        for ii in range(p ** h1):
            im = _combo(b_ky, ii, p)
            if im.size and np.any((vm @ im) % p):
                continue
            if _block_ranks_ok(im, yoff, koff, kdim, p):
                n_incl += 1
        if n_incl == 0:
            continue
        n_proj = 0
        for iq in range(p ** h3):
            qm = _combo(b_xc, iq, p)
            if qm.size and np.any((qm @ vm) % p):
                continue
            if _block_ranks_ok(qm, coff, xoff, cdim, p):
                n_proj += 1
        total += n_incl * n_proj
    return total
