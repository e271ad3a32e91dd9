"""The abelian category of quiver representations over F_p.

Representations, morphism spaces, Ext^1, the Euler form, automorphism
counts, subrepresentation enumeration, and Krull-Schmidt decomposition
by idempotent splitting.  The Heart class caches the indecomposable
list and per-isomorphism-class data for one (quiver, p) pair.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from . import backend
from .config import Bounds
from .errors import HallAlgError, MismatchError, ResourceBoundError
from .fpmatrix import PrimeField


def _frozen(arr):
    out = np.ascontiguousarray(arr, dtype=np.int64)
    out.setflags(write=False)
    return out


class Rep:
    """A representation: one F_p vector space per vertex, one matrix per arrow.

    The matrix for an arrow a: s -> t has shape (dim_t, dim_s) and acts on
    column vectors.  Instances are immutable and hashable.
    """

    __slots__ = ("quiver", "p", "dims", "maps", "key")

    def __init__(self, quiver, p, dims, maps=None):
        dims = tuple(int(d) for d in dims)
        if len(dims) != quiver.vertex_count or any(d < 0 for d in dims):
            raise HallAlgError(f"bad dimension vector {dims}")
        field = PrimeField(p)
        if maps is None:
            maps = [
                np.zeros((dims[t], dims[s]), dtype=np.int64)
                for s, t in quiver.arrows
            ]
        if len(maps) != len(quiver.arrows):
            raise HallAlgError("one matrix per arrow required")
        fixed = []
        for (s, t), m in zip(quiver.arrows, maps):
            fixed.append(_frozen(field.matrix(m, rows=dims[t], cols=dims[s])))
        self.quiver = quiver
        self.p = p
        self.dims = dims
        self.maps = tuple(fixed)
        self.key = (quiver.key, p, dims, tuple(m.tobytes() for m in self.maps))

    @property
    def total_dim(self):
        return sum(self.dims)

    def __eq__(self, other):
        return isinstance(other, Rep) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Rep(dims={self.dims}, p={self.p})"


def zero_rep(quiver, p):
    return Rep(quiver, p, (0,) * quiver.vertex_count)


def simple_rep(quiver, p, v):
    dims = [0] * quiver.vertex_count
    dims[v] = 1
    return Rep(quiver, p, dims)


def direct_sum(*reps):
    if not reps:
        raise HallAlgError("direct_sum needs at least one summand")
    q, p = reps[0].quiver, reps[0].p
    _check_same(reps)
    dims = tuple(sum(r.dims[v] for r in reps) for v in range(q.vertex_count))
    maps = []
    for a, (s, t) in enumerate(q.arrows):
        blocks = [r.maps[a] for r in reps]
        m = np.zeros((dims[t], dims[s]), dtype=np.int64)
        ro = co = 0
        for r, b in zip(reps, blocks):
            m[ro:ro + r.dims[t], co:co + r.dims[s]] = b
            ro += r.dims[t]
            co += r.dims[s]
        maps.append(m)
    return Rep(q, p, dims, maps)


def _check_same(reps):
    q, p = reps[0].quiver, reps[0].p
    for r in reps[1:]:
        if r.quiver.key != q.key or r.p != p:
            raise MismatchError("representations live over different quivers or fields")


class RepMorphism:
    """A morphism of representations: per-vertex matrices that intertwine
    every arrow map exactly.  Validated at construction."""

    __slots__ = ("source", "target", "mats", "key")

    def __init__(self, source, target, mats, check=True):
        _check_same((source, target))
        field = PrimeField(source.p)
        fixed = tuple(
            _frozen(field.matrix(m, rows=target.dims[v], cols=source.dims[v]))
            for v, m in enumerate(mats)
        )
        if check:
            for a, (s, t) in enumerate(source.quiver.arrows):
                lhs = field.matmul(target.maps[a], fixed[s])
                rhs = field.matmul(fixed[t], source.maps[a])
                if not np.array_equal(lhs, rhs):
                    raise HallAlgError(f"matrices do not intertwine arrow {a}")
        self.source = source
        self.target = target
        self.mats = fixed
        self.key = (source.key, target.key, tuple(m.tobytes() for m in fixed))

    def __eq__(self, other):
        return isinstance(other, RepMorphism) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def compose(self, other):
        """self after other (other.target must be self.source)."""
        if other.target != self.source:
            raise MismatchError("composition of non-composable morphisms")
        field = PrimeField(self.source.p)
        mats = [field.matmul(a, b) for a, b in zip(self.mats, other.mats)]
        return RepMorphism(other.source, self.target, mats, check=False)

    def is_zero(self):
        return all(not m.any() for m in self.mats)

    def is_injective(self):
        field = PrimeField(self.source.p)
        return all(
            field.rank(m) == self.source.dims[v] for v, m in enumerate(self.mats)
        )

    def is_surjective(self):
        field = PrimeField(self.source.p)
        return all(
            field.rank(m) == self.target.dims[v] for v, m in enumerate(self.mats)
        )

    def block(self):
        """The block-diagonal matrix over all vertices (target dim x source dim)."""
        dt, ds = self.target.total_dim, self.source.total_dim
        out = np.zeros((dt, ds), dtype=np.int64)
        ro = co = 0
        for v, m in enumerate(self.mats):
            out[ro:ro + m.shape[0], co:co + m.shape[1]] = m
            ro += m.shape[0]
            co += m.shape[1]
        return out


def identity_morphism(rep):
    field = PrimeField(rep.p)
    return RepMorphism(rep, rep, [field.identity(d) for d in rep.dims], check=False)


def zero_morphism(source, target):
    return RepMorphism(
        source,
        target,
        [np.zeros((target.dims[v], source.dims[v]), dtype=np.int64)
         for v in range(source.quiver.vertex_count)],
        check=False,
    )


def vertex_offsets(dims):
    off = np.zeros(len(dims) + 1, dtype=np.int64)
    for v, d in enumerate(dims):
        off[v + 1] = off[v] + d
    return off


# ---------------------------------------------------------------------------
# Hom, Ext^1 and the Euler form
# ---------------------------------------------------------------------------

def _flat_offsets(m, n):
    # coordinate layout of a morphism m -> n: per-vertex matrices, row-major
    sizes = [n.dims[v] * m.dims[v] for v in range(m.quiver.vertex_count)]
    off = [0]
    for s in sizes:
        off.append(off[-1] + s)
    return off


def intertwiner_matrix(m, n):
    """The linear map sending per-vertex matrices (phi_v) to the tuple
    (N_a phi_s - phi_t M_a) over all arrows; Hom(m, n) is its kernel and
    Ext^1(m, n) its cokernel."""
    _check_same((m, n))
    q = m.quiver
    off = _flat_offsets(m, n)
    ncols = off[-1]
    row_sizes = [n.dims[t] * m.dims[s] for s, t in q.arrows]
    nrows = sum(row_sizes)
    mat = np.zeros((nrows, ncols), dtype=np.int64)
    r0 = 0
    for a, (s, t) in enumerate(q.arrows):
        rs = row_sizes[a]
        if rs:
            if n.dims[s] and m.dims[s]:
                left = np.kron(n.maps[a], np.eye(m.dims[s], dtype=np.int64))
                mat[r0:r0 + rs, off[s]:off[s + 1]] += left
            if n.dims[t] and m.dims[t]:
                right = np.kron(np.eye(n.dims[t], dtype=np.int64), m.maps[a].T)
                mat[r0:r0 + rs, off[t]:off[t + 1]] -= right
        r0 += rs
    return mat % m.p, off, nrows


def _unflatten(m, n, vec, off):
    mats = []
    for v in range(m.quiver.vertex_count):
        mats.append(vec[off[v]:off[v + 1]].reshape(n.dims[v], m.dims[v]))
    return mats


def hom_basis(m, n):
    """A basis of the F_p vector space Hom(m, n) as RepMorphisms."""
    field = PrimeField(m.p)
    phi, off, _ = intertwiner_matrix(m, n)
    kern = field.kernel_basis(phi)
    return [
        RepMorphism(m, n, _unflatten(m, n, row, off), check=False)
        for row in kern
    ]


def hom_dim(m, n):
    field = PrimeField(m.p)
    phi, off, _ = intertwiner_matrix(m, n)
    return off[-1] - field.rank(phi)


def ext1_dim(m, n):
    """dim Ext^1(m, n), the cokernel of the intertwiner map.  Path algebras
    of acyclic quivers are hereditary, so no higher Ext exists."""
    field = PrimeField(m.p)
    phi, _, nrows = intertwiner_matrix(m, n)
    return nrows - field.rank(phi)


def euler_form(m, n):
    """<m, n> = dim Hom(m, n) - dim Ext^1(m, n)."""
    field = PrimeField(m.p)
    phi, off, nrows = intertwiner_matrix(m, n)
    r = field.rank(phi)
    return (off[-1] - r) - (nrows - r)


def euler_form_dims(quiver, dm, dn):
    """The bilinear form sum_v d_v e_v - sum_a d_{s(a)} e_{t(a)}; agrees with
    euler_form on representations (tested, not assumed)."""
    total = sum(int(a) * int(b) for a, b in zip(dm, dn))
    for s, t in quiver.arrows:
        total -= int(dm[s]) * int(dn[t])
    return total


# ---------------------------------------------------------------------------
# Automorphism counting
# ---------------------------------------------------------------------------

def _digit_block(count, width, p, start):
    digits = np.empty((count, width), dtype=np.int64)
    idx = np.arange(start, start + count, dtype=np.int64)
    for j in range(width):
        digits[:, j] = (idx // p ** j) % p
    return digits


def _combo_chunks(basis_blocks, p, shape=None, chunk=4096):
    """Yield (digits, matrices) chunks running over all F_p combinations of
    the stacked block matrices; `shape` supplies the matrix size when the
    basis is empty (the single zero combination is still emitted)."""
    e = len(basis_blocks)
    if e == 0:
        if shape is None:
            shape = (0, 0)
        yield np.zeros((1, 0), dtype=np.int64), np.zeros((1,) + shape, dtype=np.int64)
        return
    stack = np.stack(basis_blocks)
    flat = stack.reshape(e, -1)
    total = p ** e
    start = 0
    while start < total:
        n = min(chunk, total - start)
        digits = _digit_block(n, e, p, start)
        mats = (digits @ flat).reshape((n,) + stack.shape[1:]) % p
        yield digits, mats
        start += n


def aut_order(m, bounds=None):
    """|Aut(m)|: the number of invertible endomorphisms, counted by direct
    enumeration of End(m).  Exact integers; guarded by bounds.max_enum."""
    bounds = bounds or Bounds()
    if m.total_dim == 0:
        return 1
    basis = hom_basis(m, m)
    e = len(basis)
    if m.p ** e > bounds.max_enum:
        raise ResourceBoundError(
            f"|End| = {m.p}^{e} exceeds the enumeration bound {bounds.max_enum}"
        )
    blocks = [b.block() for b in basis]
    count = 0
    for _, mats in _combo_chunks(blocks, m.p):
        count += int(backend.count_invertible(np.ascontiguousarray(mats), m.p))
    return count


# ---------------------------------------------------------------------------
# Subspaces, subrepresentations and quotients
# ---------------------------------------------------------------------------

def canonical_subspace(field, mat):
    red, pivots = field.rref(mat)
    return _frozen(red[: len(pivots)])


def all_subspaces(n, p):
    """Every subspace of F_p^n, one canonical RREF basis matrix each
    (shape (k, n), rows are basis vectors).  Deterministic order."""
    out = [np.zeros((0, n), dtype=np.int64)]
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_pos = [
                (i, c)
                for i in range(k)
                for c in range(pivots[i] + 1, n)
                if c not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(free_pos)):
                mat = np.zeros((k, n), dtype=np.int64)
                for i in range(k):
                    mat[i, pivots[i]] = 1
                for (i, c), val in zip(free_pos, values):
                    mat[i, c] = val
                out.append(mat)
    return out


def sub_from_subspaces(rep, bases):
    """The subrepresentation spanned by per-vertex subspaces that are
    closed under the arrow maps.  Returns (sub, inclusion)."""
    field = PrimeField(rep.p)
    dims = tuple(b.shape[0] for b in bases)
    maps = []
    for a, (s, t) in enumerate(rep.quiver.arrows):
        images = field.matmul(rep.maps[a], bases[s].T)
        sol = field.solve_matrix(bases[t].T, images)
        if sol is None:
            raise HallAlgError("subspaces are not closed under the arrow maps")
        maps.append(sol)
    sub = Rep(rep.quiver, rep.p, dims, maps)
    incl = RepMorphism(sub, rep, [b.T for b in bases], check=False)
    return sub, incl


def quotient_by_subspaces(rep, bases):
    """The quotient of rep by an arrow-closed family of subspaces.
    Returns (quotient, projection)."""
    field = PrimeField(rep.p)
    proj_mats = []
    section_mats = []
    for v in range(rep.quiver.vertex_count):
        d = rep.dims[v]
        b = bases[v]
        red, pivots = field.rref(b)
        pivot_set = set(int(c) for c in pivots)
        comp_cols = [c for c in range(d) if c not in pivot_set]
        comp = np.zeros((len(comp_cols), d), dtype=np.int64)
        for i, c in enumerate(comp_cols):
            comp[i, c] = 1
        basis_full = np.vstack([red[: len(pivots)], comp]) if d else np.zeros((0, 0), dtype=np.int64)
        if d:
            inv = field.inverse(basis_full.T)
            proj_mats.append(inv[len(pivots):])
        else:
            proj_mats.append(np.zeros((0, 0), dtype=np.int64))
        section_mats.append(comp.T)
    dims = tuple(m.shape[0] for m in proj_mats)
    maps = []
    for a, (s, t) in enumerate(rep.quiver.arrows):
        maps.append(field.matmul(proj_mats[t], field.matmul(rep.maps[a], section_mats[s])))
    quot = Rep(rep.quiver, rep.p, dims, maps)
    proj = RepMorphism(rep, quot, proj_mats)
    return quot, proj


def image_subspaces(f):
    """Per-vertex canonical bases of the image of a morphism (an arrow-closed
    family in the target)."""
    field = PrimeField(f.source.p)
    return [canonical_subspace(field, m.T) for m in f.mats]


def kernel_subspaces(f):
    """Per-vertex canonical bases of the kernel (arrow-closed in the source)."""
    field = PrimeField(f.source.p)
    return [canonical_subspace(field, field.kernel_basis(m)) for m in f.mats]


def _closed_under_arrows(rep, field, bases):
    for a, (s, t) in enumerate(rep.quiver.arrows):
        ks = bases[s].shape[0]
        if ks == 0:
            continue
        images = field.matmul(rep.maps[a], bases[s].T).T
        kt = bases[t].shape[0]
        if kt == 0:
            if images.any():
                return False
            continue
        if field.rank(np.vstack([bases[t], images])) != kt:
            return False
    return True


def subreps(z, bounds=None):
    """All subrepresentations of z, as (inclusion, quotient) pairs.

    Enumerates per-vertex subspace tuples and keeps the arrow-closed ones;
    z.total_dim must stay within bounds.max_total_dim."""
    bounds = bounds or Bounds()
    if z.total_dim > bounds.max_total_dim:
        raise ResourceBoundError(
            f"total dimension {z.total_dim} exceeds the subobject bound "
            f"{bounds.max_total_dim}"
        )
    field = PrimeField(z.p)
    per_vertex = [all_subspaces(d, z.p) for d in z.dims]
    out = []
    for bases in itertools.product(*per_vertex):
        if not _closed_under_arrows(z, field, bases):
            continue
        _, incl = sub_from_subspaces(z, bases)
        quot, _ = quotient_by_subspaces(z, bases)
        out.append((incl, quot))
    return out


# ---------------------------------------------------------------------------
# Projectives and the standard two-term resolution
# ---------------------------------------------------------------------------

def path_action(rep, arrows):
    """The composite arrow map along a path (identity for the empty path)."""
    field = PrimeField(rep.p)
    if not arrows:
        # caller knows the vertex; identity of the right size is resolved there
        return None
    out = rep.maps[arrows[0]]
    for a in arrows[1:]:
        out = field.matmul(rep.maps[a], out)
    return out


def projective_rep(quiver, p, v):
    """The indecomposable projective at v: the vector space at w is spanned
    by the paths v -> w, and an arrow acts by appending itself."""
    paths = quiver.paths_from(v)
    by_vertex = {w: [] for w in range(quiver.vertex_count)}
    for target, arrs in paths:
        by_vertex[target].append(arrs)
    index = {
        (w, arrs): i
        for w in range(quiver.vertex_count)
        for i, arrs in enumerate(by_vertex[w])
    }
    dims = tuple(len(by_vertex[w]) for w in range(quiver.vertex_count))
    maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        m = np.zeros((dims[t], dims[s]), dtype=np.int64)
        for arrs in by_vertex[s]:
            m[index[(t, arrs + (a,))], index[(s, arrs)]] = 1
        maps.append(m)
    return Rep(quiver, p, dims, maps), by_vertex


def standard_resolution(m):
    """The canonical projective presentation 0 -> P1 -> P0 -> m -> 0:

        P0 = sum_v P_v ^ dim m_v        (copies indexed by the basis of m_v)
        P1 = sum_{a: s->t} P_t ^ dim m_s

    Returns (p1, p0, u, eps) with u: P1 -> P0 injective and eps: P0 -> m
    surjective; exactness in the middle is what the hereditary structure
    guarantees.  Deterministic summand order.
    """
    q = m.quiver
    p = m.p
    field = PrimeField(p)
    projs = {}
    proj_paths = {}
    for v in range(q.vertex_count):
        projs[v], proj_paths[v] = projective_rep(q, p, v)

    p0_summands = [(v, j) for v in range(q.vertex_count) for j in range(m.dims[v])]
    p1_summands = [
        (a, j) for a, (s, t) in enumerate(q.arrows) for j in range(m.dims[s])
    ]
    p0_list = [projs[v] for v, _ in p0_summands]
    p1_list = [projs[q.arrows[a][1]] for a, _ in p1_summands]
    p0 = direct_sum(*p0_list) if p0_list else zero_rep(q, p)
    p1 = direct_sum(*p1_list) if p1_list else zero_rep(q, p)

    def block_offsets(rep_list):
        offs = []
        running = [0] * q.vertex_count
        for r in rep_list:
            offs.append(tuple(running))
            running = [running[w] + r.dims[w] for w in range(q.vertex_count)]
        return offs

    p0_off = block_offsets(p0_list)
    p1_off = block_offsets(p1_list)

    def path_column(rep, arrs, v, j):
        # image of basis vector j of rep at v under the path action
        if not arrs:
            col = np.zeros(rep.dims[v], dtype=np.int64)
            col[j] = 1
            return col
        act = path_action(rep, arrs)
        return act[:, j] % p

    # eps: P0 -> m
    eps_mats = []
    for w in range(q.vertex_count):
        mat = np.zeros((m.dims[w], p0.dims[w]), dtype=np.int64)
        for si, (v, j) in enumerate(p0_summands):
            base = p0_off[si][w]
            for pi, arrs in enumerate(proj_paths[v][w]):
                mat[:, base + pi] = path_column(m, arrs, v, j)
        eps_mats.append(mat)
    eps = RepMorphism(p0, m, eps_mats)

    # u: P1 -> P0, sending (path q in P_t, copy j of m_s) to
    # (q extended by a, in the (s, j) copy) minus sum_i (M_a)_{ij} (q in (t, i))
    p0_index = {}
    for si, (v, j) in enumerate(p0_summands):
        for w in range(q.vertex_count):
            for pi, arrs in enumerate(proj_paths[v][w]):
                p0_index[(v, j, w, arrs)] = p0_off[si][w] + pi
    u_mats = [np.zeros((p0.dims[w], p1.dims[w]), dtype=np.int64)
              for w in range(q.vertex_count)]
    for si, (a, j) in enumerate(p1_summands):
        s, t = q.arrows[a]
        for w in range(q.vertex_count):
            base = p1_off[si][w]
            for pi, arrs in enumerate(proj_paths[t][w]):
                col = base + pi
                u_mats[w][p0_index[(s, j, w, (a,) + arrs)], col] += 1
                for i in range(m.dims[t]):
                    coeff = int(m.maps[a][i, j])
                    if coeff:
                        u_mats[w][p0_index[(t, i, w, arrs)], col] -= coeff
    u = RepMorphism(p1, p0, [mm % p for mm in u_mats])
    if field.matmul(eps.block(), u.block()).any():
        raise HallAlgError("presentation does not compose to zero")
    return p1, p0, u, eps


def scale_morphism(f, c):
    p = f.source.p
    return RepMorphism(
        f.source, f.target, [(c * m) % p for m in f.mats], check=False
    )


# ---------------------------------------------------------------------------
# Indecomposability and Krull-Schmidt decomposition
# ---------------------------------------------------------------------------

def _split_by_block(rep, field, block):
    """Split rep along an endomorphism given as a block matrix whose image
    and kernel are complementary; returns the two subspace families."""
    off = vertex_offsets(rep.dims)
    im, ker = [], []
    for v in range(rep.quiver.vertex_count):
        blk = block[off[v]:off[v + 1], off[v]:off[v + 1]]
        im.append(canonical_subspace(field, blk.T))
        ker.append(canonical_subspace(field, field.kernel_basis(blk)))
    return im, ker


def _fitting_split(rep, field, end_blocks):
    d = rep.total_dim
    ident = np.eye(d, dtype=np.int64)
    for blk in end_blocks:
        for c in range(rep.p):
            cand = (blk - c * ident) % rep.p
            if not cand.any():
                continue
            stable = field.stable_power(cand, d)
            r = field.rank(stable)
            if 0 < r < d:
                return _split_by_block(rep, field, stable)
    return None


def _idempotent_split(rep, field, end_blocks, bounds):
    e = len(end_blocks)
    if rep.p ** e > bounds.max_enum:
        raise ResourceBoundError(
            f"|End| = {rep.p}^{e} exceeds the enumeration bound {bounds.max_enum}"
        )
    d = rep.total_dim
    ident = np.eye(d, dtype=np.int64)
    for _, mats in _combo_chunks(end_blocks, rep.p):
        sq = np.einsum("nij,njk->nik", mats, mats) % rep.p
        hits = np.nonzero((sq == mats).all(axis=(1, 2)))[0]
        for i in hits:
            m = mats[i]
            if not m.any() or np.array_equal(m, ident):
                continue
            return _split_by_block(rep, field, m)
    return None


def split_once(rep, bounds=None):
    """A single Krull-Schmidt split of rep, or None when rep is certified
    indecomposable (only trivial idempotents in End, checked by enumeration
    after a fast stable-kernel pass)."""
    bounds = bounds or Bounds()
    field = PrimeField(rep.p)
    end_blocks = [b.block() for b in hom_basis(rep, rep)]
    split = _fitting_split(rep, field, end_blocks)
    if split is None:
        split = _idempotent_split(rep, field, end_blocks, bounds)
    return split


def is_indecomposable(rep, bounds=None):
    if rep.total_dim == 0:
        return False
    return split_once(rep, bounds) is None


def indecomposables(quiver, p, bounds=None):
    """One representative per indecomposable class, for finite type quivers.

    One representative exists per positive root of the Tits form; for each
    root the arrow maps are enumerated in a fixed order and the first
    indecomposable candidate is kept, so results are stable across runs.
    """
    bounds = bounds or Bounds()
    quiver.require_finite_type()
    out = []
    for root in quiver.positive_roots():
        cells = sum(root[t] * root[s] for s, t in quiver.arrows)
        if p ** cells > bounds.max_enum:
            raise ResourceBoundError(
                f"indecomposable search for root {root} needs {p}^{cells} candidates"
            )
        found = None
        for flat in itertools.product(range(p - 1, -1, -1), repeat=cells):
            maps = []
            pos = 0
            for s, t in quiver.arrows:
                size = root[t] * root[s]
                maps.append(
                    np.array(flat[pos:pos + size], dtype=np.int64).reshape(
                        root[t], root[s]
                    )
                )
                pos += size
            cand = Rep(quiver, p, root, maps)
            if is_indecomposable(cand, bounds):
                found = cand
                break
        if found is None:
            raise HallAlgError(f"no indecomposable found for root {root}")
        out.append(found)
    return out


# ---------------------------------------------------------------------------
# Isomorphism classes and the Heart
# ---------------------------------------------------------------------------

class IsoClass:
    """A multiset of indecomposable labels; the canonical name of an
    isomorphism class.  parts is a tuple of (indec index, multiplicity)
    sorted by the indecomposable's display name."""

    __slots__ = ("heart", "parts")

    def __init__(self, heart, parts):
        self.heart = heart
        self.parts = tuple(parts)

    @property
    def is_zero(self):
        return not self.parts

    @property
    def dims(self):
        q = self.heart.quiver
        total = [0] * q.vertex_count
        for idx, mult in self.parts:
            for v, d in enumerate(self.heart.indecomposables()[idx].dims):
                total[v] += mult * d
        return tuple(total)

    @property
    def total_dim(self):
        return sum(self.dims)

    def label(self):
        if not self.parts:
            return "0"
        names = self.heart.indec_names()
        terms = []
        for idx, mult in self.parts:
            terms.append(names[idx] if mult == 1 else f"{names[idx]}^{mult}")
        return "+".join(terms)

    def __eq__(self, other):
        return (
            isinstance(other, IsoClass)
            and other.heart.key == self.heart.key
            and other.parts == self.parts
        )

    def __hash__(self):
        return hash((self.heart.key, self.parts))

    def __repr__(self):
        return f"IsoClass({self.label()})"

    def __str__(self):
        return self.label()


def _indec_name(quiver, dims):
    support = [v for v, d in enumerate(dims) if d]
    if sum(dims) == 1:
        return f"S{support[0] + 1}"
    return "X" + "".join(str(v + 1) * dims[v] for v in support)


class Heart:
    """All cached data for the category of representations of one quiver
    over one prime field: the indecomposable list, canonical labels, and
    memo tables for decomposition and dimension counts."""

    def __init__(self, quiver, p, bounds=None):
        self.bounds = bounds or Bounds()
        self.quiver = quiver
        self.field = PrimeField(p, self.bounds.max_p)
        self.p = p
        self.key = (quiver.key, p)
        self._indecs = None
        self._names = None
        self._name_order = None
        self._by_dims = None
        self._decompose = {}
        self._hom = {}
        self._ext1 = {}
        self._aut = {}
        self._census = {}
        self._classes_by_dims = {}

    def indecomposables(self):
        if self._indecs is None:
            self._indecs = tuple(indecomposables(self.quiver, self.p, self.bounds))
            self._names = tuple(
                _indec_name(self.quiver, r.dims) for r in self._indecs
            )
            order = sorted(range(len(self._names)), key=lambda i: self._names[i])
            self._name_order = {idx: rank for rank, idx in enumerate(order)}
            self._by_dims = {r.dims: i for i, r in enumerate(self._indecs)}
        return self._indecs

    def indec_names(self):
        self.indecomposables()
        return self._names

    def iso_class(self, multiplicities):
        """Build the canonical IsoClass from {indec index: multiplicity}."""
        self.indecomposables()
        items = [(idx, mult) for idx, mult in multiplicities.items() if mult]
        for idx, mult in items:
            if not (0 <= idx < len(self._indecs)) or mult < 0:
                raise HallAlgError(f"bad indecomposable multiplicity ({idx}, {mult})")
        items.sort(key=lambda im: self._name_order[im[0]])
        return IsoClass(self, items)

    def zero_class(self):
        return self.iso_class({})

    def class_of_indec(self, idx):
        return self.iso_class({idx: 1})

    def class_by_name(self, name):
        names = self.indec_names()
        if name not in names:
            raise HallAlgError(f"unknown indecomposable name {name!r}")
        return self.class_of_indec(names.index(name))

    def simple_class(self, v):
        dims = [0] * self.quiver.vertex_count
        dims[v] = 1
        self.indecomposables()
        return self.class_of_indec(self._by_dims[tuple(dims)])

    def rep_of(self, cls):
        """The canonical representative: the direct sum of canonical
        indecomposables in label order."""
        self._require_ours(cls)
        summands = []
        for idx, mult in cls.parts:
            summands.extend([self.indecomposables()[idx]] * mult)
        if not summands:
            return zero_rep(self.quiver, self.p)
        return direct_sum(*summands)

    def _require_ours(self, cls):
        if cls.heart.key != self.key:
            raise MismatchError("IsoClass belongs to a different heart")

    def decompose(self, rep):
        """Krull-Schmidt decomposition of a representation as an IsoClass."""
        if rep.quiver.key != self.quiver.key or rep.p != self.p:
            raise MismatchError("representation over a different quiver or field")
        cached = self._decompose.get(rep.key)
        if cached is not None:
            return cached
        counter = Counter()
        stack = [rep]
        while stack:
            cur = stack.pop()
            if cur.total_dim == 0:
                continue
            hit = self._decompose.get(cur.key)
            if hit is not None:
                for idx, mult in hit.parts:
                    counter[idx] += mult
                continue
            split = split_once(cur, self.bounds)
            if split is None:
                self.indecomposables()
                idx = self._by_dims.get(cur.dims)
                if idx is None:
                    raise HallAlgError(
                        f"indecomposable with unexpected dimension vector {cur.dims}"
                    )
                counter[idx] += 1
                continue
            im, ker = split
            stack.append(sub_from_subspaces(cur, im)[0])
            stack.append(sub_from_subspaces(cur, ker)[0])
        cls = self.iso_class(counter)
        self._decompose[rep.key] = cls
        return cls

    def iso_test(self, m, n):
        """True iff m and n are isomorphic (equal decompositions)."""
        return self.decompose(m) == self.decompose(n)

    def hom_dim(self, x, y):
        key = (x.parts, y.parts)
        if key not in self._hom:
            self._hom[key] = hom_dim(self.rep_of(x), self.rep_of(y))
        return self._hom[key]

    def ext1(self, x, y):
        key = (x.parts, y.parts)
        if key not in self._ext1:
            self._ext1[key] = ext1_dim(self.rep_of(x), self.rep_of(y))
        return self._ext1[key]

    def euler(self, x, y):
        return euler_form_dims(self.quiver, x.dims, y.dims)

    def aut_order(self, cls):
        if cls.parts not in self._aut:
            self._aut[cls.parts] = aut_order(self.rep_of(cls), self.bounds)
        return self._aut[cls.parts]

    def subobject_census(self, z):
        """Counter over (sub class, quotient class) pairs, one entry per
        subrepresentation of the canonical representative of z."""
        self._require_ours(z)
        if z.parts not in self._census:
            counter = Counter()
            for incl, quot in subreps(self.rep_of(z), self.bounds):
                counter[(self.decompose(incl.source), self.decompose(quot))] += 1
            self._census[z.parts] = counter
        return self._census[z.parts]

    def classes_with_dims(self, dims):
        """All IsoClasses with the exact dimension vector, sorted by label."""
        dims = tuple(int(d) for d in dims)
        if dims not in self._classes_by_dims:
            found = []
            indecs = self.indecomposables()
            def rec(i, remaining, acc):
                if all(r == 0 for r in remaining):
                    found.append(self.iso_class({k: v for k, v in acc}))
                    return
                if i == len(indecs):
                    return
                d = indecs[i].dims
                max_mult = min(
                    (r // dd for r, dd in zip(remaining, d) if dd),
                    default=0,
                )
                for mult in range(max_mult, -1, -1):
                    left = tuple(r - mult * dd for r, dd in zip(remaining, d))
                    if any(x < 0 for x in left):
                        continue
                    rec(i + 1, left, acc + ([(i, mult)] if mult else []))
            rec(0, dims, [])
            found.sort(key=lambda c: c.label())
            self._classes_by_dims[dims] = found
        return self._classes_by_dims[dims]

    def classes_up_to_dim(self, max_total):
        """All classes with total dimension <= max_total, sorted by
        (total dim, label); includes the zero class."""
        out = []
        indecs = self.indecomposables()
        def rec(i, budget, acc):
            if i == len(indecs):
                out.append(self.iso_class({k: v for k, v in acc}))
                return
            d = indecs[i].total_dim
            limit = budget // d if d else 0
            for mult in range(limit + 1):
                rec(i + 1, budget - mult * d, acc + ([(i, mult)] if mult else []))
        rec(0, int(max_total), [])
        out.sort(key=lambda c: (c.total_dim, c.label()))
        return out

    def classes_with_dims_at_most(self, dims):
        """All classes whose dimension vector is at most dims vertexwise."""
        dims = tuple(int(d) for d in dims)
        out = []
        indecs = self.indecomposables()
        def rec(i, remaining, acc):
            if i == len(indecs):
                out.append(self.iso_class({k: v for k, v in acc}))
                return
            d = indecs[i].dims
            max_mult = min(
                (r // dd for r, dd in zip(remaining, d) if dd),
                default=0,
            )
            for mult in range(max_mult + 1):
                left = tuple(r - mult * dd for r, dd in zip(remaining, d))
                rec(i + 1, left, acc + ([(i, mult)] if mult else []))
        rec(0, dims, [])
        out.sort(key=lambda c: (c.total_dim, c.label()))
        return out
