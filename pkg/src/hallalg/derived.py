"""The bounded derived category of the hereditary heart.

Objects up to isomorphism are graded objects (a heart class per shift
degree); complexes and chain maps appear only inside the brute-force
oracle that counts morphisms with a prescribed cone.  The sign convention
is fixed once: a heart object placed at shift degree n sits in
cohomological degree -n, and maps between graded pieces contribute
    Hom(x[n], y[m]) = Ext^{m-n}(x, y).
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np

from .errors import HallAlgError, MismatchError, ResourceBoundError
from .fpmatrix import PrimeField
from .reps import (
    RepMorphism,
    canonical_subspace,
    direct_sum,
    hom_basis,
    image_subspaces,
    kernel_subspaces,
    quotient_by_subspaces,
    scale_morphism,
    standard_resolution,
    sub_from_subspaces,
    zero_rep,
)


class GradedObject:
    """A derived object up to isomorphism: heart classes indexed by shift
    degree, finite support, zero components omitted.  components is a tuple
    of (degree, IsoClass) with degrees strictly decreasing."""

    __slots__ = ("heart", "components")

    def __init__(self, heart, components):
        comps = []
        seen = set()
        for n, cls in components:
            n = int(n)
            if cls.heart.key != heart.key:
                raise MismatchError("graded component from a different heart")
            if cls.is_zero:
                continue
            if n in seen:
                raise HallAlgError(f"duplicate degree {n} in graded object")
            seen.add(n)
            comps.append((n, cls))
        comps.sort(key=lambda nc: -nc[0])
        self.heart = heart
        self.components = tuple(comps)

    @property
    def is_zero(self):
        return not self.components

    def degrees(self):
        return tuple(n for n, _ in self.components)

    def component(self, n):
        for deg, cls in self.components:
            if deg == n:
                return cls
        return self.heart.zero_class()

    def shift(self, k):
        return GradedObject(
            self.heart, [(n + k, cls) for n, cls in self.components]
        )

    def total_dim(self):
        return sum(cls.total_dim for _, cls in self.components)

    def label(self):
        if not self.components:
            return "0"
        names = self.heart.indec_names()
        terms = []
        for n, cls in self.components:
            for idx, mult in cls.parts:
                stem = names[idx] if mult == 1 else f"{names[idx]}^{mult}"
                terms.append(f"{stem}[{n}]")
        return "+".join(terms)

    def key(self):
        return tuple((n, cls.parts) for n, cls in self.components)

    def __eq__(self, other):
        return (
            isinstance(other, GradedObject)
            and other.heart.key == self.heart.key
            and other.key() == self.key()
        )

    def __hash__(self):
        return hash((self.heart.key, self.key()))

    def __repr__(self):
        return f"GradedObject({self.label()})"

    def __str__(self):
        return self.label()


class Complex:
    """A bounded cochain complex of representations; d_n: C^n -> C^{n+1}
    with d_{n+1} d_n = 0, checked exactly at construction."""

    __slots__ = ("quiver", "p", "terms", "diffs")

    def __init__(self, quiver, p, terms, diffs, check=True):
        self.quiver = quiver
        self.p = p
        clean_terms = {}
        for n, rep in terms.items():
            if rep.quiver.key != quiver.key or rep.p != p:
                raise MismatchError("complex term over a different quiver or field")
            if rep.total_dim:
                clean_terms[int(n)] = rep
        clean_diffs = {}
        for n, mor in diffs.items():
            n = int(n)
            if mor.is_zero():
                continue
            clean_diffs[n] = mor
        self.terms = clean_terms
        self.diffs = clean_diffs
        if check:
            self._validate()

    def _validate(self):
        for n, mor in self.diffs.items():
            if mor.source != self.term(n) or mor.target != self.term(n + 1):
                raise HallAlgError(f"differential at degree {n} has wrong ends")
        for n in self.diffs:
            nxt = self.diffs.get(n + 1)
            if nxt is not None and not nxt.compose(self.diffs[n]).is_zero():
                raise HallAlgError(f"d o d != 0 at degree {n}")

    def term(self, n):
        return self.terms.get(n) or zero_rep(self.quiver, self.p)

    def diff(self, n):
        mor = self.diffs.get(n)
        if mor is not None:
            return mor
        from .reps import zero_morphism

        return zero_morphism(self.term(n), self.term(n + 1))

    def degree_range(self):
        if not self.terms:
            return range(0, 0)
        lo = min(self.terms)
        hi = max(self.terms)
        return range(lo, hi + 1)

    def shift(self, k):
        """C[k]^n = C^{n+k}, differential scaled by (-1)^k."""
        sign = -1 if k % 2 else 1
        terms = {n - k: rep for n, rep in self.terms.items()}
        diffs = {
            n - k: (mor if sign == 1 else scale_morphism(mor, -1))
            for n, mor in self.diffs.items()
        }
        return Complex(self.quiver, self.p, terms, diffs, check=False)

    def is_zero(self):
        return not self.terms


def one_term_complex(rep, degree=0):
    return Complex(rep.quiver, rep.p, {degree: rep}, {})


class ChainMap:
    """A degreewise morphism of complexes commuting with the differentials
    exactly (checked at construction unless check=False)."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source, target, comps, check=True):
        self.source = source
        self.target = target
        clean = {}
        for n, mor in comps.items():
            if mor.is_zero():
                continue
            clean[int(n)] = mor
        self.comps = clean
        if check:
            self._validate()

    def _validate(self):
        degs = set(self.source.terms) | set(self.target.terms)
        for n, mor in self.comps.items():
            if mor.source != self.source.term(n) or mor.target != self.target.term(n):
                raise HallAlgError(f"chain map component at {n} has wrong ends")
        for n in sorted(degs):
            lhs = self.target.diff(n).compose(self.component(n))
            rhs = self.component(n + 1).compose(self.source.diff(n))
            if not np.array_equal(lhs.block(), rhs.block()):
                raise HallAlgError(f"chain map does not commute at degree {n}")

    def component(self, n):
        mor = self.comps.get(n)
        if mor is not None:
            return mor
        from .reps import zero_morphism

        return zero_morphism(self.source.term(n), self.target.term(n))

    def shift(self, k):
        return ChainMap(
            self.source.shift(k),
            self.target.shift(k),
            {n - k: mor for n, mor in self.comps.items()},
            check=False,
        )


def chain_map_from_morphism(mor, degree=0):
    return ChainMap(
        one_term_complex(mor.source, degree),
        one_term_complex(mor.target, degree),
        {degree: mor},
    )


def cone(f):
    """The mapping cone: cone(f)^n = C^{n+1} + D^n with differential
    [[-d_C, 0], [f, d_D]]."""
    cx, dx = f.source, f.target
    quiver, p = cx.quiver, cx.p
    field = PrimeField(p)
    degs = sorted(
        set(n - 1 for n in cx.terms) | set(dx.terms)
    )
    terms = {}
    for n in degs:
        terms[n] = direct_sum(cx.term(n + 1), dx.term(n))
    diffs = {}
    for n in degs:
        src = terms.get(n)
        tgt = terms.get(n + 1, direct_sum(cx.term(n + 2), dx.term(n + 1)))
        dc = cx.diff(n + 1)
        dd = dx.diff(n)
        fn = f.component(n + 1)
        mats = []
        for v in range(quiver.vertex_count):
            rows = tgt.dims[v]
            cols = src.dims[v]
            m = np.zeros((rows, cols), dtype=np.int64)
            r_split = cx.term(n + 2).dims[v]
            c_split = cx.term(n + 1).dims[v]
            m[:r_split, :c_split] = (-dc.mats[v]) % p
            m[r_split:, :c_split] = fn.mats[v]
            m[r_split:, c_split:] = dd.mats[v]
            mats.append(m)
        mor = RepMorphism(src, tgt, mats, check=False)
        diffs[n] = mor
    out = Complex(quiver, p, terms, diffs, check=False)
    return out


class DerivedCategory:
    """Derived-category computations for one heart: hom dimensions,
    automorphism orders, cohomology, cones, and the morphism census."""

    def __init__(self, heart):
        self.heart = heart
        self.bounds = heart.bounds
        self._census = {}
        self._aut = {}
        self._resolutions = {}

    # -- object constructors ------------------------------------------------

    def graded(self, components):
        """Build a GradedObject from {degree: IsoClass}."""
        return GradedObject(self.heart, list(components.items()))

    def zero(self):
        return GradedObject(self.heart, [])

    def heart_object(self, cls, degree=0):
        return GradedObject(self.heart, [(degree, cls)])

    # -- linear invariants ---------------------------------------------------

    def derived_hom_dim(self, x, z, i=0):
        """dim Hom(x, z[i]): by hereditarity only Hom and Ext^1 between
        graded pieces survive, giving
        sum_n hom(x_n, z_{n-i}) + ext1(x_n, z_{n+1-i})."""
        self._check(x)
        self._check(z)
        total = 0
        for n, cls in x.components:
            total += self.heart.hom_dim(cls, z.component(n - i))
            total += self.heart.ext1(cls, z.component(n + 1 - i))
        return total

    def ext_order(self, x, z, i):
        """|Hom(x, z[i])| = p^dim."""
        return self.heart.p ** self.derived_hom_dim(x, z, i)

    def graded_aut_order(self, x):
        """|Aut(x)| for x = sum x_n[n]: the endomorphism ring is triangular
        with diagonal End(x_n) and off-diagonal Ext^1(x_n, x_{n+1}), so
        |Aut| = prod |Aut(x_n)| * prod p^{ext1(x_n, x_{n+1})}."""
        self._check(x)
        key = x.key()
        if key not in self._aut:
            total = 1
            for n, cls in x.components:
                total *= self.heart.aut_order(cls)
                total *= self.heart.p ** self.heart.ext1(cls, x.component(n + 1))
            self._aut[key] = total
        return self._aut[key]

    def _check(self, x):
        if not isinstance(x, GradedObject) or x.heart.key != self.heart.key:
            raise MismatchError("graded object from a different heart")

    # -- complexes -----------------------------------------------------------

    def complex_of(self, x):
        """The zero-differential complex with the canonical representative
        of x_n in cohomological degree -n."""
        terms = {-n: self.heart.rep_of(cls) for n, cls in x.components}
        return Complex(self.heart.quiver, self.heart.p, terms, {})

    def resolution(self, x):
        """A complex of projectives quasi-isomorphic to x, assembled from
        the standard two-term resolutions of the graded pieces."""
        key = x.key()
        if key in self._resolutions:
            return self._resolutions[key]
        quiver, p = self.heart.quiver, self.heart.p
        pieces = {}
        for n, cls in x.components:
            rep = self.heart.rep_of(cls)
            p1, p0, u, _ = standard_resolution(rep)
            pieces[n] = (p1, p0, u)
        degs = set()
        for n in pieces:
            degs.add(-n)
            degs.add(-n - 1)
        terms = {}
        for i in sorted(degs):
            top = pieces.get(-i, None)       # p0 part: x_n with n = -i
            low = pieces.get(-i - 1, None)   # p1 part: x_n with n = -i - 1
            parts = []
            if top is not None:
                parts.append(top[1])
            if low is not None:
                parts.append(low[0])
            terms[i] = direct_sum(*parts) if parts else zero_rep(quiver, p)
        diffs = {}
        for i in sorted(degs):
            if i + 1 not in terms:
                continue
            src = terms[i]
            tgt = terms[i + 1]
            low = pieces.get(-i - 1, None)
            if low is None:
                continue
            p1, p0, u = low
            top_src = pieces.get(-i, None)
            src_offset = top_src[1].dims if top_src is not None else (0,) * quiver.vertex_count
            tgt_low = pieces.get(-i - 2, None)
            mats = []
            for v in range(quiver.vertex_count):
                m = np.zeros((tgt.dims[v], src.dims[v]), dtype=np.int64)
                m[: p0.dims[v], src_offset[v]:src_offset[v] + p1.dims[v]] = u.mats[v]
                mats.append(m)
            diffs[i] = RepMorphism(src, tgt, mats, check=False)
        out = Complex(quiver, p, terms, diffs)
        self._resolutions[key] = out
        return out

    # -- cohomology and cones --------------------------------------------------

    def cohomology(self, c):
        """Per-degree iso class of ker d_n / im d_{n-1}, as a GradedObject."""
        field = PrimeField(c.p)
        comps = []
        for n in c.degree_range():
            if c.term(n).total_dim == 0:
                continue
            ker = kernel_subspaces(c.diff(n))
            sub, _ = sub_from_subspaces(c.term(n), ker)
            img = image_subspaces(c.diff(n - 1))
            inside = []
            for v in range(c.quiver.vertex_count):
                if img[v].shape[0] == 0:
                    inside.append(np.zeros((0, sub.dims[v]), dtype=np.int64))
                    continue
                sol = field.solve_matrix(ker[v].T, img[v].T)
                if sol is None:
                    raise HallAlgError("image does not lie inside the kernel")
                inside.append(canonical_subspace(field, sol.T))
            h_rep, _ = quotient_by_subspaces(sub, inside)
            cls = self.heart.decompose(h_rep)
            if not cls.is_zero:
                comps.append((-n, cls))
        return GradedObject(self.heart, comps)

    def cohomology_dims(self, c):
        """Vertexwise dimension vectors of the cohomology, by rank counting
        only (no decomposition); cheap acyclicity test."""
        field = PrimeField(c.p)
        out = {}
        for n in c.degree_range():
            term = c.term(n)
            if term.total_dim == 0:
                continue
            dn = c.diff(n)
            dprev = c.diff(n - 1)
            dims = tuple(
                term.dims[v]
                - field.rank(dn.mats[v])
                - field.rank(dprev.mats[v])
                for v in range(c.quiver.vertex_count)
            )
            if any(d < 0 for d in dims):
                raise HallAlgError("rank bookkeeping failed in cohomology_dims")
            if any(dims):
                out[n] = dims
        return out

    def cone_class(self, f):
        """Iso class of the mapping cone of a chain map, via cohomology."""
        return self.cohomology(cone(f))

    # -- the morphism census (the oracle) -------------------------------------

    def chain_hom_space(self, c, d):
        return ChainHomSpace(self.heart, c, d)

    def cone_census(self, x, z):
        """For fixed x, z: a Counter {cone class y: |[x, z]_y|} running over
        all morphism classes x -> z, computed on a projective model of x and
        the zero-differential model of z."""
        self._check(x)
        self._check(z)
        key = (x.key(), z.key())
        if key in self._census:
            return self._census[key]
        space = self.chain_hom_space(self.resolution(x), self.complex_of(z))
        p = self.heart.p
        if p ** space.dim_chain_maps > self.bounds.max_enum:
            raise ResourceBoundError(
                f"chain map space {p}^{space.dim_chain_maps} exceeds the "
                f"enumeration bound {self.bounds.max_enum}"
            )
        census = Counter()
        for cm in space.class_representatives():
            census[self.cone_class(cm)] += 1
        self._census[key] = census
        return census

    def count_morphisms_with_cone(self, x, z, y):
        """|[x, z]_y|: morphisms x -> z (in the homotopy category) whose
        cone is isomorphic to y."""
        self._check(y)
        return self.cone_census(x, z).get(y, 0)

    def aut_order_oracle(self, x):
        """|Aut(x)| counted the hard way: homotopy classes of self chain
        maps of the projective model whose cone is acyclic."""
        self._check(x)
        res = self.resolution(x)
        space = self.chain_hom_space(res, res)
        p = self.heart.p
        if p ** space.dim_chain_maps > self.bounds.max_enum:
            raise ResourceBoundError("self chain map space exceeds the bound")
        count = 0
        for cm in space.class_representatives():
            if not self.cohomology_dims(cone(cm)):
                count += 1
        return count


class ChainHomSpace:
    """The space of chain maps C -> D modulo homotopy, as explicit F_p
    linear algebra: a basis of chain maps (K), the nullhomotopic subspace
    (N), and complement coset representatives."""

    def __init__(self, heart, c, d):
        self.heart = heart
        self.c = c
        self.d = d
        field = PrimeField(heart.p)
        self.field = field
        degs = sorted(set(c.terms) | set(d.terms))
        self.degrees = [n for n in degs if c.term(n).total_dim and d.term(n).total_dim]
        self.bases = {n: hom_basis(c.term(n), d.term(n)) for n in self.degrees}
        self.offsets = {}
        total = 0
        for n in self.degrees:
            self.offsets[n] = total
            total += len(self.bases[n])
        self.dim_coords = total
        self._flat_cache = {}
        for n in self.degrees:
            basis = self.bases[n]
            if basis:
                arr = np.array(
                    [self._flatten(b) for b in basis], dtype=np.int64
                ).reshape(len(basis), -1)
            else:
                arr = np.zeros((0, self._flat_dim(n)), dtype=np.int64)
            self._flat_cache[n] = arr
        kmat = self._chain_constraints()
        if kmat is None:
            kern = field.identity(total)
        else:
            kern = field.kernel_basis(kmat)
        self.K = kern
        self.N = self._nullhomotopic()
        self.Q = _complement_basis(field, self.K, self.N)

    @property
    def dim_chain_maps(self):
        return self.K.shape[0]

    @property
    def dim_nullhomotopic(self):
        return _row_space_rank(self.field, self.N)

    @property
    def dim_classes(self):
        return self.Q.shape[0]

    @staticmethod
    def _flatten(mor):
        if not mor.mats:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([m.ravel() for m in mor.mats])

    def _flat_dim(self, n):
        cm, dm = self.c.term(n), self.d.term(n)
        return sum(dm.dims[v] * cm.dims[v] for v in range(cm.quiver.vertex_count))

    def _chain_constraints(self):
        # one block of constraints per degree n with values in the full
        # matrix space Hom(C^n, D^{n+1}); either side of the commutation
        # relation may be missing when its hom space is zero
        rows = []
        candidates = set()
        for n in self.degrees:
            candidates.add(n)
            candidates.add(n - 1)
        for n in sorted(candidates):
            src = self.c.term(n)
            tgt_next = self.d.term(n + 1)
            flat = sum(
                tgt_next.dims[v] * src.dims[v]
                for v in range(src.quiver.vertex_count)
            )
            if flat == 0:
                continue
            block = np.zeros((flat, self.dim_coords), dtype=np.int64)
            if n in self.offsets:
                dd = self.d.diff(n)
                for j, b in enumerate(self.bases[n]):
                    block[:, self.offsets[n] + j] = self._flatten(dd.compose(b))
            if n + 1 in self.offsets:
                dc = self.c.diff(n)
                for j, b in enumerate(self.bases[n + 1]):
                    block[:, self.offsets[n + 1] + j] = (
                        -self._flatten(b.compose(dc))
                    ) % self.heart.p
            if block.any():
                rows.append(block % self.heart.p)
        if not rows:
            return None
        return np.vstack(rows)

    def _coords_of(self, n, mor):
        """Coordinates of a morphism C^n -> D^n in the hom basis at n."""
        flat = self._flatten(mor)
        basis = self._flat_cache[n]
        if basis.shape[0] == 0:
            if flat.any():
                raise HallAlgError("morphism outside the hom space")
            return np.zeros(0, dtype=np.int64)
        sol = self.field.solve_matrix(basis.T, flat.reshape(-1, 1))
        if sol is None:
            raise HallAlgError("morphism outside the hom space")
        return sol[:, 0]

    def _nullhomotopic(self):
        rows = []
        for n in sorted(set(self.c.terms) | set(self.d.terms)):
            hs = self.c.term(n)
            ht = self.d.term(n - 1)
            if hs.total_dim == 0 or ht.total_dim == 0:
                continue
            for h in hom_basis(hs, ht):
                vec = np.zeros(self.dim_coords, dtype=np.int64)
                lower = h.compose(self.c.diff(n - 1))  # C^{n-1} -> D^{n-1}
                if n - 1 in self.offsets:
                    co = self._coords_of(n - 1, lower)
                    vec[self.offsets[n - 1]:self.offsets[n - 1] + co.shape[0]] = co
                upper = self.d.diff(n - 1).compose(h)  # C^n -> D^n
                if n in self.offsets:
                    co = self._coords_of(n, upper)
                    vec[self.offsets[n]:self.offsets[n] + co.shape[0]] = co
                if vec.any():
                    rows.append(vec)
        if not rows:
            return np.zeros((0, self.dim_coords), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    def coords_to_chain_map(self, coords):
        comps = {}
        for n in self.degrees:
            mats = [
                np.zeros((self.d.term(n).dims[v], self.c.term(n).dims[v]),
                         dtype=np.int64)
                for v in range(self.heart.quiver.vertex_count)
            ]
            for j, b in enumerate(self.bases[n]):
                coeff = int(coords[self.offsets[n] + j])
                if coeff:
                    for v in range(len(mats)):
                        mats[v] = (mats[v] + coeff * b.mats[v]) % self.heart.p
            comps[n] = RepMorphism(self.c.term(n), self.d.term(n), mats, check=False)
        return ChainMap(self.c, self.d, comps, check=False)

    def class_representatives(self):
        """One chain map per homotopy class, deterministically ordered."""
        p = self.heart.p
        k = self.Q.shape[0]
        for digits in itertools.product(range(p), repeat=k):
            if k:
                coords = (np.array(digits, dtype=np.int64) @ self.Q) % p
            else:
                coords = np.zeros(self.dim_coords, dtype=np.int64)
            yield self.coords_to_chain_map(coords)


def _row_space_rank(field, rows):
    if rows.shape[0] == 0:
        return 0
    return field.rank(rows)


def _complement_basis(field, k_rows, n_rows):
    """Rows spanning a complement of span(n_rows) inside span(k_rows)."""
    p = field.p
    if k_rows.shape[0] == 0:
        return k_rows.copy()
    work = []
    if n_rows.shape[0]:
        red, piv = field.rref(n_rows)
        work = [(int(c), red[i]) for i, c in enumerate(piv)]
    out = []
    for row in k_rows:
        r = row.copy()
        for c, w in work:
            if r[c]:
                r = (r - r[c] * w) % p
        if r.any():
            lead = int(np.nonzero(r)[0][0])
            inv = pow(int(r[lead]), p - 2, p)
            r = (r * inv) % p
            out.append(r.copy())
            work.append((lead, r))
            work.sort(key=lambda cw: cw[0])
    if not out:
        return np.zeros((0, k_rows.shape[1]), dtype=np.int64)
    return np.array(out, dtype=np.int64)
