"""The classical Hall algebra of the heart.

Structure constants count subobjects: g_{x,y}^z is the number of
subrepresentations of z isomorphic to x with quotient isomorphic to y,
obtained from the subobject census of z.  orbit_check recomputes the same
number as a sum of reciprocal stabilizer orders over Aut(x)-orbits of
monomorphisms, which realizes the orbit-stabilizer identity and serves as
an independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import MismatchError, ResourceBoundError
from .fpmatrix import PrimeField
from .reps import (
    IsoClass,
    _combo_chunks,
    hom_basis,
    image_subspaces,
    quotient_by_subspaces,
)


class HallElement(dict):
    """A finite formal Q-linear combination of object labels.

    Keys are hashable labels (IsoClass or GradedObject), values exact
    Fractions; zero coefficients are never stored.
    """

    def __init__(self, data=()):
        super().__init__()
        items = data.items() if isinstance(data, dict) else data
        for label, coeff in items:
            self.add_term(label, coeff)

    def add_term(self, label, coeff):
        coeff = Fraction(coeff)
        total = self.get(label, Fraction(0)) + coeff
        if total:
            dict.__setitem__(self, label, total)
        elif label in self:
            dict.__delitem__(self, label)

    def __getitem__(self, label):
        return self.get(label, Fraction(0))

    def __add__(self, other):
        out = HallElement(self)
        for label, coeff in other.items():
            out.add_term(label, coeff)
        return out

    def __sub__(self, other):
        out = HallElement(self)
        for label, coeff in other.items():
            out.add_term(label, -coeff)
        return out

    def scaled(self, c):
        c = Fraction(c)
        return HallElement((label, c * v) for label, v in self.items())

    def sorted_items(self):
        return sorted(self.items(), key=lambda kv: kv[0].label())

    def __repr__(self):
        if not self:
            return "HallElement(0)"
        terms = [f"({v})*{k.label()}" for k, v in self.sorted_items()]
        return " + ".join(terms)


def unit_element(label_zero):
    return HallElement([(label_zero, Fraction(1))])


class ClassicalHall:
    """Hall algebra arithmetic for one heart, with memoized constants."""

    def __init__(self, heart):
        self.heart = heart
        self._products = {}

    def _check(self, cls):
        if not isinstance(cls, IsoClass) or cls.heart.key != self.heart.key:
            raise MismatchError("label belongs to a different heart")

    def hall_number(self, x, y, z):
        """g_{x,y}^z: subobjects of z isomorphic to x with quotient y."""
        for c in (x, y, z):
            self._check(c)
        if tuple(a + b for a, b in zip(x.dims, y.dims)) != z.dims:
            return 0
        return self.heart.subobject_census(z).get((x, y), 0)

    def product_classes(self, x, y):
        """chi_x * chi_y = sum_z g_{x,y}^z chi_z over classes with the
        matching dimension vector."""
        self._check(x)
        self._check(y)
        key = (x.parts, y.parts)
        if key not in self._products:
            dims = tuple(a + b for a, b in zip(x.dims, y.dims))
            out = HallElement()
            for z in self.heart.classes_with_dims(dims):
                g = self.hall_number(x, y, z)
                if g:
                    out.add_term(z, g)
            self._products[key] = out
        return self._products[key]

    def product(self, a, b):
        """Bilinear extension of the basis product to HallElements."""
        if isinstance(a, IsoClass):
            a = HallElement([(a, 1)])
        if isinstance(b, IsoClass):
            b = HallElement([(b, 1)])
        out = HallElement()
        for x, cx in a.items():
            for y, cy in b.items():
                for z, g in self.product_classes(x, y).items():
                    out.add_term(z, cx * cy * g)
        return out

    def unit(self):
        return unit_element(self.heart.zero_class())

    def orbit_check(self, x, y, z):
        """g_{x,y}^z recomputed as sum over Aut(x)-orbits of monomorphisms
        x -> z with quotient y of 1/|stabilizer|.

        All negative-Ext factors of the closed formula are trivial in the
        heart, so the orbit sum is the whole constant.
        """
        for c in (x, y, z):
            self._check(c)
        heart = self.heart
        field = PrimeField(heart.p)
        p = heart.p
        if tuple(a + b for a, b in zip(x.dims, y.dims)) != z.dims:
            return Fraction(0)
        x_rep = heart.rep_of(x)
        z_rep = heart.rep_of(z)

        basis = hom_basis(x_rep, z_rep)
        if p ** len(basis) > heart.bounds.max_enum:
            raise ResourceBoundError(
                f"|Hom(x, z)| = {p}^{len(basis)} exceeds the enumeration bound"
            )
        blocks = [b.block() for b in basis]
        off_x = _offsets(x_rep.dims)
        off_z = _offsets(z_rep.dims)

        def vertex_slices(mat):
            return [
                mat[off_z[v]:off_z[v + 1], off_x[v]:off_x[v + 1]]
                for v in range(heart.quiver.vertex_count)
            ]

        monos = []
        shape = (z_rep.total_dim, x_rep.total_dim)
        for _, mats in _combo_chunks(blocks, p, shape=shape):
            for mat in mats:
                if any(
                    field.rank(blk) != x_rep.dims[v]
                    for v, blk in enumerate(vertex_slices(mat))
                ):
                    continue
                mor = _morphism_from_block(heart, x_rep, z_rep, mat, off_x, off_z)
                quot, _ = quotient_by_subspaces(z_rep, image_subspaces(mor))
                if heart.decompose(quot) == y:
                    monos.append(mat)
        if not monos:
            return Fraction(0)

        aut_blocks = self._aut_blocks(x_rep)
        seen = set()
        total = Fraction(0)
        for f in monos:
            fkey = f.tobytes()
            if fkey in seen:
                continue
            stab = 0
            orbit = set()
            for a in aut_blocks:
                g = (f @ a) % p
                gkey = g.tobytes()
                orbit.add(gkey)
                if gkey == fkey:
                    stab += 1
            seen |= orbit
            total += Fraction(1, stab)
        return total

    def _aut_blocks(self, x_rep):
        heart = self.heart
        field = PrimeField(heart.p)
        basis = hom_basis(x_rep, x_rep)
        if heart.p ** len(basis) > heart.bounds.max_enum:
            raise ResourceBoundError(
                f"|End(x)| = {heart.p}^{len(basis)} exceeds the enumeration bound"
            )
        blocks = [b.block() for b in basis]
        auts = []
        d = x_rep.total_dim
        for _, mats in _combo_chunks(blocks, heart.p, shape=(d, d)):
            for mat in mats:
                if field.rank(mat) == d:
                    auts.append(mat)
        return auts


def _offsets(dims):
    off = [0]
    for d in dims:
        off.append(off[-1] + d)
    return off


def _morphism_from_block(heart, source, target, block, off_s, off_t):
    from .reps import RepMorphism

    mats = [
        block[off_t[v]:off_t[v + 1], off_s[v]:off_s[v + 1]]
        for v in range(heart.quiver.vertex_count)
    ]
    return RepMorphism(source, target, mats, check=False)
