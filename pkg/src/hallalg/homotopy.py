"""Finitely supported rational functions on locally finite homotopy types.

A homotopy type is stored as a list of connected components, each carrying
the orders of its homotopy groups pi_1, pi_2, ... (almost all 1).  Only the
orders enter any formula here, so no group structure is kept.  Functions
are plain dicts {component index: Fraction} with zero values dropped;
pushforward weights components by the alternating product of the orders,
pullback is composition with the component map.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import HallAlgError


def _clean_orders(orders):
    orders = tuple(int(o) for o in orders)
    if any(o < 1 for o in orders):
        raise HallAlgError("homotopy group orders must be >= 1")
    while orders and orders[-1] == 1:
        orders = orders[:-1]
    return orders


class LFType:
    """A locally finite homotopy type: per component, the tuple of homotopy
    group orders (pi_1, pi_2, ...), trailing 1s trimmed."""

    __slots__ = ("components",)

    def __init__(self, components):
        self.components = tuple(_clean_orders(c) for c in components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        return isinstance(other, LFType) and other.components == self.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"LFType({list(self.components)})"


class LFMap:
    """A map of homotopy types, recorded on connected components."""

    __slots__ = ("source", "target", "component_map")

    def __init__(self, source, target, component_map):
        component_map = tuple(int(i) for i in component_map)
        if len(component_map) != len(source):
            raise HallAlgError("component map must be total on the source")
        if any(not 0 <= i < len(target) for i in component_map):
            raise HallAlgError("component map hits a missing target component")
        self.source = source
        self.target = target
        self.component_map = component_map

    def __repr__(self):
        return f"LFMap({self.component_map})"


class FiberPresentation:
    """Explicit homotopy fibers of a map to `target`: for every target
    component, a tuple of fiber components (orders, source component)."""

    __slots__ = ("source", "target", "fibers")

    def __init__(self, source, target, fibers):
        if len(fibers) != len(target):
            raise HallAlgError("one fiber list per target component required")
        fixed = []
        for comp_list in fibers:
            items = []
            for orders, src in comp_list:
                src = int(src)
                if not 0 <= src < len(source):
                    raise HallAlgError("fiber component attached outside the source")
                items.append((_clean_orders(orders), src))
            fixed.append(tuple(items))
        self.source = source
        self.target = target
        self.fibers = tuple(fixed)


def compose(g, f):
    """The composite g o f on components."""
    if f.target is not g.source and f.target != g.source:
        raise HallAlgError("maps are not composable")
    return LFMap(f.source, g.target, tuple(g.component_map[i] for i in f.component_map))


def identity_map(x):
    return LFMap(x, x, tuple(range(len(x))))


def alternating_weight(orders):
    """prod_{i>=1} |pi_i|^((-1)^i) as an exact rational."""
    w = Fraction(1)
    for i, o in enumerate(orders, start=1):
        w = w / o if i % 2 else w * o
    return w


def _as_function(alpha, space, name):
    out = {}
    for comp, val in alpha.items():
        comp = int(comp)
        if not 0 <= comp < len(space):
            raise HallAlgError(f"{name} is supported outside its homotopy type")
        val = Fraction(val)
        if val:
            out[comp] = val
    return out


def pushforward(f, alpha):
    """Weighted sum over preimage components:

    (f_! alpha)(y) = sum_{x -> y} alpha(x) * w(X, x) / w(Y, y)

    with w the alternating weight of the homotopy group orders.  Exact.
    """
    alpha = _as_function(alpha, f.source, "alpha")
    out = {}
    for x, val in alpha.items():
        y = f.component_map[x]
        term = val * alternating_weight(f.source.components[x]) \
            / alternating_weight(f.target.components[y])
        out[y] = out.get(y, Fraction(0)) + term
    return {k: v for k, v in out.items() if v}


def pushforward_via_fibers(fp, alpha):
    """The same pushforward computed from an explicit fiber presentation:
    each fiber component contributes alpha at its attachment, weighted by
    the fiber's own alternating weight."""
    alpha = _as_function(alpha, fp.source, "alpha")
    out = {}
    for y, comp_list in enumerate(fp.fibers):
        total = Fraction(0)
        for orders, src in comp_list:
            val = alpha.get(src)
            if val:
                total += val * alternating_weight(orders)
        if total:
            out[y] = total
    return out


def is_proper(f):
    """True iff every target component has finitely many preimages.  On this
    finite representation the preimage counts are always finite integers, so
    this holds for any LFMap; kept as an explicit guard so a lazy/streaming
    extension would have a single place to hook into."""
    preimages = {}
    for x, y in enumerate(f.component_map):
        preimages[y] = preimages.get(y, 0) + 1
    return all(isinstance(n, int) for n in preimages.values())


def pullback(f, alpha):
    """(f^* alpha)(x) = alpha(f(x)); requires a proper map."""
    if not is_proper(f):
        raise HallAlgError("pullback along a non-proper map")
    alpha = _as_function(alpha, f.target, "alpha")
    out = {}
    for x, y in enumerate(f.component_map):
        val = alpha.get(y)
        if val:
            out[x] = val
    return out


def scale(alpha, c):
    c = Fraction(c)
    return {k: c * v for k, v in alpha.items() if c * v}


def add(alpha, beta):
    out = dict(alpha)
    for k, v in beta.items():
        s = out.get(k, Fraction(0)) + v
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def product_projection(fiber, base):
    """The projection F x Y -> Y together with its fiber presentation.

    Components of the product are pairs enumerated fiber-major; homotopy
    group orders multiply componentwise.  The squares built from these
    projections are homotopy cartesian by construction, which is what the
    base change checks rely on.
    """
    comps = []
    cmap = []
    for cf in fiber.components:
        for y, cy in enumerate(base.components):
            n = max(len(cf), len(cy))
            orders = tuple(
                (cf[i] if i < len(cf) else 1) * (cy[i] if i < len(cy) else 1)
                for i in range(n)
            )
            comps.append(orders)
            cmap.append(y)
    total = LFType(comps)
    proj = LFMap(total, base, cmap)
    fibers = []
    for y in range(len(base)):
        items = []
        for fi, cf in enumerate(fiber.components):
            src = fi * len(base) + y
            items.append((cf, src))
        fibers.append(items)
    fp = FiberPresentation(total, base, fibers)
    return total, proj, fp
