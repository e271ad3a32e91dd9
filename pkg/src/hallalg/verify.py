"""Verification suites: exhaustive identity checks at desk scale.

Every suite returns a Report with exact pass/fail status and human-readable
lines; any counterexample is printed verbatim.  These back the `verify` CLI
subcommand and the acceptance tests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import homotopy as ht
from .derived import DerivedCategory
from .hall_classical import ClassicalHall, HallElement
from .hall_derived import DerivedHall


@dataclass
class Report:
    suite: str
    ok: bool = True
    checked: int = 0
    lines: list = field(default_factory=list)

    def note(self, text):
        self.lines.append(text)

    def fail(self, text):
        self.ok = False
        self.lines.append("FAIL: " + text)


def graded_family(dcat, degrees, max_dim):
    """All graded objects supported in `degrees` whose per-degree total
    dimension is at most max_dim."""
    heart = dcat.heart
    per = [heart.classes_up_to_dim(max_dim) for _ in degrees]
    out = []
    for combo in itertools.product(*per):
        out.append(dcat.graded({n: c for n, c in zip(degrees, combo)}))
    return out


def _heart_algebras(heart):
    dcat = DerivedCategory(heart)
    classical = ClassicalHall(heart)
    return dcat, classical, DerivedHall(dcat, classical)


def verify_assoc(heart, max_dim, degrees=None):
    """(a*b)*c = a*(b*c), exhaustively.

    Classical mode (degrees None): all heart triples with combined total
    dimension at most max_dim.  Derived mode: all triples from the graded
    family over `degrees` with per-degree dimension at most max_dim.
    """
    rep = Report("assoc")
    if degrees is None:
        classical = ClassicalHall(heart)
        classes = heart.classes_up_to_dim(max_dim)
        for x, y, z in itertools.product(classes, repeat=3):
            if x.total_dim + y.total_dim + z.total_dim > max_dim:
                continue
            left = classical.product(classical.product_classes(x, y),
                                     HallElement([(z, 1)]))
            right = classical.product(HallElement([(x, 1)]),
                                      classical.product_classes(y, z))
            rep.checked += 1
            if left != right:
                rep.fail(f"associator at ({x}, {y}, {z}): {left!r} != {right!r}")
        rep.note(f"classical associativity: {rep.checked} triples, "
                 f"total dim <= {max_dim}")
    else:
        dcat, _, dhall = _heart_algebras(heart)
        objs = graded_family(dcat, degrees, max_dim)
        for x, y, z in itertools.product(objs, repeat=3):
            left = dhall.product(dhall.product_objects(x, y),
                                 HallElement([(z, 1)]))
            right = dhall.product(HallElement([(x, 1)]),
                                  dhall.product_objects(y, z))
            rep.checked += 1
            if left != right:
                rep.fail(f"associator at ({x}, {y}, {z}): {left!r} != {right!r}")
        rep.note(f"derived associativity: {rep.checked} triples over degrees "
                 f"{list(degrees)}, per-degree dim <= {max_dim}")
    return rep


def verify_unit(heart, max_dim, degrees=None):
    """chi_0 is a two-sided unit on every tested basis element."""
    rep = Report("unit")
    if degrees is None:
        classical = ClassicalHall(heart)
        one = heart.zero_class()
        for x in heart.classes_up_to_dim(max_dim):
            el = HallElement([(x, 1)])
            rep.checked += 1
            if (classical.product_classes(one, x) != el
                    or classical.product_classes(x, one) != el):
                rep.fail(f"unit law fails at {x}")
        rep.note(f"classical unit law on {rep.checked} classes")
    else:
        dcat, _, dhall = _heart_algebras(heart)
        one = dcat.zero()
        for x in graded_family(dcat, degrees, max_dim):
            el = HallElement([(x, 1)])
            rep.checked += 1
            if (dhall.product_objects(one, x) != el
                    or dhall.product_objects(x, one) != el):
                rep.fail(f"unit law fails at {x}")
        rep.note(f"derived unit law on {rep.checked} objects")
    return rep


def verify_heart(heart, max_dim):
    """Heart property: the closed-formula derived constants equal the
    classical subobject counts on all heart triples with nonzero factors
    and dim(x) + dim(y) at most max_dim.  Triples with a zero factor are
    the unit law, covered by the unit suite."""
    rep = Report("heart")
    dcat, classical, dhall = _heart_algebras(heart)
    classes = heart.classes_up_to_dim(max_dim)
    for x, y in itertools.product(classes, repeat=2):
        if x.is_zero or y.is_zero or x.total_dim + y.total_dim > max_dim:
            continue
        dims = tuple(a + b for a, b in zip(x.dims, y.dims))
        for z in heart.classes_with_dims(dims):
            g_classical = Fraction(classical.hall_number(x, y, z))
            g_derived = dhall.derived_hall_number(
                dcat.heart_object(x), dcat.heart_object(y), dcat.heart_object(z)
            )
            rep.checked += 1
            if g_classical != g_derived:
                rep.fail(
                    f"g({x},{y};{z}) classical {g_classical} != derived {g_derived}"
                )
        # degree-0 support of the derived product
        prod = dhall.product_objects(dcat.heart_object(x), dcat.heart_object(y))
        for g_obj in prod:
            if not g_obj.is_zero and g_obj.degrees() != (0,):
                rep.fail(f"product chi_{x} * chi_{y} leaves degree 0: {g_obj}")
    rep.note(f"heart property: {rep.checked} constants compared "
             f"(dim x + dim y <= {max_dim})")
    return rep


def verify_oracle_eq(heart, max_dim, degrees):
    """The closed formula (with the chain-level census) against the
    normal-form rewriting coefficient, two-sided over every candidate
    target of every pair in the graded family."""
    rep = Report("oracle-eq")
    dcat, _, dhall = _heart_algebras(heart)
    objs = graded_family(dcat, degrees, max_dim)
    for x, y in itertools.product(objs, repeat=2):
        rewritten = dhall.product_objects(x, y)
        targets = set(dhall.candidate_targets(x, y)) | set(rewritten)
        for z in targets:
            g_formula = dhall.derived_hall_number(x, y, z)
            g_rewrite = rewritten[z]
            rep.checked += 1
            if g_formula != g_rewrite:
                rep.fail(
                    f"g({x},{y};{z}) formula {g_formula} != rewriting {g_rewrite}"
                )
    rep.note(f"oracle equivalence: {rep.checked} constants over degrees "
             f"{list(degrees)}, per-degree dim <= {max_dim}, "
             f"{len(objs)}^2 pairs")
    return rep


def verify_shift(heart, max_dim, degrees):
    """Shift invariance g_{x,y}^z = g_{x[1],y[1]}^{z[1]}, both recomputed
    from scratch by the closed formula."""
    rep = Report("shift")
    dcat, _, dhall = _heart_algebras(heart)
    objs = graded_family(dcat, degrees, max_dim)
    for x, y in itertools.product(objs, repeat=2):
        for z in dhall.candidate_targets(x, y):
            g = dhall.derived_hall_number(x, y, z)
            g_shifted = dhall.derived_hall_number(
                x.shift(1), y.shift(1), z.shift(1)
            )
            rep.checked += 1
            if g != g_shifted:
                rep.fail(
                    f"shift breaks g({x},{y};{z}): {g} vs shifted {g_shifted}"
                )
    rep.note(f"shift invariance: {rep.checked} constants recomputed at [1]")
    return rep


# -- the homotopy type calculus ----------------------------------------------

def _random_type(rng, max_components=4):
    comps = []
    for _ in range(rng.randint(1, max_components)):
        comps.append(tuple(rng.choice((1, 2, 3, 4))
                           for _ in range(rng.randint(0, 3))))
    return ht.LFType(comps)


def _random_map(rng, source, target):
    return ht.LFMap(
        source, target,
        tuple(rng.randrange(len(target)) for _ in range(len(source))),
    )


def _random_fn(rng, space):
    out = {}
    for i in range(len(space)):
        if rng.random() < 0.7:
            num = rng.randint(-4, 4)
            if num:
                out[i] = Fraction(num, rng.randint(1, 4))
    return out


def verify_homotopy(seed, count=1000):
    """Functoriality of the pushforward on composable pairs, base change on
    product squares, and agreement of the two pushforward routes on product
    maps; everything exact."""
    rep = Report("homotopy")
    rng = random.Random(seed)

    for _ in range(count):
        xt, yt, zt = (_random_type(rng) for _ in range(3))
        f = _random_map(rng, xt, yt)
        g = _random_map(rng, yt, zt)
        alpha = _random_fn(rng, xt)
        rep.checked += 1
        if ht.pushforward(ht.compose(g, f), alpha) != ht.pushforward(
                g, ht.pushforward(f, alpha)):
            rep.fail(f"functoriality fails for {f!r}; {g!r}; alpha={alpha}")
    rep.note(f"functoriality: {count} composable pairs")

    for _ in range(count):
        fiber = _random_type(rng, 3)
        base = _random_type(rng, 3)
        base2 = _random_type(rng, 3)
        u = _random_map(rng, base2, base)
        total, proj, fp = ht.product_projection(fiber, base)
        total2, proj2, fp2 = ht.product_projection(fiber, base2)
        cmap = []
        for fi in range(len(fiber)):
            for y2 in range(len(base2)):
                cmap.append(fi * len(base) + u.component_map[y2])
        u_lift = ht.LFMap(total2, total, tuple(cmap))
        alpha = _random_fn(rng, total)
        rep.checked += 1
        lhs = ht.pullback(u, ht.pushforward(proj, alpha))
        rhs = ht.pushforward(proj2, ht.pullback(u_lift, alpha))
        if lhs != rhs:
            rep.fail(f"base change fails for u={u!r}, alpha={alpha}")
        beta = _random_fn(rng, total)
        rep.checked += 1
        if ht.pushforward(proj, beta) != ht.pushforward_via_fibers(fp, beta):
            rep.fail(f"fiber pushforward disagrees for beta={beta}")
    rep.note(f"base change + fiber agreement: {count} product squares")
    return rep


SUITES = ("assoc", "unit", "heart", "oracle-eq", "shift", "homotopy")


def run_suite(name, heart, max_dim, degrees, seed):
    if name == "assoc":
        return verify_assoc(heart, max_dim, degrees)
    if name == "unit":
        return verify_unit(heart, max_dim, degrees)
    if name == "heart":
        return verify_heart(heart, max_dim)
    if name == "oracle-eq":
        return verify_oracle_eq(heart, max_dim, degrees or (0, 1))
    if name == "shift":
        return verify_shift(heart, max_dim, degrees or (0, 1))
    if name == "homotopy":
        return verify_homotopy(seed if seed is not None else 0)
    raise ValueError(f"unknown suite {name!r}")
