"""Acyclic quivers: validation, the Tits form, positive roots, and paths.

A quiver is a finite directed graph.  Object enumeration is only supported
for quivers of finite representation type, detected exactly via positive
definiteness of the symmetrized Tits form (checked with integer leading
principal minors, no floats).
"""

from __future__ import annotations

import numpy as np

from .errors import HallAlgError, ResourceBoundError


def _integer_det(mat):
    # Bareiss fraction-free elimination; exact for integer matrices.
    n = len(mat)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class Quiver:
    """A finite acyclic quiver with 0-based vertices."""

    def __init__(self, vertex_count, arrows, name=""):
        if vertex_count < 1:
            raise HallAlgError("a quiver needs at least one vertex")
        arrows = tuple((int(s), int(t)) for s, t in arrows)
        for s, t in arrows:
            if not (0 <= s < vertex_count and 0 <= t < vertex_count):
                raise HallAlgError(f"arrow ({s}, {t}) out of vertex range")
        self.vertex_count = int(vertex_count)
        self.arrows = arrows
        self.name = name or f"quiver{vertex_count}"
        self.key = (self.vertex_count, self.arrows)
        if self._has_cycle():
            raise HallAlgError("the quiver has an oriented cycle")
        self._roots = None
        self._paths = None

    def __repr__(self):
        return f"Quiver({self.vertex_count}, {list(self.arrows)}, name={self.name!r})"

    def __eq__(self, other):
        return isinstance(other, Quiver) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def _has_cycle(self):
        indeg = [0] * self.vertex_count
        for _, t in self.arrows:
            indeg[t] += 1
        stack = [v for v in range(self.vertex_count) if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        stack.append(t)
        return seen != self.vertex_count

    def symmetrized_form(self):
        """The integer matrix G with d^T G d = 2 q(d), q the Tits form."""
        n = self.vertex_count
        g = 2 * np.eye(n, dtype=np.int64)
        for s, t in self.arrows:
            g[s, t] -= 1
            g[t, s] -= 1
        return g

    def tits_form(self, d):
        d = np.asarray(d, dtype=np.int64)
        return int(d @ self.symmetrized_form() @ d) // 2

    def is_finite_type(self):
        """True iff the symmetrized Tits form is positive definite."""
        g = self.symmetrized_form()
        for k in range(1, self.vertex_count + 1):
            if _integer_det(g[:k, :k]) <= 0:
                return False
        return True

    def require_finite_type(self):
        if not self.is_finite_type():
            raise HallAlgError(
                f"quiver {self.name!r} is not of finite representation type; "
                "object enumeration is only supported for Dynkin (A/D/E) graphs"
            )

    def positive_roots(self):
        """All dimension vectors d >= 0 with Tits form q(d) = 1, sorted lex.

        Computed as the closure of the unit vectors under the simple
        reflections of the symmetrized form, which yields the full root
        system when the form is positive definite.
        """
        if self._roots is not None:
            return self._roots
        self.require_finite_type()
        g = self.symmetrized_form()
        n = self.vertex_count
        roots = set()
        frontier = [tuple(int(x) for x in row) for row in np.eye(n, dtype=np.int64)]
        roots.update(frontier)
        while frontier:
            nxt = []
            for d in frontier:
                vec = np.array(d, dtype=np.int64)
                pair = g @ vec
                for i in range(n):
                    ref = vec.copy()
                    ref[i] -= pair[i]
                    t = tuple(int(x) for x in ref)
                    if t not in roots:
                        roots.add(t)
                        nxt.append(t)
            frontier = nxt
        pos = sorted(d for d in roots if all(x >= 0 for x in d) and any(d))
        self._roots = pos
        return pos

    def all_paths(self):
        """Every directed path as (source, target, arrow index tuple).

        Includes the trivial path at each vertex (empty arrow tuple).
        Deterministic order: by source, then length, then arrow tuple.
        """
        if self._paths is not None:
            return self._paths
        out = []
        by_source = {}
        for idx, (s, _) in enumerate(self.arrows):
            by_source.setdefault(s, []).append(idx)
        for v in range(self.vertex_count):
            found = [(v, ())]
            frontier = [(v, ())]
            while frontier:
                nxt = []
                for end, arrs in frontier:
                    for idx in sorted(by_source.get(end, [])):
                        item = (self.arrows[idx][1], arrs + (idx,))
                        nxt.append(item)
                found.extend(nxt)
                frontier = nxt
                if len(found) > 10000:
                    raise ResourceBoundError("path enumeration exceeded 10000 paths")
            for end, arrs in found:
                out.append((v, end, arrs))
        out.sort(key=lambda t: (t[0], len(t[2]), t[2]))
        self._paths = out
        return out

    def paths_from(self, v):
        return [(t, arrs) for s, t, arrs in self.all_paths() if s == v]


def linear_quiver(n, name=None):
    """The A_n quiver 1 -> 2 -> ... -> n (0-based internally)."""
    return Quiver(n, [(i, i + 1) for i in range(n - 1)], name=name or f"A{n}")
