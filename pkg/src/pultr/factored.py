"""Digraphs whose vertices are coordinate vectors.

Every right adjoint built in :mod:`pultr.adjoints` has vertices that are
tuples of small coordinates (a vertex of ``H``, a subset of ``V(H)``, a bit,
a family of subsets) and arcs defined by a conjunction of conditions, each
reading a few coordinates of the tail and of the head.  A
:class:`FactoredDigraph` keeps exactly that description.  It can be
materialized into a :class:`~pultr.digraph.Digraph` when small, and a
homomorphism from a small digraph into it is decided by a constraint search
over coordinates, without ever listing its vertices.

Subsets of ``V(H)`` are int bitmasks; families of subsets are bitmasks over
the ``2**|V(H)|`` subset codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from . import csp
from .digraph import Digraph
from .errors import ResourceLimitError

__all__ = [
    "Coord",
    "FactoredDigraph",
    "factored_hom",
    "CoordinateMap",
    "find_map_violation",
    "render_set",
    "render_family",
    "subset_domain",
    "MATERIALIZE_CAP",
]

MATERIALIZE_CAP = 4096


def render_set(mask: int) -> str:
    return "{" + ",".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


def render_family(fam: int) -> str:
    return "{" + ",".join(render_set(s) for s in range(fam.bit_length()) if fam >> s & 1) + "}"


def subset_domain(nh: int) -> tuple[int, ...]:
    return tuple(range(1 << nh))


@dataclass(frozen=True)
class Coord:
    name: str
    domain: tuple
    render: Callable[[int], str] = str


@dataclass(frozen=True)
class FactoredDigraph:
    """Vertices: coordinate tuples passing every vertex condition.

    ``vertex_conditions`` holds ``(scope, pred)`` with ``pred(*values)``;
    ``arc_conditions`` holds ``(tail_scope, head_scope, pred)`` with
    ``pred(*tail_values, *head_values)``.  Scopes are coordinate indices.
    """

    name: str
    coords: tuple
    vertex_conditions: tuple = ()
    arc_conditions: tuple = ()
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def coord_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.coords)

    def index(self, name: str) -> int:
        return self.coord_names.index(name)

    def candidate_count(self) -> int:
        return prod(len(c.domain) for c in self.coords)

    def is_vertex(self, t: Sequence) -> bool:
        if len(t) != len(self.coords):
            return False
        if any(x not in c.domain for x, c in zip(t, self.coords)):
            return False
        return all(pred(*(t[i] for i in scope)) for scope, pred in self.vertex_conditions)

    def has_arc(self, r: Sequence, s: Sequence) -> bool:
        return all(
            pred(*(r[i] for i in ts), *(s[i] for i in hs))
            for ts, hs, pred in self.arc_conditions
        )

    def vertices(self, max_candidates: int | None = None) -> Iterator[tuple]:
        """Valid vertices in lexicographic order of coordinate values."""
        if max_candidates is not None and self.candidate_count() > max_candidates:
            raise ResourceLimitError(
                f"{self.name}: {self.candidate_count()} candidate vertices exceed the cap {max_candidates}",
                estimate=self.candidate_count(), limit=max_candidates,
            )
        for t in product(*(c.domain for c in self.coords)):
            if all(pred(*(t[i] for i in scope)) for scope, pred in self.vertex_conditions):
                yield t

    def vertex_count(self, max_candidates: int | None = 1 << 22) -> int:
        return sum(1 for _ in self.vertices(max_candidates))

    def vertex_label(self, t: Sequence) -> str:
        return "(" + ",".join(c.render(x) for c, x in zip(self.coords, t)) + ")"

    def to_digraph(self, max_candidates: int = MATERIALIZE_CAP) -> tuple[Digraph, list[tuple]]:
        """Materialize; returns the digraph and the coordinate tuple of each vertex.

        Arc tables are evaluated once per condition on coordinate values and
        combined with numpy, so the cost is one ``N x N`` boolean pass per
        condition.
        """
        verts = list(self.vertices(max_candidates))
        n = len(verts)
        if n == 0:
            return Digraph(0), verts
        pos = [{x: i for i, x in enumerate(c.domain)} for c in self.coords]
        idx = np.array([[pos[j][t[j]] for j in range(len(self.coords))] for t in verts], dtype=np.int64)
        adj = np.ones((n, n), dtype=bool)
        for ts, hs, pred in self.arc_conditions:
            tkey, tsize = _mixed_radix(idx, ts, self.coords)
            hkey, hsize = _mixed_radix(idx, hs, self.coords)
            table = np.zeros((tsize, hsize), dtype=bool)
            for a, tv in enumerate(product(*(self.coords[i].domain for i in ts))):
                for b, hv in enumerate(product(*(self.coords[i].domain for i in hs))):
                    table[a, b] = bool(pred(*tv, *hv))
            adj &= table[tkey[:, None], hkey[None, :]]
        us, vs = np.nonzero(adj)
        arcs = frozenset(zip(us.tolist(), vs.tolist()))
        labels = tuple(self.vertex_label(t) for t in verts)
        return Digraph(n, arcs, labels), verts


def _mixed_radix(idx: np.ndarray, scope, coords) -> tuple[np.ndarray, int]:
    key = np.zeros(idx.shape[0], dtype=np.int64)
    size = 1
    for i in scope:
        d = len(coords[i].domain)
        key = key * d + idx[:, i]
        size *= d
    return key, size


def factored_hom(g: Digraph, f: FactoredDigraph, pins: Mapping[int, tuple] | None = None):
    """A homomorphism ``g -> f`` as a list of coordinate tuples, or None.

    One variable per (vertex of ``g``, coordinate); the vertex conditions
    apply to every vertex of ``g`` and the arc conditions to every arc.
    """
    k = len(f.coords)
    domains = []
    for u in g.vertices:
        for j, c in enumerate(f.coords):
            dom = c.domain
            if pins and u in pins:
                want = pins[u][j]
                dom = tuple(x for x in dom if x == want)
            domains.append(dom)
    cons = []
    for u in g.vertices:
        for scope, pred in f.vertex_conditions:
            cons.append((tuple(u * k + i for i in scope), pred))
    for u, v in g.sorted_arcs():
        for ts, hs, pred in f.arc_conditions:
            cons.append((tuple(u * k + i for i in ts) + tuple(v * k + i for i in hs), pred))
    sol = csp.solve(domains, cons)
    if sol is None:
        return None
    return [tuple(sol[u * k:(u + 1) * k]) for u in g.vertices]


# --------------------------------------------------------------------------
# coordinate maps between factored digraphs

@dataclass(frozen=True)
class CoordinateMap:
    """A vertex map ``X -> Y`` given coordinate by coordinate.

    ``parts[j] = (scope, fn)`` computes coordinate ``j`` of the image from
    the source coordinates listed in ``scope`` (names or indices).
    """

    source: FactoredDigraph
    target: FactoredDigraph
    parts: tuple

    def _scopes(self):
        out = []
        for scope, fn in self.parts:
            idx = tuple(self.source.index(s) if isinstance(s, str) else s for s in scope)
            out.append((idx, fn))
        return out

    def __call__(self, t: Sequence) -> tuple:
        return tuple(fn(*(t[i] for i in idx)) for idx, fn in self._scopes())


def find_map_violation(m: CoordinateMap):
    """Search for a witness that ``m`` is not a homomorphism.

    Returns None when the map sends every vertex to a vertex and every arc to
    an arc; otherwise ``("vertex", R)`` or ``("arc", R, S)``.  Each check is a
    constraint search for a vertex or arc of the source on which one target
    condition fails, so nothing is enumerated.
    """
    x, y = m.source, m.target
    kx = len(x.coords)
    parts = m._scopes()
    xdoms = [c.domain for c in x.coords]

    def image_fn(j_list, offset):
        scope = sorted({i for j in j_list for i in parts[j][0]})
        where = {i: p for p, i in enumerate(scope)}

        def compute(vals):
            return [parts[j][1](*(vals[where[i]] for i in parts[j][0])) for j in j_list]

        return tuple(offset + i for i in scope), compute

    for scope, pred in y.vertex_conditions:
        vscope, compute = image_fn(list(scope), 0)
        bad = (vscope, lambda *vals, c=compute, p=pred: not p(*c(vals)))
        cons = list(x.vertex_conditions) + [bad]
        sol = csp.solve(xdoms, cons)
        if sol is not None:
            return ("vertex", tuple(sol))

    base = []
    for scope, pred in x.vertex_conditions:
        base.append((tuple(scope), pred))
        base.append((tuple(kx + i for i in scope), pred))
    for ts, hs, pred in x.arc_conditions:
        base.append((tuple(ts) + tuple(kx + i for i in hs), pred))
    for ts, hs, pred in y.arc_conditions:
        tscope, tcomp = image_fn(list(ts), 0)
        hscope, hcomp = image_fn(list(hs), kx)
        nt = len(tscope)

        def bad(*vals, tc=tcomp, hc=hcomp, p=pred, nt=nt):
            return not p(*tc(vals[:nt]), *hc(vals[nt:]))

        sol = csp.solve(xdoms + xdoms, base + [(tscope + hscope, bad)])
        if sol is not None:
            return ("arc", tuple(sol[:kx]), tuple(sol[kx:]))
    return None
