"""The left Pultr functor (gluing copies), the central one (hom sets), and composition."""

from __future__ import annotations

from .digraph import Digraph, VertexPartition, disjoint_union, quotient
from .errors import ConstructionError, InvalidTemplateError
from .hom import enumerate_homs, hom_exists, is_homomorphism
from .templates import PultrTemplate

__all__ = [
    "lambda_apply",
    "lambda_with_provenance",
    "gamma_apply",
    "arc_graph",
    "compose_templates",
    "UnionFind",
]


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, k: int) -> int:
        root = k
        while root != self.parent[root]:
            root = self.parent[root]
        while k != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller index wins so block representatives stay stable
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def blocks(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for k in range(len(self.parent)):
            groups.setdefault(self.find(k), []).append(k)
        return sorted(groups.values(), key=lambda b: b[0])


def lambda_with_provenance(t: PultrTemplate, g: Digraph) -> tuple[Digraph, dict]:
    """Glue one copy of P per vertex and one copy of Q per arc of ``g``.

    Returns the quotient and a dict sending ``("P", u, p)`` and
    ``("Q", (u, v), q)`` to the quotient vertex that copy-vertex landed on.
    """
    P, Q = t.P, t.Q
    arcs = g.sorted_arcs()
    parts = [P] * g.n + [Q] * len(arcs)
    union, offsets = disjoint_union(parts)
    names = []
    for u in g.vertices:
        names += [f"P{u}.{p}" for p in P.vertices]
    for u, v in arcs:
        names += [f"Q{u}{v}.{q}" for q in Q.vertices]
    union = union.with_labels(names) if names else union

    uf = UnionFind(union.n)
    for k, (u, v) in enumerate(arcs):
        qpart = g.n + k
        for p in P.vertices:
            uf.union(offsets[(qpart, t.eps1[p])], offsets[(u, p)])
            uf.union(offsets[(qpart, t.eps2[p])], offsets[(v, p)])
    result, proj = quotient(union, VertexPartition(tuple(uf.blocks())))

    prov = {}
    for u in g.vertices:
        for p in P.vertices:
            prov[("P", u, p)] = proj[offsets[(u, p)]]
    for k, arc in enumerate(arcs):
        for q in Q.vertices:
            prov[("Q", arc, q)] = proj[offsets[(g.n + k, q)]]
    return result, prov


def lambda_apply(t: PultrTemplate, g: Digraph) -> Digraph:
    return lambda_with_provenance(t, g)[0]


def _hom_label(m: tuple) -> str:
    return "(" + ",".join(str(x) for x in m) + ")"


def gamma_apply(t: PultrTemplate, h: Digraph) -> Digraph:
    """Vertices: homomorphisms P -> h in lexicographic order.

    ``g1 -> g2`` iff some homomorphism Q -> h restricts to ``g1`` along
    eps1 and to ``g2`` along eps2 (searched with those restrictions pinned).
    """
    homs = [hm.map for hm in enumerate_homs(t.P, h)]
    arcs = set()
    for i, g1 in enumerate(homs):
        for j, g2 in enumerate(homs):
            pins: dict[int, int] = {}
            ok = True
            for eps, gm in ((t.eps1, g1), (t.eps2, g2)):
                for p, q in enumerate(eps):
                    if pins.setdefault(q, gm[p]) != gm[p]:
                        ok = False
            if ok and hom_exists(t.Q, h, pins) is not None:
                arcs.add((i, j))
    return Digraph(len(homs), frozenset(arcs), tuple(_hom_label(m) for m in homs) or None)


def arc_graph(g: Digraph) -> Digraph:
    """The arc graph: one vertex per arc, ``(x,y) -> (y,z)`` for consecutive arcs."""
    verts = g.sorted_arcs()
    index = {a: i for i, a in enumerate(verts)}
    arcs = frozenset(
        (index[(x, y)], index[(y, z)]) for x, y in verts for z in g.successors[y]
    )
    labels = tuple(f"({x},{y})" for x, y in verts)
    return Digraph(len(verts), arcs, labels or None)


def compose_templates(outer: PultrTemplate, inner: PultrTemplate, name: str = "") -> PultrTemplate:
    """Template whose central functor is ``Gamma_outer . Gamma_inner``.

    P and Q are the inner left functor applied to outer's P and Q; each eps of
    outer induces a map between them by sending the copy indexed by a vertex
    (or arc) of P to the copy indexed by its image in Q.
    """
    for t in (outer, inner):
        for eps in (t.eps1, t.eps2):
            if not is_homomorphism(t.P, t.Q, eps):
                raise InvalidTemplateError("compose_templates needs two valid templates")
    LP, provP = lambda_with_provenance(inner, outer.P)
    LQ, provQ = lambda_with_provenance(inner, outer.Q)
    maps = []
    for eps in (outer.eps1, outer.eps2):
        m: list[int | None] = [None] * LP.n
        for key, x in provP.items():
            if key[0] == "P":
                _, u, p = key
                image = provQ[("P", eps[u], p)]
            else:
                _, (u, v), q = key
                image = provQ[("Q", (eps[u], eps[v]), q)]
            if m[x] is not None and m[x] != image:
                raise ConstructionError(f"induced map is not well defined at vertex {x}")
            m[x] = image
        if not is_homomorphism(LP, LQ, m):
            raise ConstructionError("induced map is not a homomorphism")
        maps.append(tuple(m))
    return PultrTemplate(LP, LQ, maps[0], maps[1], name=name)
