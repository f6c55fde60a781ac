"""Homomorphism search, cores and homomorphic equivalence.

The search keeps one bitmask domain per source vertex and maintains arc
consistency after every assignment.  Variables are assigned in index order
and values tried in increasing order, so the first homomorphism found is the
lexicographically least one and enumeration comes out sorted.

Targets may also be :class:`~pultr.factored.FactoredDigraph` instances; those
are delegated to a coordinate-level constraint search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Mapping

from .digraph import Digraph, induced_subgraph, is_oriented_tree
from .errors import ResourceLimitError

__all__ = [
    "Homomorphism",
    "hom_exists",
    "enumerate_homs",
    "is_homomorphism",
    "rrightarrow",
    "core",
    "hom_equivalent",
    "equiv_to_tree",
    "CORE_VERTEX_CAP",
    "CORE_EXHAUSTIVE_LIMIT",
]

CORE_VERTEX_CAP = 64
CORE_EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True)
class Homomorphism:
    source: Digraph
    target: object
    map: tuple

    def __call__(self, v):
        return self.map[v]

    def is_valid(self) -> bool:
        return is_homomorphism(self.source, self.target, self.map)


def is_homomorphism(g: Digraph, h, mapping) -> bool:
    """Independent re-check: total, in range, and arc preserving."""
    if len(mapping) != g.n:
        return False
    if isinstance(h, Digraph):
        if any(not 0 <= x < h.n for x in mapping):
            return False
        return all((mapping[u], mapping[v]) in h.arcs for u, v in g.arcs)
    if not all(h.is_vertex(x) for x in mapping):
        return False
    return all(h.has_arc(mapping[u], mapping[v]) for u, v in g.arcs)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _components(g: Digraph) -> list[list[int]]:
    """Weakly connected components, each sorted, ordered by least vertex."""
    seen = [False] * g.n
    comps = []
    for s in g.vertices:
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [s], [s]
        while stack:
            u = stack.pop()
            for w in g.successors[u] + g.predecessors[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


class _Search:
    """Arc-consistent backtracking of ``g`` into a plain target ``h``."""

    def __init__(self, g: Digraph, h: Digraph, pins: Mapping[int, int] | None):
        self.g = g
        self.h = h
        self.h_out = h.out_masks
        self.h_in = h.in_masks
        self.succ = [tuple(w for w in g.successors[u] if w != u) for u in g.vertices]
        self.pred = [tuple(w for w in g.predecessors[u] if w != u) for u in g.vertices]
        full = (1 << h.n) - 1
        loops = sum(1 << x for x in h.vertices if (x, x) in h.arcs)
        doms = [full] * g.n
        for u in g.vertices:
            if (u, u) in g.arcs:
                doms[u] &= loops
        for u, x in (pins or {}).items():
            if not 0 <= u < g.n:
                raise ValueError(f"pinned vertex {u} not in source")
            if not 0 <= x < h.n:
                raise ValueError(f"pin value {x} not in target")
            doms[u] &= 1 << x
        self.doms = doms

    def propagate(self, doms: list[int], queue: list[int]) -> bool:
        h_out, h_in, succ, pred = self.h_out, self.h_in, self.succ, self.pred
        pending = set(queue)
        while queue:
            w = queue.pop()
            pending.discard(w)
            supp_out = supp_in = 0
            for x in _bits(doms[w]):
                supp_out |= h_out[x]
                supp_in |= h_in[x]
            for v in succ[w]:
                d = doms[v]
                nd = d & supp_out
                if nd != d:
                    if not nd:
                        return False
                    doms[v] = nd
                    if v not in pending:
                        pending.add(v)
                        queue.append(v)
            for v in pred[w]:
                d = doms[v]
                nd = d & supp_in
                if nd != d:
                    if not nd:
                        return False
                    doms[v] = nd
                    if v not in pending:
                        pending.add(v)
                        queue.append(v)
        return True

    def solutions(self, comp: list[int], doms: list[int]) -> Iterator[dict[int, int]]:
        """Solutions restricted to one component, in lexicographic order."""
        if not comp:
            yield {}
            return
        stack = [(doms, doms[comp[0]])]
        while stack:
            level = len(stack) - 1
            cur, rem = stack[-1]
            if not rem:
                stack.pop()
                continue
            low = rem & -rem
            stack[-1] = (cur, rem ^ low)
            var = comp[level]
            nd = list(cur)
            nd[var] = low
            if not self.propagate(nd, [var]):
                continue
            if level + 1 == len(comp):
                yield {v: nd[v].bit_length() - 1 for v in comp}
                continue
            stack.append((nd, nd[comp[level + 1]]))

    def run(self, first_only: bool) -> list[tuple[int, ...]]:
        doms = list(self.doms)
        if any(d == 0 for d in doms):
            return []
        if not self.propagate(doms, list(self.g.vertices)):
            return []
        per_comp = []
        for comp in _components(self.g):
            sols = self.solutions(comp, doms)
            if first_only:
                first = next(sols, None)
                if first is None:
                    return []
                per_comp.append([first])
            else:
                found = list(sols)
                if not found:
                    return []
                per_comp.append(found)
        out = []
        for combo in product(*per_comp):
            m = [0] * self.g.n
            for part in combo:
                for v, x in part.items():
                    m[v] = x
            out.append(tuple(m))
        out.sort()
        return out


def hom_exists(g: Digraph, h, pins: Mapping[int, int] | None = None) -> Homomorphism | None:
    """Lexicographically least homomorphism ``g -> h`` extending ``pins``, or None."""
    if not isinstance(h, Digraph):
        from .factored import factored_hom

        found = factored_hom(g, h, pins)
        return None if found is None else _checked(g, h, found)
    found = _Search(g, h, pins).run(first_only=True)
    return _checked(g, h, found[0]) if found else None


def _checked(g, h, mapping) -> Homomorphism:
    hom = Homomorphism(g, h, tuple(mapping))
    if not hom.is_valid():
        from .errors import ConstructionError

        raise ConstructionError(f"search returned a non-homomorphism {mapping}")
    return hom


def enumerate_homs(g: Digraph, h: Digraph, pins: Mapping[int, int] | None = None) -> list[Homomorphism]:
    """All homomorphisms extending ``pins``, sorted by their map tuple."""
    return [Homomorphism(g, h, m) for m in _Search(g, h, pins).run(first_only=False)]


def rrightarrow(h: Digraph, xs, ys) -> bool:
    """``X => Y``: every vertex of ``xs`` has an arc to every vertex of ``ys``."""
    ymask = 0
    for y in ys:
        ymask |= 1 << y
    out = h.out_masks
    return all(ymask & ~out[x] == 0 for x in xs)


def hom_equivalent(g, h) -> bool:
    return hom_exists(g, h) is not None and hom_exists(h, g) is not None


def _retracts_onto(g: Digraph, keep) -> bool:
    sub, _ = induced_subgraph(g, keep)
    return hom_exists(g, sub) is not None


def core(g: Digraph, max_vertices: int = CORE_VERTEX_CAP,
         exhaustive_limit: int = CORE_EXHAUSTIVE_LIMIT) -> Digraph:
    """A core of ``g`` as an induced subgraph (vertices renumbered in order).

    The core size is found by peeling: a vertex ``v`` can go whenever the
    current graph maps into itself minus ``v``.  Up to ``exhaustive_limit``
    vertices the returned vertex subset is then the lexicographically least
    one of that size onto which ``g`` retracts; above it, the peeled subset
    is returned as is.  Graphs over ``max_vertices`` are refused.
    """
    if g.n > max_vertices:
        raise ResourceLimitError(
            f"core of a {g.n}-vertex digraph exceeds the cap of {max_vertices}",
            estimate=g.n, limit=max_vertices,
        )
    keep = list(g.vertices)
    changed = True
    while changed:
        changed = False
        for v in reversed(list(keep)):
            trial = [w for w in keep if w != v]
            sub, _ = induced_subgraph(g, keep)
            target, _ = induced_subgraph(g, trial)
            if hom_exists(sub, target) is not None:
                keep = trial
                changed = True
    if g.n <= exhaustive_limit:
        for cand in combinations(range(g.n), len(keep)):
            if list(cand) == keep or _retracts_onto(g, cand):
                keep = list(cand)
                break
    result, _ = induced_subgraph(g, keep)
    return result


def equiv_to_tree(g: Digraph, **core_kwargs) -> bool:
    """Whether ``g`` is homomorphically equivalent to an oriented tree.

    Equivalent to the core of ``g`` being an oriented tree: a tree ``T`` with
    ``g <-> T`` has a core that is a subtree of ``T`` and isomorphic to the
    core of ``g``.
    """
    if g.n == 0:
        return False
    return is_oriented_tree(core(g, **core_kwargs))
