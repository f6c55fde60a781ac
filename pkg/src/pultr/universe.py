"""Exhaustive small-digraph universes, brute-force canonical forms and isomorphism."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator

from .digraph import Digraph

__all__ = [
    "all_digraphs",
    "digraph_universe",
    "canonical_form",
    "are_isomorphic",
    "find_isomorphism",
    "oriented_trees",
    "UNIVERSE_CAP",
]

# 2**(n*n) labeled digraphs on n vertices; 5 vertices would be 33 million
UNIVERSE_CAP = 4


def all_digraphs(n: int) -> Iterator[Digraph]:
    """Every labeled digraph on exactly ``n`` vertices, loops allowed.

    Digraph number ``k`` has arc ``(u, v)`` iff bit ``u*n + v`` of ``k`` is set.
    """
    if n > UNIVERSE_CAP:
        from .errors import ResourceLimitError

        raise ResourceLimitError(
            f"{2 ** (n * n)} digraphs on {n} vertices exceeds the cap of {UNIVERSE_CAP} vertices",
            estimate=2 ** (n * n),
        )
    pairs = [(u, v) for u in range(n) for v in range(n)]
    for code in range(1 << len(pairs)):
        yield Digraph(n, frozenset(p for i, p in enumerate(pairs) if code >> i & 1))


def digraph_universe(max_n: int, min_n: int = 0) -> Iterator[Digraph]:
    for n in range(min_n, max_n + 1):
        yield from all_digraphs(n)


@lru_cache(maxsize=None)
def _perms(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(permutations(range(n)))


def canonical_form(g: Digraph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Lexicographically least sorted arc list over all relabelings.

    Brute force over ``n!`` permutations; meant for n <= 7.
    """
    best = None
    arcs = list(g.arcs)
    for perm in _perms(g.n):
        cand = tuple(sorted((perm[u], perm[v]) for u, v in arcs))
        if best is None or cand < best:
            best = cand
    return g.n, best if best is not None else ()


def find_isomorphism(g: Digraph, h: Digraph) -> tuple[int, ...] | None:
    """A bijection ``perm`` with ``g.relabel(perm) == h``, or None."""
    if g.n != h.n or len(g.arcs) != len(h.arcs):
        return None
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return None
    # backtracking with degree-signature pruning
    sig_g = [(len(g.successors[v]), len(g.predecessors[v]), g.has_arc(v, v)) for v in g.vertices]
    sig_h = [(len(h.successors[v]), len(h.predecessors[v]), h.has_arc(v, v)) for v in h.vertices]
    perm = [-1] * g.n
    used = [False] * h.n

    def extend(v: int) -> bool:
        if v == g.n:
            return True
        for w in range(h.n):
            if used[w] or sig_g[v] != sig_h[w]:
                continue
            ok = True
            for u in range(v):
                if g.has_arc(u, v) != h.has_arc(perm[u], w) or g.has_arc(v, u) != h.has_arc(w, perm[u]):
                    ok = False
                    break
            if not ok:
                continue
            perm[v] = w
            used[w] = True
            if extend(v + 1):
                return True
            used[w] = False
        perm[v] = -1
        return False

    return tuple(perm) if extend(0) else None


def are_isomorphic(g: Digraph, h: Digraph) -> bool:
    return find_isomorphism(g, h) is not None


def oriented_trees(max_n: int) -> list[Digraph]:
    """All oriented trees with 1..max_n vertices, one per isomorphism class.

    Grown leaf by leaf from the smaller classes and deduplicated by
    :func:`canonical_form`; each representative is returned in canonical
    labeling.
    """
    if max_n < 1:
        return []
    level = {canonical_form(Digraph(1)): Digraph(1)}
    out = list(level.values())
    for n in range(2, max_n + 1):
        nxt = {}
        for t in level.values():
            for v in range(t.n):
                for arc in ((v, n - 1), (n - 1, v)):
                    grown = Digraph(n, t.arcs | {arc})
                    key = canonical_form(grown)
                    if key not in nxt:
                        nxt[key] = Digraph(n, frozenset(key[1]))
        level = dict(sorted(nxt.items()))
        out.extend(level.values())
    return out
