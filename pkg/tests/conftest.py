"""Shared oracles for the test suite.

Everything here is written from the definitions with plain loops over all
maps or all subsets, and deliberately shares no code with the package
beyond the Digraph container.
"""

from __future__ import annotations

import sys
from itertools import permutations, product

import pytest
from hypothesis import strategies as st

from pultr import Digraph


def naive_hom(g: Digraph, h: Digraph, pins=None) -> tuple | None:
    """Lexicographically least arc-preserving map, trying all of them."""
    pins = pins or {}
    for m in product(range(h.n), repeat=g.n):
        if any(m[u] != x for u, x in pins.items()):
            continue
        if all((m[u], m[v]) in h.arcs for u, v in g.arcs):
            return m
    return None


def naive_all_homs(g: Digraph, h: Digraph) -> list[tuple]:
    return [m for m in product(range(h.n), repeat=g.n)
            if all((m[u], m[v]) in h.arcs for u, v in g.arcs)]


def naive_isomorphic(g: Digraph, h: Digraph) -> bool:
    if g.n != h.n or len(g.arcs) != len(h.arcs):
        return False
    return any({(p[u], p[v]) for u, v in g.arcs} == set(h.arcs) for p in permutations(range(g.n)))


def naive_gamma(P, Q, eps1, eps2, h: Digraph) -> tuple[list[tuple], set]:
    """Central functor from its definition: every map Q -> h restricted along eps1, eps2."""
    verts = naive_all_homs(P, h)
    arcs = set()
    for m in naive_all_homs(Q, h):
        g1 = tuple(m[eps1[p]] for p in range(P.n))
        g2 = tuple(m[eps2[p]] for p in range(P.n))
        arcs.add((verts.index(g1), verts.index(g2)))
    return verts, arcs


def subsets(n: int) -> list[frozenset]:
    return [frozenset(i for i in range(n) if code >> i & 1) for code in range(1 << n)]


def arrow_all(h: Digraph, xs, ys) -> bool:
    return all((x, y) in h.arcs for x in xs for y in ys)


def make_digraph(n: int, arcs) -> Digraph:
    return Digraph(n, frozenset(arcs))


@st.composite
def digraphs(draw, max_n: int = 4, min_n: int = 0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, frozenset(chosen))


P0 = Digraph(1)
P1 = make_digraph(2, [(0, 1)])
P2 = make_digraph(3, [(0, 1), (1, 2)])
LOOP = make_digraph(1, [(0, 0)])


@pytest.fixture(scope="session")
def small_hs():
    """Every labeled digraph on at most two vertices, listed without the package."""
    out = []
    for n in range(3):
        pairs = [(u, v) for u in range(n) for v in range(n)]
        for code in range(1 << len(pairs)):
            out.append(Digraph(n, frozenset(p for i, p in enumerate(pairs) if code >> i & 1)))
    return out


def pytest_terminal_summary(terminalreporter):
    results = sys.modules.get("test_acceptance")
    if results is None or not results.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(results.RESULTS):
        terminalreporter.write_line(results.RESULTS[i])
