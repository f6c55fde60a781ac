from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings

from pultr import (
    Digraph,
    PreconditionError,
    PultrTemplate,
    ResourceLimitError,
    gamma_apply,
    hom_exists,
    load_template,
)
from pultr.adjoints import (
    EXAMPLE_TREE_COORDS,
    OMEGA_CONSTRUCTIONS,
    delta_r,
    omega_example_tree,
    omega_for,
    omega_glued_paths,
    omega_path,
    omega_path_triple,
    omega_rpath,
    omega_tree,
)
from pultr.decomposition import build_subtree_decomposition

from conftest import LOOP, P0, P1, P2, arrow_all, digraphs, make_digraph, naive_gamma, naive_hom, subsets


def brute_delta_r(h: Digraph):
    verts = [(a, b) for a in subsets(h.n) for b in subsets(h.n) if arrow_all(h, a, b)]
    arcs = {(i, j) for i, (_, rp) in enumerate(verts) for j, (sm, _) in enumerate(verts) if rp & sm}
    return verts, arcs


def brute_example_tree_count(h: Digraph) -> int:
    c = {name: i for i, name in enumerate(EXAMPLE_TREE_COORDS)}
    count = 0
    for s in product(subsets(h.n), repeat=8):
        if not s[c["S+"]] or arrow_all(h, s[c["S---"]], s[c["S--*+++"]]):
            count += 1
    return count


class TestCounts:
    def test_delta_r_of_vertex(self):
        g, _ = delta_r(P0).to_digraph()
        verts, arcs = brute_delta_r(P0)
        assert (g.n, len(g.arcs)) == (len(verts), len(arcs)) == (3, 1)

    def test_delta_r_of_loop(self):
        g, _ = delta_r(LOOP).to_digraph()
        verts, arcs = brute_delta_r(LOOP)
        assert (g.n, len(g.arcs)) == (len(verts), len(arcs)) == (4, 4)

    @pytest.mark.parametrize("h", [P1, P2, make_digraph(2, [(0, 1), (1, 0)])])
    def test_delta_r_matches_brute_force(self, h):
        g, _ = delta_r(h).to_digraph()
        verts, arcs = brute_delta_r(h)
        assert g.n == len(verts) and g.arcs == arcs

    def test_omega_path_of_vertex(self):
        g, verts = omega_path(P0).to_digraph()
        assert g.n == 2 and g.arcs == {(1, 0)}
        assert verts == [(0, 0), (0, 1)]

    def test_omega_path_triple_of_vertex(self):
        assert omega_path_triple(P0).vertex_count() == 3

    def test_example_tree_of_vertex(self):
        assert brute_example_tree_count(P0) == 224
        assert omega_example_tree(P0).vertex_count() == 224

    def test_example_tree_of_empty(self):
        g, _ = omega_example_tree(Digraph(0)).to_digraph()
        assert (g.n, len(g.arcs)) == (1, 0)

    def test_glued_of_empty(self):
        g, _ = omega_glued_paths(Digraph(0)).to_digraph()
        assert (g.n, len(g.arcs)) == (12, 4)

    def test_omega_tree_of_empty_has_no_arcs(self):
        for name in ("arc", "comp_v", "tree6"):
            g, _ = omega_tree(load_template(name), Digraph(0)).to_digraph()
            assert not g.arcs
        assert omega_tree(load_template("path"), Digraph(0)).vertex_count() == 0


def _right_adjoint_oracle(t: PultrTemplate, omega, g: Digraph, h: Digraph) -> None:
    verts, arcs = naive_gamma(t.P, t.Q, t.eps1, t.eps2, g)
    gam = Digraph(len(verts), frozenset(arcs))
    mat, _ = omega(h).to_digraph()
    assert (naive_hom(gam, h) is None) == (naive_hom(g, mat) is None)


CHEAP = [
    ("arc", lambda t, h: delta_r(h)),
    ("arc", lambda t, h: omega_tree(t, h)),
    ("path", lambda t, h: omega_path(h)),
    ("path", lambda t, h: omega_path_triple(h)),
    ("path", lambda t, h: omega_rpath(t, h)),
    ("path", lambda t, h: omega_tree(t, h)),
    ("zigzag", lambda t, h: omega_rpath(t, h)),
    ("rpath", lambda t, h: omega_tree(t, h)),
]


@pytest.mark.parametrize("name, build", CHEAP)
@settings(max_examples=25, deadline=None)
@given(g=digraphs(max_n=3), h=digraphs(max_n=2))
def test_adjunction_against_naive_oracle(name, build, g, h):
    t = load_template(name)
    _right_adjoint_oracle(t, lambda x: build(t, x), g, h)


class TestGuards:
    def test_delta_r_size(self):
        with pytest.raises(ResourceLimitError):
            delta_r(Digraph(9))

    def test_example_tree_size(self):
        with pytest.raises(ResourceLimitError):
            omega_example_tree(P2)

    def test_glued_size(self):
        with pytest.raises(ResourceLimitError):
            omega_glued_paths(P2)

    def test_omega_tree_candidates(self):
        with pytest.raises(ResourceLimitError):
            omega_tree(load_template("tree6"), P2, max_candidates=1000)

    def test_materialize_cap(self):
        with pytest.raises(ResourceLimitError):
            omega_tree(load_template("tree6"), P1).to_digraph()


class TestPreconditions:
    def test_rpath_needs_vertex(self):
        with pytest.raises(PreconditionError):
            omega_rpath(load_template("arc"), P1)

    def test_rpath_needs_ends(self):
        t = PultrTemplate(P0, P2, (1,), (2,))
        with pytest.raises(PreconditionError):
            omega_rpath(t, P1)

    def test_tree_needs_tree(self):
        with pytest.raises(PreconditionError):
            omega_tree(load_template("c4"), P1)

    def test_tree_needs_small_p(self):
        with pytest.raises(PreconditionError):
            omega_tree(load_template("glued"), P1)

    def test_degenerate(self):
        with pytest.raises(PreconditionError):
            omega_tree(PultrTemplate(P0, P1, (0,), (0,)), P1)

    def test_unknown_name(self):
        with pytest.raises(PreconditionError):
            omega_for("omega-nope", load_template("arc"), P1)

    def test_registry(self):
        assert set(OMEGA_CONSTRUCTIONS) == {
            "delta-r", "omega-path", "omega-path-triple", "omega-rpath",
            "omega-tree", "omega-example-tree", "omega-glued-paths"}


class TestDecomposition:
    def test_arc_template(self):
        d = build_subtree_decomposition(load_template("arc"))
        assert d.kind == "P1" and d.tildeQ == (1,) and d.m == 1 and len(d.classes) == 2

    def test_path_template(self):
        d = build_subtree_decomposition(load_template("path"))
        assert d.tildeQ == (0, 1, 2, 3) and d.m == 1 and len(d.classes) == 2

    def test_rpath_template(self):
        d = build_subtree_decomposition(load_template("rpath"))
        assert d.tildeQ == (0, 1) and d.m == 0 and len(d.classes) == 1

    def test_tree6(self):
        d = build_subtree_decomposition(load_template("tree6"))
        assert d.tildeQ == (1, 2, 3, 5, 7, 8, 9) and d.m == 5 and len(d.classes) == 10
        assert d.Tm1 is not None and d.Tm2 is not None
        # the side branches 3->4 and 6->7 are the only subtrees free of both images
        assert sorted(sorted(c.vertices) for c in d.classes if c.pendent) == [[3, 4], [6, 7]]

    def test_comp_v(self):
        d = build_subtree_decomposition(load_template("comp_v"))
        assert d.tildeQ == (1, 3) and d.m == 1 and len(d.classes) == 3

    def test_middle_override(self):
        d = build_subtree_decomposition(load_template("tree6"), middle=3)
        assert d.m == 3
        with pytest.raises(PreconditionError):
            build_subtree_decomposition(load_template("tree6"), middle=0)

    def test_families_are_rooted_and_disjoint(self):
        t = load_template("tree6")
        d = build_subtree_decomposition(t)
        for u in t.Q.vertices:
            away = {v for v in t.Q.vertices if d.dist_to_m[v] > d.dist_to_m[u]}
            for st in d.families[u]:
                assert st.root == u and u in st.vertices
            if u != d.m:
                # every vertex behind u (seen from m) lies in exactly one subtree at u
                for v in away:
                    inside = [st for st in d.families[u] if v in st.vertices]
                    assert len(inside) <= 1

    def test_lines(self):
        lines = build_subtree_decomposition(load_template("arc")).lines()
        assert lines[0] == "P kind: P1" and lines[2] == "middle vertex: 1"

    def test_coordinates_follow_classes(self):
        t = load_template("tree6")
        f = omega_tree(t, P1)
        d = f.meta["decomposition"]
        assert len(f.coords) == len(d.classes)
        for c, st in zip(f.coords, d.classes):
            assert len(c.domain) == (2 if st.pendent else 4)


class TestOmegaPathShape:
    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_n=3))
    def test_arcs_match_definition(self, h):
        g, verts = omega_path(h).to_digraph()
        for i, (a, A) in enumerate(verts):
            for j, (b, B) in enumerate(verts):
                want = A >> b & 1 and all((x, y) in h.arcs for x in range(h.n) if A >> x & 1
                                          for y in range(h.n) if B >> y & 1)
                assert ((i, j) in g.arcs) == bool(want)

    def test_gamma_of_path_into_loop(self):
        # Gamma of anything maps to a loop, so every G maps into Omega(loop)
        t = load_template("path")
        f = omega_path(LOOP)
        assert hom_exists(make_digraph(3, [(0, 1), (1, 2), (2, 0)]), f) is not None
        assert hom_exists(gamma_apply(t, LOOP), LOOP) is not None
