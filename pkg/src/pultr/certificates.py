"""Explicit homomorphisms between alternative right adjoints of one functor.

Two right adjoints of the same central functor are homomorphically
equivalent, but when they are too large to materialize the equivalence has
to be shown by a concrete pair of maps.  Each map here is a
:class:`~pultr.factored.CoordinateMap`; :func:`certify` checks both with
:func:`~pultr.factored.find_map_violation`, which searches the coordinate
space for a vertex or arc the map breaks.
"""

from __future__ import annotations

from .adjoints import EXAMPLE_TREE_COORDS, omega_example_tree, omega_tree
from .digraph import Digraph
from .factored import CoordinateMap, FactoredDigraph, find_map_violation
from .templates import PultrTemplate

__all__ = ["example_tree_maps", "certify"]


def _class_index(x: FactoredDigraph, root: int, verts: set[int]) -> int:
    d = x.meta["decomposition"]
    for st, k in d.class_of.items():
        if st.root == root and st.vertices == frozenset(verts):
            return k
    raise KeyError((root, tuple(sorted(verts))))


def example_tree_maps(t: PultrTemplate, h: Digraph, middle: int | None = None):
    """Maps both ways between ``omega_tree(t, h)`` and ``omega_example_tree(h)``.

    ``t`` must be the eleven-vertex tree template with its shipped vertex
    numbering.  Returns ``(general, example, to_example, to_general)``.
    """
    x = omega_tree(t, h, middle=middle)
    e = omega_example_tree(h)
    d = x.meta["decomposition"]
    if d.m not in (3, 5):
        raise ValueError("maps are written for the middle vertex 3 or 5")
    out = h.out_masks
    in_ = h.in_masks
    full = (1 << h.n) - 1

    def common_in(s: int) -> int:
        """Vertices with an arc to every member of ``s``."""
        r = full
        for y in range(h.n):
            if s >> y & 1:
                r &= in_[y]
        return r

    def common_out(s: int) -> int:
        r = full
        for y in range(h.n):
            if s >> y & 1:
                r &= out[y]
        return r

    name = {}
    for key, root, verts in (
        ("in", 1, {0, 1}),
        ("in2", 2, {0, 1, 2}),
        ("in3", 3, {0, 1, 2, 3}),
        ("out_bit", 3, {3, 4}),
        ("in_bit", 7, {6, 7}),
        ("out3", 7, {7, 8, 9, 10}),
        ("out2", 8, {8, 9, 10}),
        ("out", 9, {9, 10}),
        ("via5", 5, {5, 6, 7, 8, 9, 10}),
    ):
        name[key] = f"T{_class_index(x, root, verts)}"
    if d.m == 5:
        name["back5"] = f"T{_class_index(x, 5, {0, 1, 2, 3, 4, 5})}"
    else:
        name["via3"] = f"T{_class_index(x, 3, {3, 5, 6, 7, 8, 9, 10})}"

    ident = lambda v: v  # noqa: E731
    # example -> general
    src = {
        "in": (("S-",), ident),
        "in2": (("S--",), ident),
        "in3": (("S---",), ident),
        "out_bit": (("S+",), lambda s: int(s != 0)),
        "in_bit": (("S-",), lambda s: int(s != 0)),
        "out3": (("S+++",), ident),
        "out2": (("S++",), ident),
        "out": (("S+",), ident),
        "via5": (("S-*+++",), ident),
        "back5": (("S-*+++",), common_in),
        "via3": (("S--*+++",), ident),
    }
    by_coord = {name[k]: v for k, v in src.items() if k in name}
    to_general = CoordinateMap(e, x, tuple(by_coord[c] for c in x.coord_names))

    # general -> example
    n = name
    dst = {
        "S-": ((n["in"], n["in_bit"]), lambda s, b: s if b else 0),
        "S+": ((n["out"], n["out_bit"]), lambda s, b: s if b else 0),
        "S--": ((n["in2"],), ident),
        "S++": ((n["out2"],), ident),
        "S---": ((n["in3"],), ident),
        "S+++": ((n["out3"],), ident),
        "S-*+++": ((n["via5"],), ident),
    }
    if d.m == 5:
        dst["S--*+++"] = ((n["in3"], n["out_bit"]), lambda s, b: common_out(s) if b else full)
    else:
        dst["S--*+++"] = ((n["via3"],), ident)
    to_example = CoordinateMap(x, e, tuple(dst[c] for c in EXAMPLE_TREE_COORDS))
    return x, e, to_example, to_general


def certify(*maps: CoordinateMap) -> list:
    """Violations found for each map (None where the map is a homomorphism)."""
    return [find_map_violation(m) for m in maps]
