"""Right adjoints of central Pultr functors.

Each construction returns a :class:`~pultr.factored.FactoredDigraph`: its
vertices are vectors of vertices, subsets and bits over ``V(H)`` and its arcs
are a conjunction of small conditions.  ``.to_digraph()`` materializes it when
the candidate count is small; :func:`pultr.hom.hom_exists` searches into it
directly otherwise.
"""

from __future__ import annotations

from typing import Callable

from .decomposition import SubtreeDecomposition, build_subtree_decomposition
from .digraph import Digraph, is_oriented_tree
from .errors import PreconditionError, ResourceLimitError
from .factored import Coord, FactoredDigraph, render_family, render_set, subset_domain
from .templates import PultrTemplate, p_kind

__all__ = [
    "delta_r",
    "omega_path",
    "omega_path_triple",
    "omega_rpath",
    "omega_tree",
    "omega_example_tree",
    "omega_glued_paths",
    "OMEGA_CONSTRUCTIONS",
    "omega_for",
    "DEFAULT_CANDIDATE_CAP",
]

DEFAULT_CANDIDATE_CAP = 1 << 24


def _guard(name: str, estimate: int, limit: int) -> None:
    if estimate > limit:
        raise ResourceLimitError(f"{name}: about {estimate} candidate vertices, cap is {limit}",
                                 estimate=estimate, limit=limit)


def _guard_h(name: str, h: Digraph, max_h: int, estimate: int) -> None:
    if h.n > max_h:
        raise ResourceLimitError(
            f"{name}: |V(H)|={h.n} exceeds the cap {max_h} (about {estimate} candidate vertices)",
            estimate=estimate, limit=max_h,
        )


def _rr(h: Digraph) -> Callable[[int, int], bool]:
    """``A => B`` on bitmasks: every member of A has an arc to every member of B."""
    out = h.out_masks

    def rr(a: int, b: int) -> bool:
        while a:
            low = a & -a
            if b & ~out[low.bit_length() - 1]:
                return False
            a ^= low
        return True

    return rr


def _subset(h: Digraph, name: str) -> Coord:
    return Coord(name, subset_domain(h.n), render_set)


def _vertex(h: Digraph, name: str) -> Coord:
    return Coord(name, tuple(h.vertices))


def _bit(name: str) -> Coord:
    return Coord(name, (0, 1))


def _cond(terms, fn):
    """Arc condition from ``(side, coord)`` terms; side 0 is the tail, 1 the head.

    ``fn`` receives the values in the order the terms are listed.
    """
    ts = tuple(dict.fromkeys(c for s, c in terms if s == 0))
    hs = tuple(dict.fromkeys(c for s, c in terms if s == 1))
    idx = tuple(ts.index(c) if s == 0 else len(ts) + hs.index(c) for s, c in terms)

    def pred(*vals):
        return fn(*(vals[i] for i in idx))

    return (ts, hs, pred)


def _sub(x: int, y: int) -> bool:
    return x & ~y == 0


# --------------------------------------------------------------------------
# fixed templates

def delta_r(h: Digraph, max_h: int = 8) -> FactoredDigraph:
    """Pairs ``(R-, R+)`` with ``R- => R+``; arc iff ``R+`` meets the head's ``R-``."""
    _guard_h("delta_r", h, max_h, 4 ** h.n)
    rr = _rr(h)
    return FactoredDigraph(
        "delta_r",
        (_subset(h, "R-"), _subset(h, "R+")),
        vertex_conditions=(((0, 1), rr),),
        arc_conditions=(((1,), (0,), lambda rp, sm: rp & sm != 0),),
        meta={"h": h},
    )


def omega_path(h: Digraph, max_h: int = 8) -> FactoredDigraph:
    """Pairs ``(a, A)``; ``(a, A) -> (b, B)`` iff ``b in A`` and ``A => B``."""
    _guard_h("omega_path", h, max_h, h.n * 2 ** h.n)
    rr = _rr(h)
    return FactoredDigraph(
        "omega_path",
        (_vertex(h, "a"), _subset(h, "A")),
        arc_conditions=(
            ((1,), (0,), lambda A, b: A >> b & 1 == 1),
            ((1,), (1,), rr),
        ),
        meta={"h": h},
    )


def omega_path_triple(h: Digraph, max_h: int = 8) -> FactoredDigraph:
    """Triples ``(a, A1, A2)`` with ``A1 => A2``; arc iff ``b in A1`` and ``B1 <= A2``."""
    _guard_h("omega_path_triple", h, max_h, h.n * 4 ** h.n)
    rr = _rr(h)
    return FactoredDigraph(
        "omega_path_triple",
        (_vertex(h, "a"), _subset(h, "A1"), _subset(h, "A2")),
        vertex_conditions=(((1, 2), rr),),
        arc_conditions=(
            ((1,), (0,), lambda A1, b: A1 >> b & 1 == 1),
            ((2,), (1,), lambda A2, B1: _sub(B1, A2)),
        ),
        meta={"h": h},
    )


def _path_order(t: PultrTemplate) -> list[int]:
    """Vertices of an oriented path Q listed from the eps1 end to the eps2 end."""
    if p_kind(t.P) != "P0":
        raise PreconditionError("omega_rpath needs P to be a single vertex")
    if not is_oriented_tree(t.Q) or any(t.Q.degree(v) > 2 for v in t.Q.vertices):
        raise PreconditionError("omega_rpath needs Q to be an oriented path")
    start, end = t.eps1[0], t.eps2[0]
    ends = [v for v in t.Q.vertices if t.Q.degree(v) <= 1]
    if start == end or sorted({start, end}) != sorted(ends):
        raise PreconditionError("omega_rpath needs the two images at the two ends of Q")
    order, prev = [start], None
    while order[-1] != end:
        cur = order[-1]
        nxt = [w for w in t.Q.successors[cur] + t.Q.predecessors[cur] if w != prev]
        prev = cur
        order.append(nxt[0])
    return order


def omega_rpath(t: PultrTemplate, h: Digraph, max_candidates: int = DEFAULT_CANDIDATE_CAP) -> FactoredDigraph:
    """Tuples ``(x, X1..Xk)`` with ``Xk => x`` for an oriented path Q with k arcs.

    Q is read from the eps1 end (position 0) to the eps2 end (position k).
    """
    order = _path_order(t)
    k = len(order) - 1
    _guard("omega_rpath", h.n * 2 ** (k * h.n), max_candidates)
    rr = _rr(h)
    arcs = t.Q.arcs
    coords = (_vertex(h, "x"),) + tuple(_subset(h, f"X{i}") for i in range(1, k + 1))
    conds = []
    first = (order[0], order[1])
    if first in arcs:
        conds.append(((0,), (1,), lambda x, Y1: Y1 >> x & 1 == 1))
    else:
        conds.append(((1,), (0,), lambda X1, y: X1 >> y & 1 == 1))
    for i in range(1, k):
        if (order[i], order[i + 1]) in arcs:
            conds.append(((i,), (i + 1,), lambda Xi, Yn: _sub(Xi, Yn)))
        else:
            conds.append(((i + 1,), (i,), lambda Xn, Yi: _sub(Yi, Xn)))
    return FactoredDigraph(
        "omega_rpath",
        coords,
        vertex_conditions=(((k, 0), lambda Xk, x: rr(Xk, 1 << x)),),
        arc_conditions=tuple(conds),
        meta={"h": h, "template": t, "order": tuple(order)},
    )


EXAMPLE_TREE_COORDS = ("S-", "S+", "S--", "S++", "S---", "S+++", "S-*+++", "S--*+++")


def omega_example_tree(h: Digraph, max_h: int = 2) -> FactoredDigraph:
    """The eight-subset construction for the eleven-vertex tree template."""
    _guard_h("omega_example_tree", h, max_h, 2 ** (8 * h.n))
    rr = _rr(h)
    c = {name: i for i, name in enumerate(EXAMPLE_TREE_COORDS)}
    arcs = (
        ((c["S+"],), (c["S-"],), lambda sp, tm: sp & tm != 0),
        ((c["S-"],), (c["S--"],), _sub),
        ((c["S--"],), (c["S---"],), _sub),
        ((c["S++"],), (c["S+"],), lambda s, t: _sub(t, s)),
        ((c["S+++"],), (c["S++"],), lambda s, t: _sub(t, s)),
        ((c["S-*+++"],), (c["S--*+++"],), _sub),
        ((c["S-"], c["S+++"]), (c["S-*+++"],), lambda sm, s3, t: sm == 0 or _sub(s3, t)),
    )
    return FactoredDigraph(
        "omega_example_tree",
        tuple(_subset(h, name) for name in EXAMPLE_TREE_COORDS),
        vertex_conditions=(((c["S+"], c["S---"], c["S--*+++"]), lambda sp, a, b: sp == 0 or rr(a, b)),),
        arc_conditions=arcs,
        meta={"h": h},
    )


GLUED_COORDS = ("R--", "R-+", "R+-", "R++")


def omega_glued_paths(h: Digraph, max_h: int = 2) -> FactoredDigraph:
    """Quadruples of families of subsets for the glued two-path template.

    Families are bitmasks over subset codes.  A vertex needs every member of
    ``R-+`` to meet every member of ``R+-``; ``R -> S`` iff the union of
    ``R++`` ``=>`` the union of ``S--``, ``R+-`` and ``S--`` share a member,
    and ``R++`` and ``S-+`` share a member.
    """
    nsub = 1 << h.n
    _guard_h("omega_glued_paths", h, max_h, 16 ** nsub)
    rr = _rr(h)
    dom = tuple(range(1 << nsub))
    union = [0] * len(dom)
    for fam in dom:
        u = 0
        for s in range(nsub):
            if fam >> s & 1:
                u |= s
        union[fam] = u

    def meets_all(fa: int, fb: int) -> bool:
        for m in range(nsub):
            if fa >> m & 1:
                for n in range(nsub):
                    if fb >> n & 1 and m & n == 0:
                        return False
        return True

    coords = tuple(Coord(name, dom, render_family) for name in GLUED_COORDS)
    return FactoredDigraph(
        "omega_glued_paths",
        coords,
        vertex_conditions=(((1, 2), meets_all),),
        arc_conditions=(
            ((3,), (0,), lambda rpp, smm: rr(union[rpp], union[smm])),
            ((2,), (0,), lambda rpm, smm: rpm & smm != 0),
            ((3,), (1,), lambda rpp, smp: rpp & smp != 0),
        ),
        meta={"h": h},
    )


# --------------------------------------------------------------------------
# general tree templates

def omega_tree(t: PultrTemplate, h: Digraph, middle: int | None = None,
               max_candidates: int = DEFAULT_CANDIDATE_CAP,
               decomposition: SubtreeDecomposition | None = None) -> FactoredDigraph:
    """Right adjoint for P a vertex or an arc and Q an oriented tree.

    Coordinates: a vertex of H for the image of P (only when P is a vertex),
    then one coordinate per subtree class, a bit for pendent classes and a
    subset of V(H) otherwise.
    """
    d = decomposition or build_subtree_decomposition(t, middle)
    P1 = d.kind == "P1"
    off = 0 if P1 else 1
    coords = [] if P1 else [_vertex(h, "x")]
    for i, st in enumerate(d.classes):
        coords.append(_bit(f"T{i}") if st.pendent else _subset(h, f"T{i}"))
    coords = tuple(coords)
    estimate = 1
    for c in coords:
        estimate *= len(c.domain)
    _guard("omega_tree", estimate, max_candidates)
    rr = _rr(h)

    def co(st) -> int:
        return off + d.class_of[st]

    def bits(u: int) -> tuple[int, ...]:
        return tuple(off + k for k in d.pendent_classes(u))

    # eq:vert with the bullet standing in on the side where m is the image
    pend_m = bits(d.m)
    ends = []
    for st in (d.Tm1, d.Tm2):
        ends.append((0, True) if st is None else (co(st), False))
    (c1, b1), (c2, b2) = ends
    np_ = len(pend_m)

    def vert_pred(*vals, np_=np_, b1=b1, b2=b2):
        if not all(vals[:np_]):
            return True
        x1 = 1 << vals[np_] if b1 else vals[np_]
        x2 = 1 << vals[np_ + 1] if b2 else vals[np_ + 1]
        return rr(x1, x2)

    vertex_conditions = ((pend_m + (c1, c2), vert_pred),)

    Q = t.Q
    dist = d.dist_to_m
    arc_conditions = []
    p_arcs = {tuple(t.eps1), tuple(t.eps2)} if P1 else set()
    images = {t.eps1[0], t.eps2[0]} if not P1 else set()

    for x, y in Q.sorted_arcs():
        if (x, y) in p_arcs:
            continue
        forward = dist[x] > dist[y]  # arc points from the far end a to b
        a, b = (x, y) if forward else (y, x)
        near = d.containing(b, a)
        ba = bits(a)
        far_side, near_side = (0, 1) if forward else (1, 0)
        n = len(ba)
        terms = [(far_side, c) for c in ba]
        if near.pendent:
            terms.append((near_side, co(near)))
            arc_conditions.append(_cond(terms, lambda *v, n=n: not all(v[:n]) or v[n] == 1))
        elif not P1 and a in images:
            terms += [(far_side, 0), (near_side, co(near))]
            arc_conditions.append(_cond(terms, lambda *v, n=n: not all(v[:n]) or v[n + 1] >> v[n] & 1 == 1))
        else:
            ta = d.nonpendent(a)
            if ta is None:
                raise PreconditionError(f"no nonpendent subtree at {a}")
            terms += [(far_side, co(ta)), (near_side, co(near))]
            arc_conditions.append(_cond(terms, lambda *v, n=n: not all(v[:n]) or _sub(v[n], v[n + 1])))

    if P1:
        arc_conditions += _p_arc_conditions(d, co, bits)

    return FactoredDigraph(
        "omega_tree",
        coords,
        vertex_conditions=vertex_conditions,
        arc_conditions=tuple(arc_conditions),
        meta={"h": h, "template": t, "decomposition": d},
    )


def _p_arc_conditions(d: SubtreeDecomposition, co, bits) -> list:
    """The three joint conditions on the two image arcs when P is an arc."""
    t = d.template
    on_path = set(d.tildeQ)

    def split(img):
        inner = [v for v in img if v in on_path]
        near = inner[0]
        far = img[1] if img[0] == near else img[0]
        return far, near

    a, b = split(t.eps1)
    dd, c = split(t.eps2)
    A, B = (0, 1) if (a, b) in t.Q.arcs else (1, 0)
    C, D = (0, 1) if (c, dd) in t.Q.arcs else (1, 0)
    tb = co(d.containing(b, a))
    tc = co(d.containing(c, dd))
    bits_a, bits_d = bits(a), bits(dd)
    na, nd = len(bits_a), len(bits_d)
    ta = [(A, x) for x in bits_a]
    td = [(D, x) for x in bits_d]
    return [
        _cond(ta + [(B, tb)], lambda *v: not all(v[:na]) or v[na] != 0),
        _cond(td + [(C, tc)], lambda *v: not all(v[:nd]) or v[nd] != 0),
        _cond(ta + td + [(B, tb), (C, tc)],
              lambda *v: not all(v[:na + nd]) or v[na + nd] & v[na + nd + 1] != 0),
    ]


# --------------------------------------------------------------------------
# registry

def _fixed(fn):
    return lambda t, h, **kw: fn(h, **kw)


OMEGA_CONSTRUCTIONS: dict[str, Callable[..., FactoredDigraph]] = {
    "delta-r": _fixed(delta_r),
    "omega-path": _fixed(omega_path),
    "omega-path-triple": _fixed(omega_path_triple),
    "omega-rpath": omega_rpath,
    "omega-tree": omega_tree,
    "omega-example-tree": _fixed(omega_example_tree),
    "omega-glued-paths": _fixed(omega_glued_paths),
}


def omega_for(name: str, t: PultrTemplate, h: Digraph, **kwargs) -> FactoredDigraph:
    """Look up a construction by CLI name and apply it."""
    try:
        fn = OMEGA_CONSTRUCTIONS[name]
    except KeyError:
        raise PreconditionError(
            f"unknown construction {name!r}; choose from {', '.join(OMEGA_CONSTRUCTIONS)}"
        ) from None
    return fn(t, h, **kwargs)
