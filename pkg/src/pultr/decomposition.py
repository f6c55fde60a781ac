"""Rooted subtree bookkeeping for templates whose Q is an oriented tree.

For a template with P a vertex or an arc and Q a tree, the right adjoint is
indexed by rooted subtrees of Q: for each vertex u, the components of
``Q - u`` away from a chosen middle vertex ``m``, each glued back to ``u``.
Subtrees that contain an image of P are *nonpendent* (they carry a set of
vertices of H), the rest are *pendent* (they carry a bit).  Subtrees that
are isomorphic as rooted trees with the P-image marked share a coordinate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .digraph import is_oriented_tree, underlying_edges
from .errors import InvalidTemplateError, PreconditionError
from .templates import PultrTemplate, p_kind

__all__ = ["RootedSubtree", "SubtreeDecomposition", "build_subtree_decomposition"]


@dataclass(frozen=True)
class RootedSubtree:
    vertices: frozenset
    root: int
    kind: str  # "pendent" or "nonpendent"
    p_image: tuple | None = None  # Q-vertices of the P image, in P's vertex order
    which: int | None = None  # 1 or 2: which eps image it holds
    canon: str = ""

    @property
    def pendent(self) -> bool:
        return self.kind == "pendent"

    def describe(self) -> str:
        verts = ",".join(str(v) for v in sorted(self.vertices))
        tag = f"P-image eps{self.which}={self.p_image}" if self.p_image else "pendent"
        return f"root {self.root} on {{{verts}}} [{tag}]"


@dataclass(frozen=True)
class SubtreeDecomposition:
    """``tildeQ`` runs from the eps1 side to the eps2 side.

    ``families[u]`` lists the rooted subtrees at ``u``; ``classes`` holds
    one representative per isomorphism class (the coordinates of the right
    adjoint) and ``class_of`` sends each subtree to its class index.
    ``Tm1``/``Tm2`` are None when the middle vertex is itself the image of
    a single-vertex P on that side.
    """

    template: PultrTemplate
    kind: str
    tildeQ: tuple
    m: int
    families: dict
    classes: tuple
    class_of: dict = field(repr=False)
    Tm1: RootedSubtree | None
    Tm2: RootedSubtree | None
    dist_to_m: tuple = field(repr=False)

    @property
    def S(self) -> tuple:
        return self.classes

    def nonpendent(self, u: int) -> RootedSubtree | None:
        """The nonpendent member of S_u (None if there is none; ambiguous at m)."""
        found = [t for t in self.families[u] if not t.pendent]
        return found[0] if len(found) == 1 else None

    def containing(self, u: int, v: int) -> RootedSubtree:
        """The member of S_u whose vertex set contains ``v``."""
        for t in self.families[u]:
            if v in t.vertices:
                return t
        raise KeyError((u, v))

    def pendent_classes(self, u: int) -> tuple[int, ...]:
        return tuple(sorted({self.class_of[t] for t in self.families[u] if t.pendent}))

    def lines(self) -> list[str]:
        out = [
            f"P kind: {self.kind}",
            "path between images: " + " ".join(str(v) for v in self.tildeQ),
            f"middle vertex: {self.m}",
            f"subtree classes: {len(self.classes)}",
        ]
        for i, t in enumerate(self.classes):
            out.append(f"  T{i}: {t.kind} {t.describe()} canon={t.canon}")
        for u in sorted(self.families):
            members = self.families[u]
            if members:
                names = ", ".join(f"T{self.class_of[t]}" for t in members)
                out.append(f"S_{u}: {names}")
        for tag, t in (("T_m,1", self.Tm1), ("T_m,2", self.Tm2)):
            out.append(f"{tag}: " + (f"T{self.class_of[t]}" if t is not None else "bullet"))
        return out


def _path_between(adj: dict, sources: set, targets: set) -> list[int]:
    """Shortest undirected path from ``sources`` to ``targets`` (BFS)."""
    parent = {s: None for s in sorted(sources)}
    queue = deque(sorted(sources))
    while queue:
        u = queue.popleft()
        if u in targets:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    raise PreconditionError("images of P are not connected in Q")


def _distances(adj: dict, start: int) -> dict[int, int]:
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _component(adj: dict, start: int, removed: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w != removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _canon(t: PultrTemplate, verts: frozenset, root: int, p_image: tuple | None, kind: str) -> str:
    """Rooted-tree code that also records arc directions and the P image."""
    arcs = t.Q.arcs
    p_arc = tuple(p_image) if kind == "P1" and p_image else None
    p_vertex = p_image[0] if kind == "P0" and p_image else None

    def enc(v: int, parent: int | None) -> str:
        parts = []
        for w in sorted(verts):
            if w == parent or w == v:
                continue
            if (v, w) in arcs:
                sym = ">"
                marked = p_arc == (v, w)
            elif (w, v) in arcs:
                sym = "<"
                marked = p_arc == (w, v)
            else:
                continue
            parts.append(("P" if marked else "") + sym + enc(w, v))
        head = "p" if v == p_vertex else "o"
        return head + "(" + "".join(sorted(parts)) + ")"

    return enc(root, None)


def build_subtree_decomposition(t: PultrTemplate, middle: int | None = None) -> SubtreeDecomposition:
    """Path between the images, middle vertex, and the rooted subtree families.

    The middle vertex is the shared vertex when the two image arcs meet;
    otherwise the vertex ``floor(L/2)`` steps from the eps1 end of the
    connecting path of length ``L``.  ``middle`` overrides that choice and
    must lie on the path.
    """
    kind = p_kind(t.P)
    if kind is None:
        raise PreconditionError("P must be a single vertex or a single arc")
    if not is_oriented_tree(t.Q):
        raise PreconditionError("Q must be an oriented tree")
    if t.eps1 == t.eps2:
        raise PreconditionError("eps1 == eps2 is the degenerate case and is not supported")
    from .hom import is_homomorphism

    for eps in (t.eps1, t.eps2):
        if not is_homomorphism(t.P, t.Q, eps):
            raise InvalidTemplateError("eps maps are not homomorphisms")

    adj = underlying_edges(t.Q)
    im1, im2 = set(t.eps1), set(t.eps2)
    shared = im1 & im2
    if shared:
        tilde = [min(shared)]
    else:
        tilde = _path_between(adj, im1, im2)
    if middle is None:
        m = tilde[(len(tilde) - 1) // 2]
    else:
        if middle not in tilde:
            raise PreconditionError(f"middle vertex {middle} is not on the path {tilde}")
        m = middle

    dist = _distances(adj, m)
    images = {1: tuple(t.eps1), 2: tuple(t.eps2)}

    families: dict[int, tuple] = {}
    for u in t.Q.vertices:
        members = []
        for w in adj[u]:
            comp = _component(adj, w, u)
            if u != m and m in comp:
                continue
            verts = frozenset(comp | {u})
            which = None
            for i, img in images.items():
                if set(img) <= verts and set(img) != {u}:
                    which = i
            if which is None:
                st = RootedSubtree(verts, u, "pendent", canon=_canon(t, verts, u, None, kind))
            else:
                img = images[which]
                st = RootedSubtree(verts, u, "nonpendent", img, which, _canon(t, verts, u, img, kind))
            members.append(st)
        families[u] = tuple(members)

    # order classes by where they hang off the path, then by code
    pos = {v: i for i, v in enumerate(tilde)}
    adist_tilde = {}
    for v in t.Q.vertices:
        dv = _distances(adj, v)
        near = min(tilde, key=lambda x: (dv[x], pos[x]))
        adist_tilde[v] = (pos[near], dv[near])

    def key(st: RootedSubtree):
        return (*adist_tilde[st.root], st.root, st.canon, tuple(sorted(st.vertices)))

    all_members = sorted({st for fam in families.values() for st in fam}, key=key)
    reps: dict[tuple, RootedSubtree] = {}
    for st in all_members:
        reps.setdefault((st.kind, st.canon), st)
    classes = tuple(reps.values())
    index = {(c.kind, c.canon): i for i, c in enumerate(classes)}
    class_of = {st: index[(st.kind, st.canon)] for st in all_members}

    tm = {1: None, 2: None}
    for st in families[m]:
        if not st.pendent:
            tm[st.which] = st
    return SubtreeDecomposition(
        template=t,
        kind=kind,
        tildeQ=tuple(tilde),
        m=m,
        families=families,
        classes=classes,
        class_of=class_of,
        Tm1=tm[1],
        Tm2=tm[2],
        dist_to_m=tuple(dist[v] for v in t.Q.vertices),
    )
