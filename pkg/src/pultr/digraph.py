"""Finite digraphs on dense integer vertices, their construction algebra and I/O.

Vertices of a :class:`Digraph` are ``0..n-1``.  Arcs are a set of ordered
pairs, loops allowed, multiplicity ignored.  Labels are optional display
strings; they never take part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import DigraphParseError, InvalidPartitionError

__all__ = [
    "Digraph",
    "VertexPartition",
    "directed_path",
    "parse_digraph",
    "emit_digraph",
    "disjoint_union",
    "quotient",
    "induced_subgraph",
    "is_oriented_tree",
    "underlying_edges",
]


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset = frozenset()
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u},{v}) out of range for n={self.n}")
        object.__setattr__(self, "arcs", arcs)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise ValueError("labels must cover exactly the vertices 0..n-1")
            object.__setattr__(self, "labels", labels)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"

    @property
    def vertices(self) -> range:
        return range(self.n)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    # bitmask adjacency drives the hom engine
    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n)]
        for u, v in sorted(self.arcs):
            out[u].append(v)
        return tuple(tuple(s) for s in out)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        inn = [[] for _ in range(self.n)]
        for u, v in sorted(self.arcs):
            inn[v].append(u)
        return tuple(tuple(s) for s in inn)

    def degree(self, v: int) -> int:
        return len(self.successors[v]) + len(self.predecessors[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def with_labels(self, labels: Sequence[str] | None) -> "Digraph":
        return Digraph(self.n, self.arcs, None if labels is None else tuple(labels))

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image of this digraph under the vertex bijection ``v -> perm[v]``."""
        labels = None
        if self.labels is not None:
            labels = [""] * self.n
            for v, s in enumerate(self.labels):
                labels[perm[v]] = s
        return Digraph(self.n, {(perm[u], perm[v]) for u, v in self.arcs}, labels)


def directed_path(k: int) -> Digraph:
    """The directed path with ``k`` arcs, ``0 -> 1 -> ... -> k``."""
    if k < 0:
        raise ValueError("path length must be non-negative")
    return Digraph(k + 1, {(i, i + 1) for i in range(k)})


@dataclass(frozen=True)
class VertexPartition:
    classes: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "classes", tuple(tuple(sorted(set(b))) for b in self.classes)
        )

    @classmethod
    def identity(cls, n: int) -> "VertexPartition":
        return cls(tuple((v,) for v in range(n)))

    def validate(self, n: int) -> None:
        seen: set[int] = set()
        for block in self.classes:
            if not block:
                raise InvalidPartitionError("empty block in partition")
            for v in block:
                if not 0 <= v < n:
                    raise InvalidPartitionError(f"vertex {v} outside 0..{n - 1}")
                if v in seen:
                    raise InvalidPartitionError(f"vertex {v} appears in two blocks")
                seen.add(v)
        if len(seen) != n:
            missing = sorted(set(range(n)) - seen)
            raise InvalidPartitionError(f"partition omits vertices {missing}")


# --------------------------------------------------------------------------
# native text format

def parse_digraph(text: str) -> Digraph:
    """Read the line-oriented native format.

    ``n <count>`` once, then any number of ``a <u> <v>`` and ``l <v> <text>``
    lines.  Blank lines and lines starting with ``#`` are skipped.
    """
    n = None
    arcs = set()
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, _, rest = line.partition(" ")
        if tag == "n":
            if n is not None:
                raise DigraphParseError("duplicate 'n' header", lineno)
            n = _parse_int(rest, lineno)
            if n < 0:
                raise DigraphParseError(f"negative vertex count {n}", lineno)
        elif tag == "a":
            if n is None:
                raise DigraphParseError("arc before 'n' header", lineno)
            parts = rest.split()
            if len(parts) != 2:
                raise DigraphParseError(f"expected 'a <u> <v>', got {line!r}", lineno)
            u, v = (_parse_int(p, lineno) for p in parts)
            for x in (u, v):
                if not 0 <= x < n:
                    raise DigraphParseError(f"arc endpoint {x} out of range 0..{n - 1}", lineno)
            arcs.add((u, v))
        elif tag == "l":
            if n is None:
                raise DigraphParseError("label before 'n' header", lineno)
            vtext, _, label = rest.strip().partition(" ")
            v = _parse_int(vtext, lineno)
            if not 0 <= v < n:
                raise DigraphParseError(f"label vertex {v} out of range", lineno)
            labels[v] = label.strip()
        else:
            raise DigraphParseError(f"unknown line {line!r}", lineno)
    if n is None:
        raise DigraphParseError("missing 'n' header")
    label_tuple = None
    if labels:
        if len(labels) != n:
            raise DigraphParseError("labels must cover every vertex or none")
        label_tuple = tuple(labels[v] for v in range(n))
    return Digraph(n, frozenset(arcs), label_tuple)


def _parse_int(text: str, lineno: int) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise DigraphParseError(f"expected an integer, got {text.strip()!r}", lineno) from None


def emit_digraph(g: Digraph, format: str = "native") -> str:
    if format == "native":
        lines = [f"n {g.n}"]
        lines += [f"a {u} {v}" for u, v in g.sorted_arcs()]
        if g.labels is not None:
            lines += [f"l {v} {s}" for v, s in enumerate(g.labels)]
        return "\n".join(lines)
    if format == "dot":
        lines = ["digraph G {"]
        for v in g.vertices:
            text = g.label(v).replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  {v} [label="{text}"];')
        lines += [f"  {u} -> {v};" for u, v in g.sorted_arcs()]
        lines.append("}")
        return "\n".join(lines)
    raise ValueError(f"unknown format {format!r}")


# --------------------------------------------------------------------------
# construction algebra

def disjoint_union(parts: Sequence[Digraph]) -> tuple[Digraph, dict[tuple[int, int], int]]:
    """Place ``parts`` side by side; return the union and its offset table."""
    offsets: dict[tuple[int, int], int] = {}
    arcs = set()
    labels: list[str] = []
    base = 0
    for i, g in enumerate(parts):
        for v in g.vertices:
            offsets[(i, v)] = base + v
            labels.append(f"{i}:{g.label(v)}")
        arcs.update((base + u, base + v) for u, v in g.arcs)
        base += g.n
    return Digraph(base, frozenset(arcs), tuple(labels) if base else None), offsets


def quotient(g: Digraph, p: VertexPartition) -> tuple[Digraph, list[int]]:
    """Collapse each block of ``p`` to one vertex.

    Blocks are numbered by their smallest member.  Returns the quotient and
    the projection ``v -> block index``.
    """
    p.validate(g.n)
    blocks = sorted(p.classes, key=lambda b: b[0])
    proj = [0] * g.n
    for i, block in enumerate(blocks):
        for v in block:
            proj[v] = i
    arcs = frozenset((proj[u], proj[v]) for u, v in g.arcs)
    labels = None
    if g.labels is not None:
        labels = tuple("=".join(g.labels[v] for v in block) for block in blocks)
    return Digraph(len(blocks), arcs, labels), proj


def induced_subgraph(g: Digraph, keep: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Subgraph induced on ``keep`` renumbered in increasing order.

    Returns the subgraph and the list of original vertices (new -> old).
    """
    old = sorted(set(keep))
    new = {v: i for i, v in enumerate(old)}
    arcs = frozenset((new[u], new[v]) for u, v in g.arcs if u in new and v in new)
    labels = tuple(g.labels[v] for v in old) if g.labels is not None else None
    return Digraph(len(old), arcs, labels), old


# --------------------------------------------------------------------------
# recognizers

def underlying_edges(g: Digraph) -> dict[int, list[int]]:
    """Undirected neighbour lists ignoring direction (loops dropped)."""
    nbrs: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in g.sorted_arcs():
        if u != v:
            nbrs[u].append(v)
            nbrs[v].append(u)
    return nbrs


def is_oriented_tree(g: Digraph) -> bool:
    """True iff ``g`` is an orientation of a (nonempty) undirected tree.

    A loop, a pair of opposite arcs or any undirected cycle disqualifies.
    """
    if g.n == 0 or len(g.arcs) != g.n - 1:
        return False
    if any(u == v for u, v in g.arcs):
        return False
    edges = {frozenset(a) for a in g.arcs}
    if len(edges) != len(g.arcs):
        return False
    nbrs = underlying_edges(g)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def as_digraph(obj) -> Digraph:
    """Accept a Digraph, native text, or an ``(n, arcs)`` pair."""
    if isinstance(obj, Digraph):
        return obj
    if isinstance(obj, str):
        return parse_digraph(obj)
    if isinstance(obj, tuple) and len(obj) == 2:
        return Digraph(obj[0], frozenset(obj[1]))
    raise TypeError(f"cannot interpret {type(obj).__name__} as a digraph")


def from_mapping(n: int, arcs: Mapping[int, Iterable[int]]) -> Digraph:
    return Digraph(n, frozenset((u, v) for u, vs in arcs.items() for v in vs))
