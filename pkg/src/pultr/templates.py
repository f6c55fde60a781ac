"""Pultr templates: a pair of digraphs P, Q with two homomorphisms P -> Q.

Text format (``.tpl``)::

    # comment
    P
    n 2
    a 0 1
    Q
    n 3
    a 0 1
    a 1 2
    e1 0 0
    e1 1 1
    e2 0 1
    e2 1 2

The ``P`` and ``Q`` sections are native digraph blocks; ``e1 <p> <q>`` and
``e2 <p> <q>`` lines give the two maps and may appear anywhere after ``Q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .digraph import Digraph, emit_digraph, is_oriented_tree, parse_digraph
from .errors import DigraphParseError, InvalidTemplateError
from .hom import is_homomorphism

__all__ = [
    "PultrTemplate",
    "TemplateReport",
    "validate_template",
    "parse_template",
    "emit_template",
    "load_template",
    "fixture_names",
    "ACCEPTANCE_FIXTURES",
    "p_kind",
]

ACCEPTANCE_FIXTURES = ("arc", "c4", "path", "rpath", "glued", "comp_u", "comp_v", "tree6")


@dataclass(frozen=True)
class PultrTemplate:
    P: Digraph
    Q: Digraph
    eps1: tuple
    eps2: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "eps1", tuple(int(x) for x in self.eps1))
        object.__setattr__(self, "eps2", tuple(int(x) for x in self.eps2))
        for tag, eps in (("eps1", self.eps1), ("eps2", self.eps2)):
            if len(eps) != self.P.n:
                raise InvalidTemplateError(f"{tag} must map all {self.P.n} vertices of P")
            if any(not 0 <= x < self.Q.n for x in eps):
                raise InvalidTemplateError(f"{tag} maps outside Q")

    def image(self, i: int) -> tuple[int, ...]:
        """Image of P under eps_i as a vertex tuple (P's vertex order)."""
        return self.eps1 if i == 1 else self.eps2


@dataclass(frozen=True)
class TemplateReport:
    eps1_is_hom: bool
    eps2_is_hom: bool
    degenerate: bool
    p_kind: str | None
    q_is_tree: bool

    @property
    def valid(self) -> bool:
        return self.eps1_is_hom and self.eps2_is_hom

    @property
    def tree_theorem_applies(self) -> bool:
        """P is a vertex or an arc, Q an oriented tree, and eps1 != eps2."""
        return self.valid and self.p_kind is not None and self.q_is_tree and not self.degenerate

    def lines(self) -> list[str]:
        yn = {True: "yes", False: "no"}
        return [
            f"eps1 homomorphism: {yn[self.eps1_is_hom]}",
            f"eps2 homomorphism: {yn[self.eps2_is_hom]}",
            f"eps1 == eps2 (degenerate): {yn[self.degenerate]}",
            f"P kind: {self.p_kind or 'other'}",
            f"Q oriented tree: {yn[self.q_is_tree]}",
            f"tree-template right adjoint applies: {yn[self.tree_theorem_applies]}",
        ]


def p_kind(p: Digraph) -> str | None:
    """``"P0"`` for a single vertex, ``"P1"`` for a single non-loop arc."""
    if p.n == 1 and not p.arcs:
        return "P0"
    if p.n == 2 and len(p.arcs) == 1:
        (u, v), = p.arcs
        if u != v:
            return "P1"
    return None


def validate_template(t: PultrTemplate) -> TemplateReport:
    """Check both maps; raise :class:`InvalidTemplateError` if either is not a homomorphism."""
    r = TemplateReport(
        eps1_is_hom=is_homomorphism(t.P, t.Q, t.eps1),
        eps2_is_hom=is_homomorphism(t.P, t.Q, t.eps2),
        degenerate=t.eps1 == t.eps2,
        p_kind=p_kind(t.P),
        q_is_tree=is_oriented_tree(t.Q),
    )
    if not r.valid:
        bad = [tag for tag, ok in (("eps1", r.eps1_is_hom), ("eps2", r.eps2_is_hom)) if not ok]
        raise InvalidTemplateError(f"{', '.join(bad)} not arc preserving")
    return r


# --------------------------------------------------------------------------
# text I/O

def parse_template(text: str, name: str = "") -> PultrTemplate:
    sections: dict[str, list[tuple[int, str]]] = {"P": [], "Q": []}
    eps: dict[str, dict[int, int]] = {"e1": {}, "e2": {}}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("P", "Q"):
            if sections[line]:
                raise DigraphParseError(f"duplicate section {line}", lineno)
            current = line
            continue
        tag = line.split()[0]
        if tag in eps:
            parts = line.split()
            if len(parts) != 3:
                raise DigraphParseError(f"expected '{tag} <p> <q>'", lineno)
            try:
                p, q = int(parts[1]), int(parts[2])
            except ValueError:
                raise DigraphParseError(f"non-integer in {line!r}", lineno) from None
            if p in eps[tag] and eps[tag][p] != q:
                raise DigraphParseError(f"{tag} assigns vertex {p} twice", lineno)
            eps[tag][p] = q
            continue
        if current is None:
            raise DigraphParseError(f"line outside P/Q section: {line!r}", lineno)
        sections[current].append((lineno, line))
    graphs = {}
    nlines = len(text.splitlines())
    for key in ("P", "Q"):
        if not sections[key]:
            raise DigraphParseError(f"missing section {key}")
        # blank out everything else so parse errors keep file line numbers
        body = [""] * nlines
        for ln, line in sections[key]:
            body[ln - 1] = line
        graphs[key] = parse_digraph("\n".join(body))
    maps = []
    for tag in ("e1", "e2"):
        m = eps[tag]
        n = graphs["P"].n
        if sorted(m) != list(range(n)):
            raise DigraphParseError(f"{tag} must assign each of the {n} vertices of P exactly once")
        maps.append(tuple(m[p] for p in range(n)))
    return PultrTemplate(graphs["P"], graphs["Q"], maps[0], maps[1], name=name)


def emit_template(t: PultrTemplate) -> str:
    lines = []
    if t.name:
        lines.append(f"# {t.name}")
    lines += ["P", emit_digraph(t.P.with_labels(None)), "Q", emit_digraph(t.Q.with_labels(None))]
    lines += [f"e1 {p} {q}" for p, q in enumerate(t.eps1)]
    lines += [f"e2 {p} {q}" for p, q in enumerate(t.eps2)]
    return "\n".join(lines) + "\n"


def fixture_names() -> list[str]:
    root = resources.files("pultr") / "templates"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".tpl"))


def load_template(name_or_path: str | Path) -> PultrTemplate:
    """Load a shipped fixture by name (``"arc"``) or a ``.tpl`` file by path."""
    path = Path(name_or_path)
    if path.suffix == ".tpl" and path.exists():
        return parse_template(path.read_text(), name=path.stem)
    fixture = resources.files("pultr") / "templates" / f"{name_or_path}.tpl"
    if fixture.is_file():
        return parse_template(fixture.read_text(), name=str(name_or_path))
    if path.exists():
        return parse_template(path.read_text(), name=path.stem)
    raise FileNotFoundError(f"no template file or fixture named {name_or_path!r}")
