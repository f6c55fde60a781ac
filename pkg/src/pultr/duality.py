"""Bounded checks of homomorphism dualities and of the tree condition on templates.

Nothing here constructs a dual.  Candidates are supplied by the caller and
checked against every labeled digraph up to a vertex bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import Digraph, emit_digraph, is_oriented_tree
from .errors import ResourceLimitError
from .functors import gamma_apply, lambda_apply
from .hom import CORE_VERTEX_CAP, equiv_to_tree, hom_exists
from .templates import PultrTemplate, validate_template
from .universe import UNIVERSE_CAP, digraph_universe, oriented_trees

__all__ = [
    "DualityCandidate",
    "DualityVerdict",
    "verify_duality",
    "TransferVerdict",
    "transfer_obstructions",
    "NecessaryReport",
    "check_necessary_conditions",
    "DUALITY_N_CAP",
]

DUALITY_N_CAP = 4


@dataclass(frozen=True)
class DualityCandidate:
    """``G -> target`` should hold exactly when no obstruction maps to G."""

    obstructions: tuple
    target: object

    def __post_init__(self):
        object.__setattr__(self, "obstructions", tuple(self.obstructions))


@dataclass
class DualityVerdict:
    holds: bool
    checked: int
    n_max: int
    witness: Digraph | None = None
    direction: str = ""
    obstruction: Digraph | None = None

    def lines(self) -> list[str]:
        out = [f"digraphs checked: {self.checked} (all labeled, <= {self.n_max} vertices)"]
        if self.holds:
            out.append("PASS")
            return out
        out.append(f"FAIL: {self.direction}")
        out.append("witness G:")
        out.append(emit_digraph(self.witness))
        if self.obstruction is not None:
            out.append("obstruction mapping into G:")
            out.append(emit_digraph(self.obstruction))
        return out


def _universe(n_max: int, order: str, cap: int) -> list[Digraph]:
    if n_max > cap:
        raise ResourceLimitError(f"n_max={n_max} exceeds the cap {cap}", estimate=n_max, limit=cap)
    if order not in ("forward", "reverse"):
        raise ValueError("order must be 'forward' or 'reverse'")
    gs = list(digraph_universe(n_max))
    return gs[::-1] if order == "reverse" else gs


def verify_duality(c: DualityCandidate, n_max: int = 3, order: str = "forward",
                   cap: int = DUALITY_N_CAP) -> DualityVerdict:
    """Check ``G -> H`` iff no ``F`` maps to ``G``, for every G on <= ``n_max`` vertices.

    ``order`` only changes which counterexample is reported first, never the verdict.
    """
    checked = 0
    for g in _universe(n_max, order, min(cap, UNIVERSE_CAP)):
        checked += 1
        maps_to_target = hom_exists(g, c.target) is not None
        blocking = next((f for f in c.obstructions if hom_exists(f, g) is not None), None)
        if maps_to_target and blocking is not None:
            return DualityVerdict(False, checked, n_max, g, "G maps to the target but an obstruction maps to G", blocking)
        if not maps_to_target and blocking is None:
            return DualityVerdict(False, checked, n_max, g, "no obstruction maps to G yet G does not map to the target")
    return DualityVerdict(True, checked, n_max)


@dataclass
class TransferVerdict:
    holds: bool
    stage: str
    checked: int
    witness: Digraph | None = None
    detail: str = ""
    duality: DualityVerdict | None = None
    lifted: tuple = ()

    def lines(self) -> list[str]:
        out = [f"stage reached: {self.stage}", f"digraphs checked: {self.checked}"]
        if self.holds:
            out.append("PASS")
            return out
        out.append(f"FAIL: {self.detail}")
        if self.witness is not None:
            out.append("witness G:")
            out.append(emit_digraph(self.witness))
        return out


def transfer_obstructions(t: PultrTemplate, c: DualityCandidate, k, n_max: int = 3,
                          cap: int = DUALITY_N_CAP) -> TransferVerdict:
    """Check that ``k`` behaves as a right adjoint at ``c.target`` and that the
    obstructions, pushed through the left functor, form a duality with ``k``.

    Stages: ``premise`` (c is a duality), ``adjoint`` (``Gamma(G) -> H`` iff
    ``G -> k``), ``duality`` (``{Lambda(F)}`` against ``k``).
    """
    validate_template(t)
    premise = verify_duality(c, n_max, cap=cap)
    if not premise.holds:
        return TransferVerdict(False, "premise", premise.checked, premise.witness,
                               "the supplied pair is not a duality: " + premise.direction, premise)
    checked = 0
    for g in _universe(n_max, "forward", min(cap, UNIVERSE_CAP)):
        checked += 1
        lhs = hom_exists(gamma_apply(t, g), c.target) is not None
        rhs = hom_exists(g, k) is not None
        if lhs != rhs:
            detail = ("Gamma(G) maps to the target but G does not map to K" if lhs
                      else "G maps to K but Gamma(G) does not map to the target")
            return TransferVerdict(False, "adjoint", checked, g, detail)
    lifted = tuple(lambda_apply(t, f) for f in c.obstructions)
    verdict = verify_duality(DualityCandidate(lifted, k), n_max, cap=cap)
    if not verdict.holds:
        return TransferVerdict(False, "duality", checked + verdict.checked, verdict.witness,
                               verdict.direction, verdict, lifted)
    return TransferVerdict(True, "duality", checked + verdict.checked, duality=verdict, lifted=lifted)


@dataclass
class NecessaryReport:
    p_equiv_tree: bool
    q_equiv_tree: bool
    q_is_tree: bool
    trees_checked: int
    tree_budget: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.p_equiv_tree and self.q_equiv_tree and not self.failures

    @property
    def witness(self) -> Digraph | None:
        return self.failures[0] if self.failures else None

    def lines(self) -> list[str]:
        pf = {True: "PASS", False: "FAIL"}
        out = [
            f"{pf[self.p_equiv_tree]} P homomorphically equivalent to a tree",
            f"{pf[self.q_equiv_tree]} Q homomorphically equivalent to a tree",
            f"note: Q itself {'is' if self.q_is_tree else 'is not'} an oriented tree",
            f"{pf[not self.failures]} left functor keeps trees tree-like "
            f"({self.trees_checked} oriented trees up to isomorphism, <= {self.tree_budget} vertices, "
            f"{len(self.failures)} failing)",
        ]
        for tree in self.failures:
            out.append(f"witness tree ({tree.n} vertices):")
            out.append(emit_digraph(tree))
        out.append(pf[self.passed])
        return out


def check_necessary_conditions(t: PultrTemplate, tree_budget: int = 6,
                               core_cap: int = CORE_VERTEX_CAP) -> NecessaryReport:
    """Necessary conditions for the central functor to have a right adjoint.

    P and Q must each be homomorphically equivalent to an oriented tree, and
    so must the left functor applied to every oriented tree.  Each tree up to
    ``tree_budget`` vertices (one per isomorphism class) is tried; every
    failing tree is a witness that no right adjoint exists.
    """
    if tree_budget > 7:
        raise ResourceLimitError(f"tree budget {tree_budget} exceeds 7", estimate=tree_budget, limit=7)
    validate_template(t)
    trees = oriented_trees(tree_budget)
    failures = [tree for tree in trees if not equiv_to_tree(lambda_apply(t, tree), max_vertices=core_cap)]
    return NecessaryReport(
        p_equiv_tree=equiv_to_tree(t.P, max_vertices=core_cap),
        q_equiv_tree=equiv_to_tree(t.Q, max_vertices=core_cap),
        q_is_tree=is_oriented_tree(t.Q),
        trees_checked=len(trees),
        tree_budget=tree_budget,
        failures=failures,
    )
