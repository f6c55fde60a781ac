"""Exhaustive adjunction audits over every small labeled digraph.

Each audit sweeps all labeled digraphs G with at most ``g_max`` vertices and
H with at most ``h_max`` vertices.  Homomorphism existence is invariant under
relabeling, so each side is decided once per isomorphism class pair and the
verdict is shared by every labeled pair in it; ``memoize=False`` decides every
labeled pair separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .digraph import Digraph, emit_digraph
from .factored import MATERIALIZE_CAP, FactoredDigraph
from .functors import gamma_apply, lambda_apply
from .hom import hom_equivalent, hom_exists
from .templates import PultrTemplate
from .universe import canonical_form, digraph_universe

__all__ = [
    "AuditReport",
    "audit_left_adjunction",
    "audit_right_adjunction",
    "audit_hom_equivalence",
    "prepared",
    "naive_hom_exists",
]


@dataclass
class AuditReport:
    title: str
    g_max: int
    h_max: int
    g_count: int = 0
    h_count: int = 0
    pairs: int = 0
    g_classes: int = 0
    h_classes: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def lines(self, witnesses: int = 3) -> list[str]:
        out = [
            f"{self.title}",
            f"G: {self.g_count} labeled digraphs on <= {self.g_max} vertices ({self.g_classes} up to isomorphism)",
            f"H: {self.h_count} labeled digraphs on <= {self.h_max} vertices ({self.h_classes} up to isomorphism)",
            f"pairs checked: {self.pairs} (including the {2 ** (self.g_max ** 2)} x {2 ** (self.h_max ** 2)} "
            f"pairs with exactly {self.g_max} and {self.h_max} vertices)",
            f"violations: {len(self.violations)}",
        ]
        for g, h, lhs, rhs in self.violations[:witnesses]:
            out.append(f"counterexample (left side {lhs}, right side {rhs})")
            out.append("G:")
            out.append(emit_digraph(g))
            out.append("H:")
            out.append(emit_digraph(h))
        out.append("PASS" if self.ok else "FAIL")
        return out


def naive_hom_exists(g: Digraph, h: Digraph) -> bool:
    """Try all ``|V(h)|**|V(g)|`` vertex maps."""
    return any(all((m[u], m[v]) in h.arcs for u, v in g.arcs) for m in product(range(h.n), repeat=g.n))


def prepared(f):
    """Materialize a factored digraph when it is small; plain digraphs pass through."""
    if isinstance(f, FactoredDigraph) and f.candidate_count() <= MATERIALIZE_CAP:
        return f.to_digraph()[0]
    return f


def _sweep(title: str, g_max: int, h_max: int, left: Callable, right: Callable,
           memoize: bool) -> AuditReport:
    """``left(G, H)`` and ``right(G, H)`` must agree on every pair."""
    gs = list(digraph_universe(g_max))
    hs = list(digraph_universe(h_max))
    gkey = [canonical_form(g) for g in gs]
    hkey = [canonical_form(h) for h in hs]
    rep_g: dict = {}
    rep_h: dict = {}
    for g, k in zip(gs, gkey):
        rep_g.setdefault(k, g)
    for h, k in zip(hs, hkey):
        rep_h.setdefault(k, h)
    report = AuditReport(title, g_max, h_max, len(gs), len(hs), 0, len(rep_g), len(rep_h))
    cache: dict = {}
    for g, gk in zip(gs, gkey):
        for h, hk in zip(hs, hkey):
            report.pairs += 1
            if memoize:
                key = (gk, hk)
                if key not in cache:
                    cache[key] = (left(rep_g[gk], rep_h[hk]), right(rep_g[gk], rep_h[hk]))
                lhs, rhs = cache[key]
            else:
                lhs, rhs = left(g, h), right(g, h)
            if lhs != rhs:
                report.violations.append((g, h, lhs, rhs))
    return report


def _memo(fn):
    store: dict = {}

    def get(x):
        k = (x.n, x.arcs)
        if k not in store:
            store[k] = fn(x)
        return store[k]

    return get


def audit_left_adjunction(t: PultrTemplate, g_max: int = 3, h_max: int = 2,
                          memoize: bool = True) -> AuditReport:
    """``Lambda(G) -> H`` iff ``G -> Gamma(H)``."""
    lam = _memo(lambda g: lambda_apply(t, g))
    gam = _memo(lambda h: gamma_apply(t, h))
    return _sweep(
        f"left adjunction for template {t.name or '?'}", g_max, h_max,
        lambda g, h: hom_exists(lam(g), h) is not None,
        lambda g, h: hom_exists(g, gam(h)) is not None,
        memoize,
    )


def audit_right_adjunction(t: PultrTemplate, omega: Callable[[Digraph], object], g_max: int = 3,
                           h_max: int = 2, memoize: bool = True, label: str = "") -> AuditReport:
    """``Gamma(G) -> H`` iff ``G -> Omega(H)``; ``omega`` maps H to a digraph or factored digraph."""
    gam = _memo(lambda g: gamma_apply(t, g))
    om = _memo(lambda h: prepared(omega(h)))
    return _sweep(
        f"right adjunction for template {t.name or '?'} with {label or 'omega'}", g_max, h_max,
        lambda g, h: hom_exists(gam(g), h) is not None,
        lambda g, h: hom_exists(g, om(h)) is not None,
        memoize,
    )


def audit_hom_equivalence(first: Callable, second: Callable, h_max: int = 2) -> list[Digraph]:
    """The digraphs H (<= ``h_max`` vertices) where ``first(H)`` and ``second(H)`` are not equivalent.

    Both sides must be plain digraphs or small enough to materialize.
    """
    bad = []
    cache: dict = {}
    for h in digraph_universe(h_max):
        k = canonical_form(h)
        if k not in cache:
            cache[k] = hom_equivalent(prepared(first(h)), prepared(second(h)))
        if not cache[k]:
            bad.append(h)
    return bad
