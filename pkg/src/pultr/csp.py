"""Finite-domain constraint search maintaining generalized arc consistency.

Small and general: variables are integers ``0..n-1`` with explicit value
lists, constraints are ``(scope, predicate)`` pairs.  Constraints whose
variables have at most ``TABLE_LIMIT`` joint assignments are compiled into
tables of allowed tuples and kept generalized arc consistent after every
assignment; larger ones are only checked once at most one of their variables
is left open.
"""

from __future__ import annotations

from itertools import product
from math import prod
from typing import Callable, Sequence

TABLE_LIMIT = 1 << 12


class Constraint:
    __slots__ = ("scope", "pred", "table", "vars", "pos")

    def __init__(self, scope: Sequence[int], pred: Callable[..., bool], domains=None):
        self.scope = tuple(scope)
        self.pred = pred
        self.vars = tuple(sorted(set(self.scope)))
        self.pos = {v: i for i, v in enumerate(self.vars)}
        self.table = None
        if domains is not None and prod(len(domains[v]) for v in self.vars) <= TABLE_LIMIT:
            allowed = []
            for combo in product(*(domains[v] for v in self.vars)):
                if pred(*(combo[self.pos[v]] for v in self.scope)):
                    allowed.append(combo)
            # rows are indexed by self.vars, not by the (possibly repeating) scope
            self.table = allowed

    def holds(self, values: dict) -> bool:
        return bool(self.pred(*(values[v] for v in self.scope)))


def solve(domains: Sequence[Sequence[int]], constraints, first: bool = True):
    """Search for assignments satisfying every constraint.

    ``constraints`` is an iterable of ``(scope, predicate)``.  Returns the
    first solution as a list (or None) when ``first``; otherwise the list of
    all solutions.  Variables are picked by fewest remaining values, ties to
    the lowest index; values are tried in the given order.
    """
    n = len(domains)
    order = [{x: i for i, x in enumerate(d)} for d in domains]
    doms: list[set] = [set(d) for d in domains]
    cons = [Constraint(scope, pred, domains) for scope, pred in constraints]
    by_var: list[list[int]] = [[] for _ in range(n)]
    for k, c in enumerate(cons):
        for v in c.vars:
            by_var[v].append(k)
    assign: dict[int, object] = {}
    solutions = []

    def revise(c: Constraint, trail: list) -> list[int] | None:
        """Prune unsupported values; returns the changed variables or None on a wipe-out."""
        changed = []
        if c.table is not None:
            live = [row for row in c.table if all(row[i] in doms[v] for i, v in enumerate(c.vars))]
            if not live:
                return None
            for i, v in enumerate(c.vars):
                support = {row[i] for row in live}
                if support != doms[v]:
                    new = doms[v] & support
                    if new != doms[v]:
                        trail.append((v, doms[v]))
                        doms[v] = new
                        changed.append(v)
                        if not new:
                            return None
            return changed
        free = [v for v in c.vars if v not in assign]
        if not free:
            return changed if c.holds(assign) else None
        if len(free) == 1:
            f = free[0]
            vals = dict(assign)
            new = set()
            for x in doms[f]:
                vals[f] = x
                if c.holds(vals):
                    new.add(x)
            if new != doms[f]:
                trail.append((f, doms[f]))
                doms[f] = new
                changed.append(f)
                if not new:
                    return None
        return changed

    def propagate(queue: list[int], trail: list) -> bool:
        pending = set(queue)
        while queue:
            k = queue.pop()
            pending.discard(k)
            changed = revise(cons[k], trail)
            if changed is None:
                return False
            for v in changed:
                for k2 in by_var[v]:
                    if k2 != k and k2 not in pending:
                        pending.add(k2)
                        queue.append(k2)
        return True

    def pick() -> int:
        best, best_size = -1, None
        for v in range(n):
            if v not in assign:
                size = len(doms[v])
                if best_size is None or size < best_size:
                    best, best_size = v, size
                    if size <= 1:
                        break
        return best

    def restore(trail: list) -> None:
        for v, old in reversed(trail):
            doms[v] = old

    def search() -> bool:
        if len(assign) == n:
            solutions.append([assign[v] for v in range(n)])
            return first
        var = pick()
        for x in sorted(doms[var], key=order[var].__getitem__):
            trail: list = [(var, doms[var])]
            doms[var] = {x}
            assign[var] = x
            if propagate(list(by_var[var]), trail) and search():
                return True
            del assign[var]
            restore(trail)
        return False

    root_trail: list = []
    if any(not d for d in doms) or not propagate(list(range(len(cons))), root_trail):
        return None if first else []
    search()
    if first:
        return solutions[0] if solutions else None
    return solutions
