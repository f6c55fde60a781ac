"""Acceptance criteria 1-9, one function each.

Every ``criterion_N`` returns ``(ok, detail)``; the pytest wrappers assert
on it and record a ``criterion N: PASS|FAIL`` line, which conftest prints
in the terminal summary.  Running this file directly prints the same lines.

Tolerances: every check is exact (zero violations, exact counts, exact
booleans).  Runtimes are recorded next to each line and asserted against
the budgets below.
"""

from __future__ import annotations

import random
import sys
import time
from itertools import permutations, product
from pathlib import Path

import pytest

from pultr import (
    Digraph,
    compose_templates,
    directed_path,
    equiv_to_tree,
    gamma_apply,
    hom_equivalent,
    hom_exists,
    lambda_apply,
    load_template,
)
from pultr.adjoints import EXAMPLE_TREE_COORDS, delta_r, omega_example_tree, omega_for, omega_path, omega_path_triple, omega_rpath, omega_tree
from pultr.audit import audit_hom_equivalence, audit_left_adjunction, audit_right_adjunction, prepared
from pultr.certificates import certify, example_tree_maps
from pultr.duality import DualityCandidate, check_necessary_conditions, transfer_obstructions, verify_duality
from pultr.templates import ACCEPTANCE_FIXTURES
from pultr.universe import digraph_universe, find_isomorphism

sys.path.insert(0, str(Path(__file__).parent))
from conftest import P0, P1, P2, arrow_all, naive_hom, subsets  # noqa: E402

RESULTS: dict[int, str] = {}

# seconds, from the acceptance budgets
BUDGET = {1: 120, 2: 300, 3: 10, 4: 30, 5: 180, 6: 120, 7: 120, 8: 60, 9: 10}

# the tree printed for the reversed composition, with its two arcs
PRINTED_T_ARCS = {(0, 1), (1, 2), (1, 3), (3, 4)}
PRINTED_EPS = ((1, 2), (3, 4))

# 0 -> 1 -> 2 <- 3 -> 4 -> 5
ZIGZAG_TREE = Digraph(6, frozenset({(0, 1), (1, 2), (3, 2), (3, 4), (4, 5)}))

RIGHT_ADJOINT_PAIRS = [
    ("arc", "delta-r"),
    ("arc", "omega-tree"),
    ("path", "omega-path"),
    ("path", "omega-path-triple"),
    ("path", "omega-rpath"),
    ("path", "omega-tree"),
    ("rpath", "omega-rpath"),
    ("rpath", "omega-tree"),
    ("zigzag", "omega-rpath"),
    ("zigzag", "omega-tree"),
    ("comp_v", "omega-tree"),
    ("glued", "omega-glued-paths"),
    ("tree6", "omega-example-tree"),
    ("tree6", "omega-tree"),
]


def criterion_1():
    bad = []
    pairs = 0
    for name in ACCEPTANCE_FIXTURES:
        r = audit_left_adjunction(load_template(name), 3, 2)
        pairs += r.pairs
        if not r.ok:
            bad.append(f"{name} ({len(r.violations)} violations)")
    return not bad, f"{len(ACCEPTANCE_FIXTURES)} templates, {pairs} pairs, failing: {bad or 'none'}"


def criterion_2():
    bad = []
    for name, omega in RIGHT_ADJOINT_PAIRS:
        t = load_template(name)
        r = audit_right_adjunction(t, lambda h, t=t, o=omega: omega_for(o, t, h), 3, 2, label=omega)
        if not r.ok:
            bad.append(f"{name}/{omega} ({len(r.violations)} violations)")
    return not bad, f"{len(RIGHT_ADJOINT_PAIRS)} (template, adjoint) pairs over 531 x 19 digraphs, failing: {bad or 'none'}"


def criterion_3():
    t = load_template("arc")
    bad = [k for k in range(1, 7) if find_isomorphism(gamma_apply(t, directed_path(k + 1)), directed_path(k)) is None]
    return not bad, f"k = 1..6, failing k: {bad or 'none'}"


def criterion_4():
    t = load_template("c4")
    image_is_treelike = equiv_to_tree(lambda_apply(t, ZIGZAG_TREE))
    report = check_necessary_conditions(t)
    witness_ok = any(find_isomorphism(w, ZIGZAG_TREE) is not None for w in report.failures)
    ok = not image_is_treelike and not report.passed and witness_ok
    return ok, (f"equiv_to_tree(Lambda(T)) = {image_is_treelike}, necessary conditions "
                f"{'PASS' if report.passed else 'FAIL'}, witness is T: {witness_ok}")


def criterion_5():
    path, tree6, arc = load_template("path"), load_template("tree6"), load_template("arc")
    bad = []
    bad += [("path/triple", h) for h in audit_hom_equivalence(omega_path, omega_path_triple)]
    bad += [("path/rpath", h) for h in audit_hom_equivalence(omega_path, lambda h: omega_rpath(path, h))]
    bad += [("arc/delta_r", h) for h in audit_hom_equivalence(lambda h: omega_tree(arc, h), delta_r)]
    # too large to materialize at two vertices: explicit maps both ways, checked symbolically
    checked = 0
    for h in digraph_universe(2):
        *_, to_example, to_general = example_tree_maps(tree6, h)
        checked += 1
        if certify(to_example, to_general) != [None, None]:
            bad.append(("tree6/example", h))
    return not bad, f"{checked} digraphs H on <= 2 vertices x 4 equivalences, failures: {len(bad)}"


def _printed_relabeling(v):
    """A relabeling of V's Q onto the printed tree that also carries both arcs across."""
    for perm in permutations(range(5)):
        if {(perm[a], perm[b]) for a, b in v.Q.arcs} != PRINTED_T_ARCS:
            continue
        if tuple(perm[q] for q in v.eps1) == PRINTED_EPS[0] and tuple(perm[q] for q in v.eps2) == PRINTED_EPS[1]:
            return perm
    return None


def criterion_6():
    arc, path = load_template("arc"), load_template("path")
    u = compose_templates(arc, path)
    v = compose_templates(path, arc)
    bad = 0
    for g in digraph_universe(3):
        if not hom_equivalent(gamma_apply(u, g), gamma_apply(arc, gamma_apply(path, g))):
            bad += 1
        if not hom_equivalent(gamma_apply(v, g), gamma_apply(path, gamma_apply(arc, g))):
            bad += 1
    perm = _printed_relabeling(v)
    fixture = load_template("comp_v")
    fixture_match = (fixture.Q.arcs == PRINTED_T_ARCS and fixture.eps1 == PRINTED_EPS[0]
                     and fixture.eps2 == PRINTED_EPS[1])
    ok = bad == 0 and perm is not None and v.P == P1 and fixture_match
    return ok, (f"531 digraphs x 2 composites, failures: {bad}; V's Q is the printed tree "
                f"under relabeling {perm} (arcs and both eps arcs preserved)")


def criterion_7():
    arc = load_template("arc")
    checks = {
        "({P1}, P0) n<=3": verify_duality(DualityCandidate([P1], P0), 3).holds,
        "({P2}, P1) n<=4": verify_duality(DualityCandidate([P2], P1), 4).holds,
        "transfer K=delta_R(P0)": transfer_obstructions(arc, DualityCandidate([P1], P0), prepared(delta_r(P0)), 3).holds,
        "transfer K=delta_R(P1)": transfer_obstructions(arc, DualityCandidate([P2], P1), prepared(delta_r(P1)), 3).holds,
    }
    neg = transfer_obstructions(arc, DualityCandidate([P1], P0), P0, 3)
    checks["negative control fails with a witness"] = not neg.holds and neg.witness is not None
    bad = [k for k, v in checks.items() if not v]
    return not bad, f"{len(checks)} verdicts, unexpected: {bad or 'none'}"


def _random_digraph(rng: random.Random, max_n: int) -> Digraph:
    n = rng.randint(0, max_n)
    return Digraph(n, frozenset((a, b) for a in range(n) for b in range(n) if rng.random() < 0.4))


def criterion_8():
    rng = random.Random(20240501)
    bad = 0
    for _ in range(1000):
        g, h = _random_digraph(rng, 4), _random_digraph(rng, 4)
        found = hom_exists(g, h)
        if (found.map if found else None) != naive_hom(g, h):
            bad += 1
    hs = list(digraph_universe(2))
    for g in digraph_universe(3):
        for h in hs:
            found = hom_exists(g, h)
            if (found.map if found else None) != naive_hom(g, h):
                bad += 1
    return bad == 0, f"1000 random pairs (seed 20240501) + 531 x 19 universe, disagreements: {bad}"


def brute_delta_r_counts(h: Digraph) -> tuple[int, int]:
    verts = [(a, b) for a in subsets(h.n) for b in subsets(h.n) if arrow_all(h, a, b)]
    arcs = sum(1 for _, rp in verts for sm, _ in verts if rp & sm)
    return len(verts), arcs


def brute_example_tree_count(h: Digraph) -> int:
    c = {name: i for i, name in enumerate(EXAMPLE_TREE_COORDS)}
    return sum(1 for s in product(subsets(h.n), repeat=8)
               if not s[c["S+"]] or arrow_all(h, s[c["S---"]], s[c["S--*+++"]]))


EXPECTED_EXAMPLE_TREE = 192  # the stated figure; brute force gives 224, see test below


def criterion_9():
    g, _ = delta_r(P0).to_digraph()
    dr = (g.n, len(g.arcs))
    brute_dr = brute_delta_r_counts(P0)
    ex = omega_example_tree(P0).vertex_count()
    brute_ex = brute_example_tree_count(P0)
    ok = dr == brute_dr == (3, 1) and ex == brute_ex == EXPECTED_EXAMPLE_TREE
    return ok, (f"delta_R(P0): {dr[0]} vertices, {dr[1]} arc (brute force {brute_dr}); "
                f"omega_example_tree(P0): {ex} vertices, brute force {brute_ex}, stated {EXPECTED_EXAMPLE_TREE}")


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 10)}


def run(i: int):
    start = time.perf_counter()
    ok, detail = CRITERIA[i]()
    elapsed = time.perf_counter() - start
    within = elapsed <= BUDGET[i]
    RESULTS[i] = f"criterion {i}: {'PASS' if ok and within else 'FAIL'} ({elapsed:.1f}s, budget {BUDGET[i]}s) {detail}"
    print(RESULTS[i])
    return ok, within, detail


@pytest.mark.parametrize("i", [1, 2, 3, 4, 5, 6, 7, 8])
def test_criterion(i):
    ok, within, detail = run(i)
    assert ok, detail
    assert within, f"over budget: {detail}"


def test_criterion_9_counts_match_brute_force():
    # the parts of criterion 9 that hold: both counts agree with the brute-force filter
    assert brute_delta_r_counts(P0) == (3, 1)
    g, _ = delta_r(P0).to_digraph()
    assert (g.n, len(g.arcs)) == (3, 1)
    assert brute_example_tree_count(P0) == 224
    assert omega_example_tree(P0).vertex_count() == 224


@pytest.mark.xfail(strict=True, reason="stated 192 = 256 - 64 counts 2**6 blocked tuples; "
                                       "three coordinates are fixed so 2**5 are blocked, giving 224")
def test_criterion_9():
    ok, within, detail = run(9)
    assert ok, detail


if __name__ == "__main__":
    codes = [run(i)[:2] for i in CRITERIA]
    sys.exit(0 if all(a and b for a, b in codes) else 1)
