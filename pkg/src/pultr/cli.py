"""Command line front end.

Exit codes::

    0  success (audits: no violations)
    1  an audit found a violation or a check failed
    2  usage error (bad flags, missing file)
    3  input could not be parsed
    4  a size guard refused the request
    5  a precondition failed (invalid template, unsupported construction)
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .adjoints import OMEGA_CONSTRUCTIONS, omega_for
from .audit import (
    audit_left_adjunction,
    audit_right_adjunction,
    naive_hom_exists,
)
from .decomposition import build_subtree_decomposition
from .digraph import Digraph, emit_digraph, parse_digraph
from .duality import DualityCandidate, check_necessary_conditions, transfer_obstructions, verify_duality
from .errors import (
    ConstructionError,
    DigraphParseError,
    InvalidTemplateError,
    PreconditionError,
    ResourceLimitError,
)
from .factored import MATERIALIZE_CAP
from .functors import compose_templates, gamma_apply, lambda_apply
from .hom import core, enumerate_homs, hom_exists
from .templates import emit_template, fixture_names, load_template, validate_template

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_GUARD = 4
EXIT_PRECONDITION = 5

FUNCTORS = ("lambda", "gamma") + tuple(OMEGA_CONSTRUCTIONS)


class _Usage(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if not p.exists():
        raise _Usage(f"no such file: {path}")
    return p.read_text()


def _graph(path: str) -> Digraph:
    return parse_digraph(_read_text(path))


def _template(name_or_path: str):
    try:
        return load_template(name_or_path)
    except FileNotFoundError:
        raise _Usage(f"no template file or fixture named {name_or_path!r} "
                     f"(fixtures: {', '.join(fixture_names())})") from None


def _write(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _print_lines(lines) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# subcommands

def cmd_apply(args) -> int:
    t = _template(args.template)
    g = _graph(args.graph)
    if args.functor == "lambda":
        validate_template(t)
        out = lambda_apply(t, g)
    elif args.functor == "gamma":
        validate_template(t)
        out = gamma_apply(t, g)
    else:
        kw = {}
        if args.middle is not None:
            if args.functor != "omega-tree":
                raise _Usage("--middle only applies to omega-tree")
            kw["middle"] = args.middle
        f = omega_for(args.functor, t, g, **kw)
        out, _ = f.to_digraph(args.max_candidates)
    _write(args, emit_digraph(out, args.format))
    return EXIT_OK


def cmd_audit(args) -> int:
    if args.suite == "adjunction":
        return _audit_adjunction(args)
    if args.suite == "necessary":
        t = _template(args.template)
        report = check_necessary_conditions(t, args.tree_budget)
        _print_lines(report.lines())
        return EXIT_OK if report.passed else EXIT_FAIL
    if args.suite == "duality":
        obstructions = [_graph(p) for p in args.obstructions]
        target = _graph(args.target)
        c = DualityCandidate(obstructions, target)
        if args.template:
            if not args.k:
                raise _Usage("--template needs --k (the candidate right adjoint value)")
            verdict = transfer_obstructions(_template(args.template), c, _graph(args.k), args.n_max)
        else:
            verdict = verify_duality(c, args.n_max, order=args.order)
        _print_lines(verdict.lines())
        return EXIT_OK if verdict.holds else EXIT_FAIL
    if args.suite == "oracle":
        return _audit_oracle(args)
    raise _Usage(f"unknown audit suite {args.suite!r}")


def _audit_adjunction(args) -> int:
    t = _template(args.template)
    validate_template(t)
    memo = not args.no_memo
    if args.omega:
        kw = {"middle": args.middle} if args.middle is not None else {}
        if kw and args.omega != "omega-tree":
            raise _Usage("--middle only applies to omega-tree")
        # build once up front so precondition and guard errors surface before the sweep
        omega_for(args.omega, t, Digraph(0), **kw)
        report = audit_right_adjunction(t, lambda h: omega_for(args.omega, t, h, **kw),
                                        args.g_max, args.h_max, memo, label=args.omega)
    else:
        report = audit_left_adjunction(t, args.g_max, args.h_max, memo)
    _print_lines(report.lines())
    return EXIT_OK if report.ok else EXIT_FAIL


def _audit_oracle(args) -> int:
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.samples):
        gn, hn = rng.randint(0, args.n_max), rng.randint(0, args.n_max)
        g = Digraph(gn, frozenset((u, v) for u in range(gn) for v in range(gn) if rng.random() < 0.4))
        h = Digraph(hn, frozenset((u, v) for u in range(hn) for v in range(hn) if rng.random() < 0.4))
        if (hom_exists(g, h) is not None) != naive_hom_exists(g, h):
            bad += 1
            _print_lines(["disagreement", "G:", emit_digraph(g), "H:", emit_digraph(h)])
    _print_lines([f"random pairs: {args.samples} (seed {args.seed}, <= {args.n_max} vertices)",
                  f"disagreements: {bad}", "PASS" if bad == 0 else "FAIL"])
    return EXIT_OK if bad == 0 else EXIT_FAIL


def cmd_core(args) -> int:
    g = _graph(args.graph)
    _write(args, emit_digraph(core(g, max_vertices=args.max_vertices), args.format))
    return EXIT_OK


def cmd_hom(args) -> int:
    g = _graph(args.source)
    h = _graph(args.target)
    pins = {}
    for item in args.pin or []:
        try:
            u, x = (int(s) for s in item.split("="))
        except ValueError:
            raise _Usage(f"--pin expects u=x, got {item!r}") from None
        pins[u] = x
    try:
        if args.all:
            homs = enumerate_homs(g, h, pins)
            _print_lines([f"homomorphisms: {len(homs)}"] + [" ".join(map(str, m.map)) for m in homs])
            return EXIT_OK if homs else EXIT_FAIL
        found = hom_exists(g, h, pins)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    if found is None:
        _print_lines(["none"])
        return EXIT_FAIL
    _print_lines([" ".join(map(str, found.map))])
    return EXIT_OK


def cmd_compose(args) -> int:
    outer, inner = _template(args.outer), _template(args.inner)
    u = compose_templates(outer, inner, name=args.name or f"{outer.name} after {inner.name}")
    _write(args, emit_template(u))
    return EXIT_OK


def cmd_decompose(args) -> int:
    t = _template(args.template)
    report = validate_template(t)
    d = build_subtree_decomposition(t, args.middle)
    _print_lines(report.lines() + d.lines())
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pultr", description="Pultr functors and their right adjoints on small digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("apply", help="apply a functor or right adjoint to a digraph")
    p.add_argument("--functor", required=True, choices=FUNCTORS)
    p.add_argument("--template", required=True, help="fixture name or .tpl path")
    p.add_argument("--graph", required=True, help="native digraph file, or - for stdin")
    p.add_argument("--format", choices=("native", "dot"), default="native")
    p.add_argument("--middle", type=int, help="middle vertex override for omega-tree")
    p.add_argument("--max-candidates", type=_positive, default=MATERIALIZE_CAP,
                   help="refuse to materialize more candidate vertices than this")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("audit", help="exhaustive checks")
    p.add_argument("suite", choices=("adjunction", "necessary", "duality", "oracle"))
    p.add_argument("--template")
    p.add_argument("--omega", choices=tuple(OMEGA_CONSTRUCTIONS),
                   help="right adjoint to audit; without it the left adjunction is audited")
    p.add_argument("--middle", type=int)
    p.add_argument("--g-max", type=_positive, default=3)
    p.add_argument("--h-max", type=_positive, default=2)
    p.add_argument("--no-memo", action="store_true", help="decide every labeled pair separately")
    p.add_argument("--tree-budget", type=_positive, default=6)
    p.add_argument("--obstructions", nargs="+")
    p.add_argument("--target")
    p.add_argument("--k", help="candidate value of the right adjoint (with --template)")
    p.add_argument("--n-max", type=_positive, default=3)
    p.add_argument("--order", choices=("forward", "reverse"), default="forward")
    p.add_argument("--samples", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("core", help="print the core of a digraph")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=("native", "dot"), default="native")
    p.add_argument("--max-vertices", type=_positive, default=64)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("hom", help="find a homomorphism (exit 1 if none)")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--pin", action="append", metavar="U=X")
    p.add_argument("--all", action="store_true", help="list every homomorphism")
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("compose", help="template of the composite central functor")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--name")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("decompose", help="print the subtree decomposition of a tree template")
    p.add_argument("--template", required=True)
    p.add_argument("--middle", type=int)
    p.set_defaults(func=cmd_decompose)
    return parser


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "audit":
        needs = {"adjunction": ("template",), "necessary": ("template",),
                 "duality": ("obstructions", "target"), "oracle": ()}[args.suite]
        missing = [f"--{n}" for n in needs if not getattr(args, n)]
        if missing:
            parser.error(f"audit {args.suite} needs {', '.join(missing)}")
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DigraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PreconditionError, InvalidTemplateError, ConstructionError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
