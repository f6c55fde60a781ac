from __future__ import annotations

import pytest

from pultr import parse_digraph, parse_template
from pultr.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "p0": "n 1\n",
        "p1": "n 2\na 0 1\n",
        "p2": "n 3\na 0 1\na 1 2\n",
        "loop": "n 1\na 0 0\n",
        "bad": "n 2\na 0 7\n",
        "core": "n 3\na 0 1\na 1 2\na 2 2\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_apply_gamma(capsys, files):
    code, out, _ = run(capsys, "apply", "--functor", "gamma", "--template", "arc", "--graph", files["p2"])
    assert code == 0
    assert parse_digraph(out).arcs == {(0, 1)}


def test_apply_lambda_dot(capsys, files):
    code, out, _ = run(capsys, "apply", "--functor", "lambda", "--template", "arc",
                       "--graph", files["p0"], "--format", "dot")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 1


def test_apply_right_adjoint(capsys, files):
    code, out, _ = run(capsys, "apply", "--functor", "delta-r", "--template", "arc", "--graph", files["p0"])
    g = parse_digraph(out)
    assert code == 0 and (g.n, len(g.arcs)) == (3, 1)


def test_apply_to_file(capsys, files, tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = run(capsys, "apply", "--functor", "gamma", "--template", "arc",
                       "--graph", files["p2"], "-o", str(target))
    assert code == 0 and out == "" and parse_digraph(target.read_text()).n == 2


def test_exit_codes(capsys, files):
    assert run(capsys, "apply", "--functor", "gamma", "--template", "arc", "--graph", files["bad"])[0] == 3
    assert run(capsys, "apply", "--functor", "gamma", "--template", "arc", "--graph", "/no/file")[0] == 2
    assert run(capsys, "apply", "--functor", "gamma", "--template", "nope", "--graph", files["p0"])[0] == 2
    assert run(capsys, "apply", "--functor", "omega-tree", "--template", "c4", "--graph", files["p0"])[0] == 5
    assert run(capsys, "apply", "--functor", "omega-tree", "--template", "tree6",
               "--graph", files["p1"])[0] == 4
    assert run(capsys, "apply", "--functor", "omega-path", "--template", "path",
               "--graph", files["p0"], "--middle", "1")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["apply", "--functor", "nope"])
    assert info.value.code == 2


def test_audit_adjunction(capsys):
    code, out, _ = run(capsys, "audit", "adjunction", "--template", "arc", "--g-max", "2", "--h-max", "2")
    assert code == 0 and out.rstrip().endswith("PASS") and "violations: 0" in out
    code, out, _ = run(capsys, "audit", "adjunction", "--template", "path", "--omega", "omega-path",
                       "--g-max", "2", "--h-max", "1", "--no-memo")
    assert code == 0 and "PASS" in out


def test_audit_necessary(capsys):
    code, out, _ = run(capsys, "audit", "necessary", "--template", "c4", "--tree-budget", "6")
    assert code == 1 and "witness tree (6 vertices)" in out and out.rstrip().endswith("FAIL")


def test_audit_duality(capsys, files):
    code, out, _ = run(capsys, "audit", "duality", "--obstructions", files["p1"], "--target", files["p0"])
    assert code == 0
    code, out, _ = run(capsys, "audit", "duality", "--obstructions", files["p2"], "--target", files["p0"],
                       "--n-max", "2")
    assert code == 1 and "witness G:" in out
    code, out, _ = run(capsys, "audit", "duality", "--obstructions", files["p1"], "--target", files["p0"],
                       "--template", "arc", "--k", files["p0"])
    assert code == 1 and "stage reached: adjoint" in out


def test_audit_missing_flags(capsys):
    with pytest.raises(SystemExit) as info:
        main(["audit", "duality"])
    assert info.value.code == 2


def test_audit_oracle(capsys):
    code, out, _ = run(capsys, "audit", "oracle", "--samples", "50", "--n-max", "3")
    assert code == 0 and "disagreements: 0" in out


def test_core(capsys, files):
    code, out, _ = run(capsys, "core", "--graph", files["core"])
    assert code == 0 and parse_digraph(out).arcs == {(0, 0)}


def test_hom(capsys, files):
    code, out, _ = run(capsys, "hom", "--source", files["p1"], "--target", files["p2"])
    assert code == 0 and out.strip() == "0 1"
    code, out, _ = run(capsys, "hom", "--source", files["p1"], "--target", files["p2"], "--pin", "0=1")
    assert out.strip() == "1 2"
    code, out, _ = run(capsys, "hom", "--source", files["p2"], "--target", files["p1"])
    assert code == 1 and out.strip() == "none"
    code, out, _ = run(capsys, "hom", "--source", files["p1"], "--target", files["p2"], "--all")
    assert out.splitlines() == ["homomorphisms: 2", "0 1", "1 2"]
    assert run(capsys, "hom", "--source", files["p1"], "--target", files["p2"], "--pin", "x")[0] == 2
    assert run(capsys, "hom", "--source", files["p1"], "--target", files["p2"], "--pin", "9=0")[0] == 2


def test_compose(capsys):
    code, out, _ = run(capsys, "compose", "--outer", "arc", "--inner", "path")
    t = parse_template(out)
    assert code == 0 and t.Q.n == 7 and t.P.n == 4


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "--template", "tree6")
    assert code == 0
    assert "path between images: 1 2 3 5 7 8 9" in out and "middle vertex: 5" in out
    code, out, _ = run(capsys, "decompose", "--template", "tree6", "--middle", "3")
    assert "middle vertex: 3" in out
    assert run(capsys, "decompose", "--template", "glued")[0] == 5


def test_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("n 3\na 0 1\na 1 2\n"))
    code, out, _ = run(capsys, "apply", "--functor", "gamma", "--template", "arc", "--graph", "-")
    assert code == 0 and parse_digraph(out).n == 2
