import io
import json
import subprocess
import sys

import pytest

from propertyb.bounds import layered_count
from propertyb.cli import main
from propertyb.hypergraph import loads


def run(argv, capsys, monkeypatch, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse rejects before dispatch
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def build(capsys, monkeypatch, *args):
    code, out, _ = run(["build", *args], capsys, monkeypatch)
    assert code == 0
    return out


def test_table(capsys, monkeypatch):
    code, out, _ = run(["table", "--max", "17"], capsys, monkeypatch)
    rows = [l.split("\t") for l in out.splitlines()[1:]]
    assert code == 0 and len(rows) == 17
    assert [int(r[1]) for r in rows][7:13] == [1269, 2401, 7803, 25449, 64827, 297347]
    assert rows[7][2] == "M8Special"


def test_table_editions(capsys, monkeypatch):
    _, out, _ = run(["table", "--edition", "classical", "--json"], capsys, monkeypatch)
    assert json.loads(out)[7]["bound"] == 1339
    _, out, _ = run(["table", "--edition", "optimal", "--max", "20", "--json"], capsys, monkeypatch)
    assert json.loads(out)[11]["bound"] == 55223
    code, _, _ = run(["table", "--max", "20"], capsys, monkeypatch)
    assert code == 64


def test_build_aht_verify_not_colorable(capsys, monkeypatch):
    out = build(capsys, monkeypatch, "--construction", "aht", "--n", "5")
    assert len(loads(out)) == 51
    code, msg, _ = run(["verify"], capsys, monkeypatch, stdin=out)
    assert code == 1 and "not 2-colorable" in msg


def test_build_m8_verify_resource_limit(capsys, monkeypatch):
    out = build(capsys, monkeypatch, "--construction", "m8")
    h = loads(out)
    assert (h.vertex_count, len(h)) == (47, 1269)
    code, _, err = run(["verify", "-"], capsys, monkeypatch, stdin=out)
    assert code == 2 and "solve" in err


@pytest.mark.parametrize("fmt", ["json", "edgelist"])
def test_pipelines_compose(capsys, monkeypatch, fmt):
    out = build(capsys, monkeypatch, "--construction", "product", "--n", "6", "--format", fmt)
    code, msg, _ = run(["verify", "--json"], capsys, monkeypatch, stdin=out)
    assert code == 1 and json.loads(msg)["two_colorable"] is False
    code, dimacs, _ = run(["export", "--dimacs", "-"], capsys, monkeypatch, stdin=out)
    assert code == 0 and "p cnf 21 294" in dimacs
    code, msg, _ = run(["solve"], capsys, monkeypatch, stdin=dimacs)
    assert code == 1 and msg.startswith("UNSAT")


def test_verify_colorable(capsys, monkeypatch, tmp_path):
    path = tmp_path / "path.txt"
    path.write_text("2 3 2\n0 1\n0 2\n")
    code, out, _ = run(["verify", str(path), "--json"], capsys, monkeypatch)
    assert code == 0
    assert json.loads(out)["witness_red"] == [1, 2]


def test_build_variants(capsys, monkeypatch, tmp_path):
    for kind, n, edges in [("swap", 5, 76), ("layered", 5, 57), ("best", 8, 1269), ("aht", 4, 23)]:
        out = build(capsys, monkeypatch, "--construction", kind, "--n", str(n))
        assert len(loads(out)) == edges
    core = tmp_path / "tri.json"
    core.write_text(build(capsys, monkeypatch, "--construction", "best", "--n", "2"))
    out = build(capsys, monkeypatch, "--construction", "layered", "--n", "4", "--core", str(core))
    assert len(loads(out)) == layered_count(4, 3)
    out = build(capsys, monkeypatch, "--construction", "product", "--n", "9", "--factors", "3", "3")
    assert len(loads(out)) == 2401


def test_build_to_file(capsys, monkeypatch, tmp_path):
    target = tmp_path / "h.txt"
    build(capsys, monkeypatch, "--construction", "aht", "--n", "5", "--format", "edgelist",
          "-o", str(target))
    assert target.read_text().splitlines()[0] == "5 17 51"


@pytest.mark.parametrize("argv", [
    ["build", "--construction", "aht"],
    ["build", "--construction", "m8", "--n", "7"],
    ["build", "--construction", "product", "--n", "7"],
    ["build", "--construction", "product", "--n", "6", "--factors", "2", "2"],
    ["build", "--construction", "nope", "--n", "3"],
    ["verify", "/nonexistent/file"],
    ["lemma-check", "--n", "4", "--p", "9"],
    [],
])
def test_usage_errors(capsys, monkeypatch, argv):
    code, _, _ = run(argv, capsys, monkeypatch)
    assert code == 64


def test_malformed_input(capsys, monkeypatch):
    code, _, err = run(["verify"], capsys, monkeypatch, stdin="3 4 1\n0 1\n")
    assert code == 64 and "error" in err


def test_lemma_check(capsys, monkeypatch):
    code, out, _ = run(["lemma-check", "--n", "5", "--p", "3"], capsys, monkeypatch)
    assert code == 0 and "holds" in out
    code, out, _ = run(["lemma-check", "--n", "4", "--json"], capsys, monkeypatch)
    assert code == 0 and all(json.loads(out)["holds"].values())
    code, _, _ = run(["lemma-check", "--n", "13"], capsys, monkeypatch)
    assert code == 2


def test_minimality(capsys, monkeypatch):
    fano = build(capsys, monkeypatch, "--construction", "best", "--n", "3")
    code, out, _ = run(["minimality", "--json"], capsys, monkeypatch, stdin=fano)
    assert code == 0 and json.loads(out)["edge_minimal"] is True


def test_solve_budget_and_external(capsys, monkeypatch, tmp_path):
    m8 = build(capsys, monkeypatch, "--construction", "m8")
    code, out, _ = run(["solve", "--budget", "20"], capsys, monkeypatch, stdin=m8)
    assert code == 2 and out.startswith("BUDGET_EXCEEDED")
    script = tmp_path / "s.py"
    script.write_text("import sys\nprint('s UNSATISFIABLE')\nsys.exit(20)\n")
    code, out, _ = run(["solve", "--external", f"{sys.executable} {script}", "--json"],
                       capsys, monkeypatch, stdin=m8)
    assert code == 1 and json.loads(out)["status"] == "UNSAT"


def test_config_file(capsys, monkeypatch, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max": 5, "edition": "classical"}))
    code, out, _ = run(["--config", str(cfg), "table"], capsys, monkeypatch)
    assert code == 0 and len(out.splitlines()) == 6
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, _ = run(["--config", str(cfg), "table"], capsys, monkeypatch)
    assert code == 64


def test_output_is_deterministic(capsys, monkeypatch):
    a = build(capsys, monkeypatch, "--construction", "swap", "--n", "5")
    b = build(capsys, monkeypatch, "--construction", "swap", "--n", "5")
    assert a == b


def test_shell_pipeline():
    exe = [sys.executable, "-m", "propertyb"]
    built = subprocess.run(exe + ["build", "--construction", "aht", "--n", "5"],
                           capture_output=True, text=True, check=True)
    verdict = subprocess.run(exe + ["verify"], input=built.stdout, capture_output=True, text=True)
    assert verdict.returncode == 1
