import io
import json

import pytest

from powerdom.cli import main
from powerdom.graphs import parse_graph
from powerdom.propagation import is_feasible
from powerdom.treedecomp import parse_td, validate_td

P3 = "p edge 3 2\ne 1 2\ne 2 3\n"
K2 = "p edge 2 1\ne 1 2\n"
GOOD_ORIENT = "d 1 2\nd 2 3\nt 1 0\nt 2 1\nt 3 2\n"
BAD_ORIENT = "d 1 2\nd 3 2\nt 1 0\nt 2 1\nt 3 0\n"
K2_SOL_OK = "x_v1 1\nx_v2 0\nz_t1_v1 1\nz_t1_v2 1\nY_t1_1_to_2 1\nY_t1_2_to_1 0\n"
K2_SOL_BAD = "x_v1 1\nx_v2 1\nz_t1_v1 1\nz_t1_v2 0\nY_t1_1_to_2 1\nY_t1_2_to_1 1\n"


def run(capsys, *argv: str):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def spider_file(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "spider", "3", "3")
    assert code == 0
    path = tmp_path / "spider.gr"
    path.write_text(out)
    return str(path)


def test_generate_then_solve(spider_file, capsys):
    code, out, _ = run(capsys, "solve", "--ell", "3", "--method", "bf", spider_file)
    assert code == 0
    assert out == "opt 1\n1\n"
    # The default method is the decomposition solver.
    code, out, _ = run(capsys, "solve", "--ell", "2", spider_file)
    assert code == 0
    assert out == "opt 3\n3\n5\n8\n"


def test_solve_json(spider_file, capsys):
    code, out, _ = run(capsys, "solve", "--ell", "2", "--json", spider_file)
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "dp"
    assert payload["opt"] == 3
    assert payload["witness"] == sorted(payload["witness"])
    assert len(payload["witness"]) == 3
    assert payload["upper_bound"] >= 3
    assert all(isinstance(s, int) for s in payload["state_table_sizes"])
    assert payload["elapsed_s"] >= 0


def test_solve_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(P3))
    code, out, _ = run(capsys, "solve", "--ell", "1", "--method", "bf", "-")
    assert code == 0
    assert out == "opt 1\n2\n"


def test_closure(tmp_path, capsys):
    path = tmp_path / "p3.gr"
    path.write_text(P3)
    code, out, _ = run(capsys, "closure", str(path), "--sources", "1")
    assert code == 0
    assert out == "1 0\n2 1\n3 2\n"
    code, out, _ = run(capsys, "closure", str(path), "--sources", "1", "--ell", "1")
    assert out == "1 0\n2 1\n3 inf\n"


def test_verify_orientation(tmp_path, capsys):
    graph = tmp_path / "p3.gr"
    graph.write_text(P3)
    good = tmp_path / "good.orient"
    good.write_text(GOOD_ORIENT)
    code, out, _ = run(capsys, "verify-orientation", str(graph), str(good), "--ell", "2")
    assert code == 0
    assert out == "ok\n"
    bad = tmp_path / "bad.orient"
    bad.write_text(BAD_ORIENT)
    code, out, _ = run(capsys, "verify-orientation", str(graph), str(bad), "--ell", "2")
    assert code == 1
    assert out == "P2 at node 2: label 1 but in-degree 2\n"


def test_gen_families(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "pendant-cycle", "4")
    assert code == 0
    g = parse_graph(out)
    assert (g.n, g.m) == (8, 8)

    base = tmp_path / "p3.gr"
    base.write_text(P3)
    code, out, _ = run(capsys, "gen", "attach-paths", "2", str(base))
    assert code == 0
    assert parse_graph(out).n == 6

    inst = tmp_path / "toy.minrep"
    inst.write_text("minrep 1 2 1 2\ne 1 1\ne 2 2\n")
    code, out, _ = run(capsys, "gen", "minrep", str(inst))
    assert code == 0
    assert out.startswith("c role 1 a0\nc role 2 a1\nc role 3 b0\n")
    parse_graph(out)

    code, _, err = run(capsys, "gen", "spider", "3")
    assert code == 2 and "spider" in err


def test_solve_ptas(capsys):
    code, out, _ = run(capsys, "solve", "--method", "ptas", "--eps", "1",
                       "--ell", "1", "tests/fixtures/tworing.gr")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "shift 1"
    assert lines[1].startswith("blocks ")
    assert lines[2] == f"size {len(lines) - 3}"
    g = parse_graph(open("tests/fixtures/tworing.gr").read())
    witness = {int(t) - 1 for t in lines[3:]}
    assert is_feasible(g, witness, range(g.n), 1)


def test_emit_ip(tmp_path, capsys):
    graph = tmp_path / "k2.gr"
    graph.write_text(K2)
    code, out, _ = run(capsys, "emit-ip", "ell", str(graph), "--ell", "1")
    assert code == 0
    assert out.splitlines()[0] == "Minimize"
    assert " c3_u1_v2_w1_t1: Y_t1_1_to_2 - z_t1_v1 <= 0" in out
    assert "Binary" in out
    code, relaxed, _ = run(capsys, "emit-ip", "ell", str(graph), "--ell", "1", "--relax")
    assert "Bounds" in relaxed and "Binary" not in relaxed


def test_check_ip(tmp_path, capsys):
    graph = tmp_path / "k2.gr"
    graph.write_text(K2)
    ok = tmp_path / "ok.sol"
    ok.write_text(K2_SOL_OK)
    code, out, _ = run(capsys, "check-ip", "ell", str(graph), "--ell", "1",
                       "--solution", str(ok))
    assert code == 0
    assert out == "ok\nobjective 1\n"
    bad = tmp_path / "bad.sol"
    bad.write_text(K2_SOL_BAD)
    code, out, _ = run(capsys, "check-ip", "ell", str(graph), "--ell", "1",
                       "--solution", str(bad))
    assert code == 1
    assert "(1)[v=2]" in out.splitlines()


def test_td_output_is_valid(spider_file, capsys):
    code, out, _ = run(capsys, "td", spider_file)
    assert code == 0
    g = parse_graph(open(spider_file).read())
    td = parse_td(out)
    assert validate_td(g, td) is None


def test_levels(tmp_path, capsys):
    code, out, _ = run(capsys, "levels", "tests/fixtures/tworing.gr")
    assert code == 0
    assert out.splitlines() == [f"{v} 1" for v in range(1, 9)] + [f"{v} 2" for v in range(9, 17)]
    bare = tmp_path / "p3.gr"
    bare.write_text(P3)
    code, out, _ = run(capsys, "levels", str(bare))
    assert code == 1
    assert out == "no level lines in graph file\n"


def test_output_is_deterministic(spider_file, capsys):
    runs = [run(capsys, "solve", "--ell", "2", spider_file) for _ in range(2)]
    assert runs[0] == runs[1]
    payloads = []
    for _ in range(2):
        _, out, _ = run(capsys, "solve", "--ell", "2", "--json", spider_file)
        data = json.loads(out)
        data.pop("elapsed_s")
        payloads.append(data)
    assert payloads[0] == payloads[1]


def test_usage_errors(tmp_path, capsys, spider_file):
    # Missing round budget.
    code, _, err = run(capsys, "solve", "--method", "bf", spider_file)
    assert code == 2 and "ell" in err
    # Malformed graph input names the offending line.
    bad = tmp_path / "bad.gr"
    bad.write_text("p edge 2 1\ne 1 5\n")
    code, _, err = run(capsys, "solve", "--ell", "1", str(bad))
    assert code == 2 and "line 2" in err
    # Flag combinations that make no sense are rejected.
    td = tmp_path / "x.td"
    td.write_text("s td 1 0 3\nb 1 1 2 3\n")
    code, _, err = run(capsys, "solve", "--ell", "1", "--method", "bf",
                       "--td", str(td), spider_file)
    assert code == 2
    code, _, err = run(capsys, "solve", "--ell", "1", "--eps", "1", spider_file)
    assert code == 2
    code, _, err = run(capsys, "emit-ip", "ordering", spider_file, "--ell", "2")
    assert code == 2
