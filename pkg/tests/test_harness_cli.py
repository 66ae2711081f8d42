import pytest

from eodprod import harness
from eodprod.cli import main
from eodprod.eod_search import is_eod_set, layer_occupancy
from eodprod.graph_core import cartesian_product, complete_bipartite_graph


def test_labeled_graph_counts():
    assert sum(1 for _ in harness.enumerate_labeled_graphs(3)) == 8
    assert sum(1 for _ in harness.enumerate_labeled_graphs(4)) == 64
    assert sum(1 for _ in harness.enumerate_labeled_graphs(5)) == 1024
    with pytest.raises(harness.UsageError):
        next(harness.enumerate_labeled_graphs(7))


def test_fixture_fig1():
    fx = harness.load_fixture("fig1")
    assert (fx.graph.n, fx.graph.m) == (12, 17)
    classes = fx.partition.classes()
    assert classes[(2, 5)] == [11]
    assert all(len(classes[i]) == 2 for i in range(1, 6))
    assert harness.check_fixture(fx)
    product, d = fx.implied_eod()
    dims = cartesian_product(fx.graph, complete_bipartite_graph(2, 3))[1]
    occ = layer_occupancy(dims, d, complete_bipartite_graph(2, 3))
    assert occ[11] == (11, 2, True)


def test_fixture_fig2():
    fx = harness.load_fixture("fig2")
    assert (fx.graph.n, fx.graph.m) == (8, 9)
    product, d = fx.implied_eod()
    assert product.n == 48 and len(d) == 12
    assert is_eod_set(product, d)


def test_unknown_fixture():
    with pytest.raises(harness.UsageError):
        harness.load_fixture("nope")


def test_unknown_suite():
    with pytest.raises(harness.UsageError):
        harness.run_suite("NOPE")


def test_report_invariants():
    rep = harness.run_suite("KR_EQUIV", max_n=4, r=3)
    assert rep.ok and rep.pass_count + len(rep.failures) == rep.instance_count
    assert "instances" in rep.render()
    assert "passed=" in rep.render_kv()


def test_suites_independent_of_workers():
    a = harness.run_suite("KMN_EQUIV", max_n=4, pairs=((1, 2),))
    b = harness.run_suite("KMN_EQUIV", workers=2, max_n=4, pairs=((1, 2),))
    assert (a.instance_count, a.pass_count, a.failures, a.notes) == (
        b.instance_count, b.pass_count, b.failures, b.notes)


def test_torus_evidence_never_fails():
    rep = harness.run_suite("TORUS_EVIDENCE", max=6)
    assert rep.ok
    assert "consistent" in rep.notes["verdict"]


def test_diam2_small():
    rep = harness.run_suite("DIAM2_TREES", max_order=6)
    assert rep.ok and rep.instance_count > 0


def test_run_instance_replays():
    ok, *_ = harness.run_instance("ORACLE_XCHECK", ("grid", 4, 9))
    assert ok


# --- CLI ---------------------------------------------------------------------------


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_cli_find_eod(capsys):
    code, out = run(capsys, "find-eod", "C8")
    assert code == 0 and out.out.strip() == "EOD n=8 D=[2, 3, 6, 7]"
    code, out = run(capsys, "find-eod", "P5")
    assert code == 1 and out.out.startswith("NO-EOD")


def test_cli_kv(capsys):
    code, out = run(capsys, "find-eod", "C4", "--kv")
    assert "found=1" in out.out


def test_cli_graph_file(tmp_path, capsys):
    f = tmp_path / "p4.txt"
    f.write_text("4 3\n0 1\n1 2\n2 3\n")
    code, out = run(capsys, "check-eod", str(f), "--set", "1,2")
    assert code == 0 and "eod=true" in out.out
    code, _ = run(capsys, "check-eod", str(f), "--set", "0,1")
    assert code == 1


def test_cli_parse_error_exit_two(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("3 1\n2 2\n")
    code, out = run(capsys, "find-eod", str(f))
    assert code == 2 and "line 2" in out.err


def test_cli_usage_error(capsys):
    code, _ = run(capsys, "frobnicate")
    assert code == 2
    code, _ = run(capsys, "fixture", "nope")
    assert code == 2
    code, _ = run(capsys, "suite", "KR_EQUIV", "r=2")
    assert code == 2


def test_cli_amenability_round_trip(tmp_path, capsys):
    part = tmp_path / "c6.part"
    part.write_text("1: 0 1\n2: 3 4\n0: 2 5\n")
    code, out = run(capsys, "check-amenable", "C6", str(part), "--flavor", "k2")
    assert code == 0
    code, out = run(capsys, "to-eod", "C6", str(part), "--flavor", "k2")
    assert out.out.strip() == "EOD n=12 D=[0, 2, 7, 9]"
    code, out = run(capsys, "from-eod", "C6", "--flavor", "k2", "--set", "0,2,7,9")
    assert code == 0 and out.out == "0: 2 5\n1: 0 1\n2: 3 4\n"
    part.write_text("1: 0 1\n0: 2\n")
    code, out = run(capsys, "check-amenable", "P3", str(part), "--flavor", "k2")
    assert code == 1 and out.out.startswith("VIOLATION A at 2")


def test_cli_find_amenable(capsys):
    code, out = run(capsys, "find-amenable", "P3", "--flavor", "c4")
    assert code == 1 and out.out.strip() == "none"
    code, out = run(capsys, "find-amenable", "P4", "--flavor", "kmn:1,1")
    assert code == 0 and out.out == "0: 1 2\n[1,2]: 0 3\n"


def test_cli_zigzag(capsys):
    code, out = run(capsys, "zigzag", "find", "C6")
    assert code == 0 and out.out.strip() == "0-1 3-4"
    code, out = run(capsys, "zigzag", "check", "C9", "--edges", "0-1,3-4,6-7")
    assert code == 1 and "VIOLATION iv" in out.out


def test_cli_trees(capsys):
    code, out = run(capsys, "trees", "gen", "3", "7")
    assert code == 0 and len(out.out.split()) == 1
    code, out = run(capsys, "trees", "recognize", "P5", "2")
    assert out.out.strip() == "(leaf 2)"
    code, out = run(capsys, "trees", "enum", "5")
    assert len(out.out.split()) == 3
    code, out = run(capsys, "trees", "replay", "(type-b 0 0 (leaf 2) (leaf 2))")
    assert code == 0 and out.out.startswith("10 9")


def test_cli_oracle(capsys):
    code, out = run(capsys, "oracle", "grid", "4", "9")
    assert code == 0 and out.out.startswith("true")
    code, _ = run(capsys, "oracle", "cycle", "6")
    assert code == 1
    code, _ = run(capsys, "oracle", "grid", "2", "3")
    assert code == 2


def test_cli_suite_and_fixture(capsys):
    code, out = run(capsys, "suite", "ORACLE_XCHECK", "--kv")
    assert code == 0 and "failed=0" in out.out
    code, out = run(capsys, "fixture", "fig2")
    assert code == 0 and "eod=true" in out.out


def test_cli_product(capsys):
    code, out = run(capsys, "product", "P2", "P2", "--out", "graph6")
    assert code == 0 and out.out.splitlines()[-1] == "Cr"
