import io
import json

import pytest

from linetrees.cli import main


def run_cli(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_codec_encode_doc_example(capsys, monkeypatch):
    code, out, err = run_cli(capsys, monkeypatch,
                             ["codec", "encode", "--degree", "3"], stdin="00010111\n")
    assert code == 0
    assert out.strip() == "0011" and len(out.strip()) == 4


def test_codec_encode_rejects_non_sequence(capsys, monkeypatch):
    code, out, err = run_cli(capsys, monkeypatch,
                             ["codec", "encode", "--degree", "3"], stdin="01010101\n")
    assert code == 1
    assert "not a de Bruijn sequence" in err


def test_codec_decode_roundtrip(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["codec", "decode", "--degree", "3"], stdin="0011\n")
    assert code == 0 and out.strip() == "00010111"


def test_codec_enumerate_json(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["codec", "enumerate", "--degree", "2", "--json"])
    data = json.loads(out)
    assert code == 0 and data["count"] == 4
    assert data["sequences"] == ["0011", "0110", "1001", "1100"]


def test_group_compute_doc_example(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["group", "compute", "--family", "kautz",
                            "-m", "2", "-n", "2", "--json"])
    data = json.loads(out)
    assert code == 0
    assert data["invariant_factors"] == [2, 6]
    assert data["order"] == "12"
    assert data["matches_formula"] is True


def test_group_verify(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["group", "verify", "--family", "db",
                            "-m", "2", "-n", "3", "--json"])
    data = json.loads(out)
    assert code == 0 and data["ok"] is True and data["divisibility_split"] is True


def test_group_order_and_formula(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["group", "order", "--family", "db", "-m", "2", "-n", "3"])
    assert code == 0 and out.strip() == "16"
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["group", "formula", "--family", "kautz",
                            "-m", "2", "-n", "2", "--json"])
    data = json.loads(out)
    assert code == 0 and data["invariant_factors"] == [2, 6]


def test_gen_and_linegraph_json(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["gen", "--family", "db", "-m", "2", "-n", "1",
                            "--format", "json"])
    assert code == 0
    graph = json.loads(out)
    assert graph["vertices"] == ["0", "1"]
    assert len(graph["edges"]) == 4

    edge_list = "".join(f"{s} {t} {lbl}\n" for s, t, lbl in graph["edges"])
    monkeypatch.setattr("sys.stdin", io.StringIO(edge_list))
    code = main(["linegraph", "--input", "-", "--format", "json"])
    lg = json.loads(capsys.readouterr().out)
    assert code == 0
    assert sorted(lg["vertices"]) == ["00", "01", "10", "11"]
    assert len(lg["edges"]) == 8


def test_gen_dot(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["gen", "--family", "kautz", "-m", "2", "-n", "1",
                            "--format", "dot"])
    assert code == 0 and out.startswith("digraph") and "->" in out


def test_trees_count_json(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["trees", "count", "--family", "db", "-m", "2", "-n", "2",
                            "--json"])
    data = json.loads(out)
    assert code == 0 and data["total"] == "8"
    assert set(data["by_root"].values()) == {"2"}


def test_trees_identity_and_knuth(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["trees", "identity-check", "--family", "kautz",
                            "-m", "2", "-n", "1", "--json"])
    data = json.loads(out)
    assert code == 0 and data["holds"] is True and data["witness"] is None

    code, out, _ = run_cli(capsys, monkeypatch,
                           ["trees", "knuth-check", "--family", "kautz",
                            "-m", "2", "-n", "1", "--json"])
    data = json.loads(out)
    assert code == 0 and data["holds"] is True
    assert data["kappa_line"] == "72"


def test_trees_enumerate(capsys, monkeypatch):
    stdin = "a b\nb a\n"
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["trees", "enumerate", "--input", "-", "--json"],
                           stdin=stdin)
    data = json.loads(out)
    assert code == 0 and len(data["trees"]) == 2


def test_bijection_roundtrip_file(tmp_path, capsys, monkeypatch):
    graph_file = tmp_path / "g.txt"
    graph_file.write_text("a b\nb a\n")
    array = {"root": "a", "lists": {"a": ["OMEGA"], "b": ["1"]}}
    code, out, _ = run_cli(capsys, monkeypatch,
                           ["bijection", "roundtrip", "--input", str(graph_file)],
                           stdin=json.dumps(array))
    data = json.loads(out)
    assert code == 0 and data["roundtrip_ok"] is True
    assert data["tree"]["root"] == "1"

    code, out, _ = run_cli(capsys, monkeypatch,
                           ["bijection", "sigma", "--input", str(graph_file)],
                           stdin=json.dumps(array))
    tree = json.loads(out)
    assert code == 0 and tree == {"root": "1", "edges": [["0", "1"]]}

    code, out, _ = run_cli(capsys, monkeypatch,
                           ["bijection", "pi", "--input", str(graph_file)],
                           stdin=json.dumps(tree))
    assert code == 0 and json.loads(out) == array


def test_bijection_rejects_malformed_array(tmp_path, capsys, monkeypatch):
    graph_file = tmp_path / "g.txt"
    graph_file.write_text("a b\nb a\n")
    bad = {"root": "a", "lists": {"a": ["0", "OMEGA"], "b": ["1"]}}
    code, _, err = run_cli(capsys, monkeypatch,
                           ["bijection", "sigma", "--input", str(graph_file)],
                           stdin=json.dumps(bad))
    assert code == 1 and "error" in err


def test_verify_all_subset(capsys, monkeypatch):
    code, out, _ = run_cli(capsys, monkeypatch, ["verify-all", "6", "9"])
    assert code == 0
    assert "criterion 6" in out and "criterion 9" in out
    assert "2/2 criteria passed" in out


def test_experiment_scripts_run():
    import pathlib
    import subprocess
    import sys
    root = pathlib.Path(__file__).resolve().parent.parent
    for cmd in (
        [sys.executable, "scripts/critical_group_table.py", "--max-m", "2", "--max-n", "2"],
        [sys.executable, "scripts/identity_sweep.py", "--count", "3"],
    ):
        proc = subprocess.run(cmd, cwd=root, capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["group", "compute", "--family", "nope", "-m", "2", "-n", "2"])
    assert exc.value.code == 2


def test_missing_graph_source_is_usage_error(capsys, monkeypatch):
    code, _, err = run_cli(capsys, monkeypatch, ["trees", "count"])
    assert code == 2 and "provide --input" in err
