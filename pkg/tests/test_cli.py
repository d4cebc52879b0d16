import json

import numpy as np
import pytest

from vecchrom import graphs
from vecchrom.cli import main, parse_graph_file, resolve_graph
from vecchrom.errors import ParseError, ValidationError
from vecchrom.quantum import (
    certificate_to_json,
    classical_embedding,
    quantum_sabidussi,
    save_certificate,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    record = json.loads(out.out) if out.out.strip().startswith("{") else None
    return code, record, out.err


# --- graph argument handling ---------------------------------------------------

def test_parse_graph_file_text_and_path(tmp_path):
    assert parse_graph_file("2 1\n0 1").edge_count == 1
    assert parse_graph_file("3 3\n0 1\n1 2\n0 2").edge_count == 3
    path = tmp_path / "g.txt"
    graphs.save_graph(path, graphs.generate("cycle", 6))
    assert parse_graph_file(str(path)).edge_count == 6


def test_parse_graph_file_errors():
    with pytest.raises(ValidationError) as err:
        parse_graph_file("2 1\n0 0")
    assert err.value.line == 2
    with pytest.raises(ParseError):
        parse_graph_file("not a graph")


def test_resolve_graph_specs():
    assert resolve_graph("petersen").n == 10
    assert resolve_graph("complete:4").edge_count == 6
    assert resolve_graph("omega:3").n == 8


# --- param ----------------------------------------------------------------------

def test_param_theta_bar_c5(capsys):
    code, record, _ = run_cli(capsys, "param", "cycle:5", "--which", "theta-bar")
    assert code == 0
    assert abs(record["result"]["value"] - 2.23607) <= 1e-4
    assert record["result"]["gap"] <= 1e-5
    assert record["status"] == "ok"
    assert record["graphs"][0]["n"] == 5


def test_param_onehom_omega4(capsys):
    code, record, _ = run_cli(capsys, "param", "omega:4", "--which", "onehom")
    assert code == 0
    assert record["result"]["is_one_homogeneous"] is True


def test_param_theta_bar_empty_convention(capsys):
    code, record, _ = run_cli(capsys, "param", "empty:4", "--which", "theta-bar")
    assert code == 0
    assert record["result"]["value"] == 1.0
    assert record["result"]["method"] == "convention"


def test_param_chromatic_with_limit(capsys):
    code, record, _ = run_cli(
        capsys, "param", "complete:5", "--which", "chromatic", "--limit", "3"
    )
    assert code == 0
    assert record["result"]["value"] == "> 3"
    code, record, _ = run_cli(capsys, "param", "cycle:5", "--which", "chromatic")
    assert record["result"]["value"] == 3


def test_param_spectral(capsys):
    code, record, _ = run_cli(capsys, "param", "petersen", "--which", "spectral")
    assert code == 0
    assert abs(record["result"]["vector_chromatic"] - 2.5) <= 1e-9
    assert record["result"]["method"] == "spectral"
    # bipartite fallback for a non-1-homogeneous graph
    code, record, _ = run_cli(capsys, "param", "path:3", "--which", "spectral")
    assert code == 0
    assert record["result"]["vector_chromatic"] == 2.0
    assert record["result"]["method"] == "convention"


def test_param_solver_failure_exit_code(capsys):
    code, record, _ = run_cli(
        capsys, "param", "petersen", "--which", "theta-bar", "--max-iter", "5"
    )
    assert code == 2
    assert record["status"] == "solver_failure"
    assert record["result"] is not None  # partial values still reported


def test_param_capacity_error(capsys):
    code, record, err = run_cli(
        capsys, "param", "omega:6", "--which", "theta-bar", "--cap", "10"
    )
    assert code == 3
    assert record is None
    assert "cap" in err


# --- verify ----------------------------------------------------------------------

def test_verify_hedetniemi_pair(capsys):
    code, record, _ = run_cli(
        capsys, "verify", "cycle:5", "complete:3", "--suite", "hedetniemi"
    )
    assert code == 0
    assert record["all_passed"] is True
    idents = record["pairs"][0]["identities"]
    assert abs(idents[0]["lhs"] - np.sqrt(5.0)) <= 1e-3


def test_verify_random_pairs_seeded(capsys):
    code, record, _ = run_cli(
        capsys, "verify", "--suite", "union", "--random-pairs", "2",
        "--size", "5", "--seed", "42",
    )
    assert code == 0
    assert len(record["pairs"]) == 2
    assert record["config"]["seed"] == 42


def test_verify_usage_error(capsys):
    code, record, err = run_cli(capsys, "verify", "cycle:5", "--suite", "union")
    assert code == 1
    assert record is None


def test_verify_capacity_error_names_product_size(capsys):
    code, record, err = run_cli(
        capsys, "verify", "omega:6", "omega:6", "--suite", "products", "--cap", "100"
    )
    assert code == 3
    assert record is None
    assert "4096" in err  # the offending product order


# --- qverify ----------------------------------------------------------------------

def _c5_certificate():
    return classical_embedding(
        graphs.generate("cycle", 5), graphs.generate("complete", 3),
        [0, 1, 0, 1, 2],
    )


def test_qverify_pass(tmp_path, capsys):
    path = tmp_path / "cert.json"
    save_certificate(path, _c5_certificate())
    code, record, _ = run_cli(capsys, "qverify", str(path))
    assert code == 0
    assert record["report"]["ok"] is True
    assert record["certificate"]["n_colors"] == 3


def test_qverify_mutated_fails_named_condition(tmp_path, capsys):
    data = certificate_to_json(_c5_certificate())
    data["assignment"][2][0][0][0][0] += 0.01
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, record, _ = run_cli(capsys, "qverify", str(path))
    assert code == 3
    assert record["report"]["ok"] is False
    witness = record["report"]["witness"]
    assert witness["vertex"] == 2
    assert witness["condition"] in {"idempotent", "sum_to_identity", "hermitian"}


def test_qverify_generated_certificate_roundtrip(tmp_path, capsys):
    q = quantum_sabidussi(
        _c5_certificate(),
        classical_embedding(
            graphs.generate("cycle", 7), graphs.generate("complete", 3),
            [0, 1, 0, 1, 0, 1, 2],
        ),
    )
    path = tmp_path / "prod.json"
    save_certificate(path, q)
    code, record, _ = run_cli(capsys, "qverify", str(path))
    assert code == 0
    assert record["report"]["ok"] is True
    assert record["graphs"][0]["n"] == 35


def test_qverify_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{ nope")
    code, record, err = run_cli(capsys, "qverify", str(path))
    assert code == 1


# --- report and record hygiene ------------------------------------------------------

def test_report_record(capsys):
    code, record, _ = run_cli(capsys, "report", "cycle:5")
    assert code == 0
    params = record["params"]
    assert abs(params["theta_bar"]["value"] - 2.23607) <= 1e-4
    assert params["one_homogeneous"] is True
    assert params["bipartite"] is False
    assert params["chromatic"] == 3
    assert all(c["passed"] for c in record["identities"])


def test_records_deterministic_modulo_timestamp(capsys):
    _, first, _ = run_cli(capsys, "param", "cycle:5", "--which", "theta-bar")
    _, second, _ = run_cli(capsys, "param", "cycle:5", "--which", "theta-bar")
    first.pop("timestamp")
    second.pop("timestamp")
    assert first == second


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "record.json"
    code = main(["param", "complete:3", "--which", "chromatic", "--out", str(target)])
    assert code == 0
    record = json.loads(target.read_text())
    assert record["result"]["value"] == 3
    captured = capsys.readouterr()
    assert captured.out == ""


def test_graph_file_argument(tmp_path, capsys):
    path = tmp_path / "c4.txt"
    graphs.save_graph(path, graphs.generate("cycle", 4))
    code, record, _ = run_cli(capsys, "param", str(path), "--which", "chromatic")
    assert code == 0
    assert record["result"]["value"] == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
