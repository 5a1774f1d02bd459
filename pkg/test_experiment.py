#!/usr/bin/env python3

import json

import pandas as pd
import pytest

import run
import search.main as experiment
from algebra.finite_field import GaloisField
from algebra.matrix import GFMatrix, LengthMismatchError
from codes.linear_code import Codeword, DistanceBound
from codes.matrix_file import (
    ParseError,
    UnknownFieldOrderError,
    format_matrix_file,
    parse_matrix_file,
    parse_matrix_text,
    verify_codeword,
    write_matrix_file,
)
from search.base_search import ConfigError, SearchParams
from search.main import ReportIntegrityError, RunConfig, aggregate_runs, run_experiment, verify_bound

G_6_3_FILE = """\
# [6,3,2]_8 code, entries packed over a^3 + a + 1
8 6 3
1 0 0 7 4 6
0 1 0 2 7 1
0 0 1 0 7 7
"""


@pytest.fixture
def matrix_6_3(tmp_path):
    path = tmp_path / "g63.txt"
    path.write_text(G_6_3_FILE)
    return str(path)


@pytest.fixture
def matrix_8_4(tmp_path, g_8_4):
    return write_matrix_file(g_8_4, str(tmp_path / "g84.txt"))


def test_parse_worked_matrix(matrix_6_3, g_6_3):
    assert parse_matrix_file(matrix_6_3) == g_6_3


def test_parse_binary_identity():
    matrix = parse_matrix_text("2 4 2\n1 0 0 0\n0 1 0 0\n")
    assert matrix.shape == (2, 4)
    assert matrix.field.q == 2


def test_parse_modulus_override():
    matrix = parse_matrix_text("8 3 1\npoly 13\n1 2 3\n")
    assert matrix.field.modulus == 13


@pytest.mark.parametrize("text, line", [
    ("8 3 1\n1 2 8\n", 2),
    ("8 3 1\n\n# comment\n1 2\n", 4),
    ("8 3 2\n1 2 3\n", 2),
    ("8 3\n1 2 3\n", 1),
    ("4 3 1\npoly 5\n1 2 3\n", 2),
    ("2 2 1\n1 x\n", 2),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as excinfo:
        parse_matrix_text(text)
    assert excinfo.value.line == line


def test_parse_unknown_field_order():
    with pytest.raises(UnknownFieldOrderError):
        parse_matrix_text("6 2 1\n1 2\n")


def test_format_round_trip(gf2, gf4, gf9, rng):
    for field in (gf2, gf4, gf9, GaloisField(2, 3, 0b1101)):
        matrix = GFMatrix(field, rng.integers(0, field.q, size=(3, 7)))
        assert parse_matrix_text(format_matrix_file(matrix, comment="random")) == matrix


def test_verify_codeword(matrix_6_3):
    assert verify_codeword(matrix_6_3, "1 2 1 3 6 3") == {"member": True, "weight": 6}
    assert verify_codeword(matrix_6_3, [0, 0, 0, 0, 0, 0]) == {"member": True, "weight": 0}
    assert verify_codeword(matrix_6_3, "1,0,0,0,0,0") == {"member": False, "weight": 1}
    with pytest.raises(LengthMismatchError):
        verify_codeword(matrix_6_3, "1 2 1")


def test_brute_force_experiment(matrix_6_3, tmp_path):
    out = tmp_path / "brute.json"
    report = run_experiment(RunConfig(matrix_path=matrix_6_3, algorithm="brute", output_path=str(out)))
    assert report["complete"]
    assert report["runs"][0]["best_weight"] == 2
    assert report["runs"][0]["exact"] is True
    assert report["aggregate"]["best"] == 2
    assert json.loads(out.read_text()) == report


def test_gga_experiment_hits_distance_every_run(matrix_8_4, tmp_path):
    params = SearchParams(population_size=16, max_evals=10000, target_weight=2)
    config = RunConfig(matrix_path=matrix_8_4, algorithm="gga", params=params, runs=100,
                       output_path=str(tmp_path / "gga.json"))
    report = run_experiment(config)
    assert report["aggregate"]["best"] == 2
    assert report["aggregate"]["hits_at_best"] == 100
    assert [record["seed"] for record in report["runs"]] == list(range(100))


def test_witnesses_in_report_verify(matrix_8_4, tmp_path):
    params = SearchParams(population_size=8, max_evals=200)
    config = RunConfig(matrix_path=matrix_8_4, algorithm="chc", representation="discrete", params=params,
                       runs=3, output_path=str(tmp_path / "chc.json"))
    for record in run_experiment(config)["runs"]:
        assert verify_codeword(matrix_8_4, record["witness"]) == {"member": True, "weight": record["best_weight"]}


def strip_timing(report):
    runs = [{key: value for key, value in record.items() if key != "wall_time"} for record in report["runs"]]
    aggregate = {key: value for key, value in report["aggregate"].items() if key != "mean_wall_time"}
    return runs, aggregate


def test_experiment_is_deterministic(matrix_8_4, tmp_path):
    def once(name):
        params = SearchParams(population_size=8, max_evals=300, seed=11)
        return run_experiment(RunConfig(matrix_path=matrix_8_4, algorithm="gga", params=params, runs=3,
                                        emit_diversity=True, output_path=str(tmp_path / name)))
    assert strip_timing(once("a.json")) == strip_timing(once("b.json"))


def test_aggregate_recomputes_from_runs():
    runs = [
        {"best_weight": 5, "wall_time": 1.0, "evals_used": 100},
        {"best_weight": 4, "wall_time": 3.0, "evals_used": 300},
        {"best_weight": 4, "wall_time": 2.0, "evals_used": 200},
    ]
    assert aggregate_runs(runs) == {
        "best": 4,
        "worst": 5,
        "mean": pytest.approx(13 / 3),
        "hits_at_best": 2,
        "mean_wall_time": 2.0,
        "mean_evals": 200.0,
    }
    assert aggregate_runs([]) is None


def test_summary_csv(matrix_6_3, tmp_path):
    csv_path = tmp_path / "summary.csv"
    run_experiment(RunConfig(matrix_path=matrix_6_3, algorithm="brute", output_path=str(tmp_path / "r.json"),
                             summary_csv=str(csv_path)))
    frame = pd.read_csv(csv_path)
    assert frame.loc[0, "best"] == 2
    assert frame.loc[0, "n"] == 6


def test_interrupt_writes_partial_report(matrix_8_4, tmp_path, monkeypatch):
    calls = []
    original = experiment.run_once

    def interrupted(config, code, index):
        calls.append(index)
        if index == 1:
            raise KeyboardInterrupt
        return original(config, code, index)

    monkeypatch.setattr(experiment, "run_once", interrupted)
    out = tmp_path / "partial.json"
    params = SearchParams(population_size=8, max_evals=100)
    report = run_experiment(RunConfig(matrix_path=matrix_8_4, params=params, runs=5, output_path=str(out)))
    assert calls == [0, 1]
    assert not report["complete"]
    assert len(report["runs"]) == 1
    assert json.loads(out.read_text())["complete"] is False


def test_default_output_path(matrix_8_4, tmp_path, monkeypatch):
    monkeypatch.setenv("REPORT_DIR", str(tmp_path / "reports"))
    params = SearchParams(population_size=8, max_evals=50)
    run_experiment(RunConfig(matrix_path=matrix_8_4, algorithm="random", params=params))
    written = list((tmp_path / "reports").glob("random_order_*.json"))
    assert len(written) == 1


@pytest.mark.parametrize("config", [
    RunConfig(matrix_path="x", algorithm="brute", representation="order"),
    RunConfig(matrix_path="x", algorithm="tabu"),
    RunConfig(matrix_path="x", algorithm="gga", representation="tree"),
    RunConfig(matrix_path="x", runs=0),
])
def test_invalid_run_config(config):
    with pytest.raises(ConfigError):
        config.validate()


def test_witness_integrity_check(code_6_3):
    good = DistanceBound(2, Codeword.from_vector([1, 6, 0, 0, 0, 0]))
    verify_bound(code_6_3, good)
    with pytest.raises(ReportIntegrityError):
        verify_bound(code_6_3, DistanceBound(1, Codeword.from_vector([1, 6, 0, 0, 0, 0])))
    with pytest.raises(ReportIntegrityError):
        verify_bound(code_6_3, DistanceBound(1, Codeword.from_vector([1, 0, 0, 0, 0, 0])))


@pytest.fixture
def quiet_logs(tmp_path, monkeypatch):
    monkeypatch.setenv("LOG_FILE", str(tmp_path / "test.log"))


def test_cli_generate_search_verify(tmp_path, capsys, quiet_logs):
    matrix = str(tmp_path / "code.txt")
    assert run.main(["generate", "--q", "4", "--n", "9", "--k", "3", "--seed", "5", "--out", matrix]) == 0
    out = str(tmp_path / "report.json")
    assert run.main(["--matrix", matrix, "--algo", "chc", "--pop", "10", "--evals", "500", "--out", out]) == 0
    report = json.loads(open(out).read())
    witness = " ".join(str(value) for value in report["runs"][0]["witness"])
    capsys.readouterr()
    assert run.main(["verify", "--matrix", matrix, "--word", witness]) == 0
    assert json.loads(capsys.readouterr().out)["member"] is True


def test_cli_decode(matrix_6_3, capsys, quiet_logs):
    assert run.main(["decode", "--matrix", matrix_6_3, "--word", "1 2 1 3 6 2"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["error_detected"] is True
    assert result["error_weight"] == 1


def test_cli_reports_errors(tmp_path, capsys, quiet_logs):
    bad = tmp_path / "bad.txt"
    bad.write_text("8 3 1\n1 2 9\n")
    assert run.main(["search", "--matrix", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err
    assert run.main(["verify", "--matrix", str(tmp_path / "missing.txt"), "--word", "1"]) == 1


def test_cli_help_lists_every_flag(capsys):
    with pytest.raises(SystemExit) as excinfo:
        run.parse_args(["--help"])
    assert excinfo.value.code == 0
    text = capsys.readouterr().out
    for flag in ("--matrix", "--algo", "--repr", "--pop", "--evals", "--pc", "--pm", "--tau", "--reinit",
                 "--seed", "--runs", "--target", "--ax-m", "--chc-literal", "--diversity", "--out"):
        assert flag in text


if __name__ == "__main__":
    pytest.main([__file__])
