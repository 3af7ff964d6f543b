"""Command line surface: parsing, rendering, exit codes, reproducibility."""

from __future__ import annotations

import json

import pytest

from dsslab import VectorSequence, crossover_table, format_crossover_csv, verify_distinct
from dsslab.cli import DEFAULT_SEED, build_config, main, run

GOOD = "3 1 4\n1\n2\n4\n"
BAD = "3 1 3\n1\n2\n3\n"


@pytest.fixture()
def good_file(tmp_path):
    path = tmp_path / "good.seq"
    path.write_text(GOOD)
    return str(path)


@pytest.fixture()
def bad_file(tmp_path):
    path = tmp_path / "bad.seq"
    path.write_text(BAD)
    return str(path)


def test_defaults():
    cfg = build_config(["bounds", "--n", "4", "--k", "1"])
    assert cfg.fmt == "text"
    assert cfg.seed == DEFAULT_SEED == 1729
    assert cfg.out is None


def test_run_is_reproducible(good_file):
    argvs = [
        ["bounds", "--n", "12", "--k", "2", "--format", "json"],
        ["crossover", "--k-min", "1", "--k-max", "10", "--format", "csv"],
        ["lattice-check", "--n", "10", "--k", "2", "--p", "2", "--format", "json"],
        ["search", "--n", "3", "--k", "2", "--format", "json"],
        ["moments", "--file", good_file, "--p", "1", "--samples", "2000", "--format", "json"],
        ["report", "--n", "3", "--k", "1", "--format", "csv"],
    ]
    for argv in argvs:
        first = run(build_config(argv))
        second = run(build_config(argv))
        assert first.stdout == second.stdout, argv
        assert first.code == second.code, argv


def test_bounds_csv_layout():
    res = run(build_config(["bounds", "--n", "12", "--k", "2", "--format", "csv"]))
    lines = res.stdout.splitlines()
    assert lines[0] == "method,coefficient,asymptotic_bound,finite_bound"
    assert lines[1].startswith("first_moment,0.59081795,")
    # variance has no finite form; the cell stays empty rather than faking 0
    assert lines[3].endswith(",")
    assert res.stdout.endswith("\n")


def test_bounds_single_method_selection():
    res = run(build_config(["bounds", "--n", "12", "--k", "2", "--method", "variance", "--format", "json"]))
    data = json.loads(res.stdout)
    assert [row["method"] for row in data["rows"]] == ["variance"]


def test_crossover_csv_matches_library_rendering(capsys):
    code = main(["crossover", "--k-min", "1", "--k-max", "8", "--format", "csv"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out == format_crossover_csv(crossover_table(1, 8))
    # expected-regime mismatches are narrated on stderr, not stdout
    assert "k=5" in captured.err and "k=6" in captured.err


def test_crossover_without_disagreement_range(capsys):
    code = main(["crossover", "--k-min", "8", "--k-max", "12", "--format", "csv"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.err == ""


def test_lattice_check_shell_and_count_modes():
    res = run(build_config(["lattice-check", "--n", "12", "--k", "2", "--p", "2", "--format", "json"]))
    data = json.loads(res.stdout)
    assert data["count"] == 4096
    assert abs(data["continuum_ratio"] - 1.0) < 0.01

    res = run(build_config(["lattice-check", "--radius", "50", "--k", "2", "--p", "2", "--format", "json"]))
    data = json.loads(res.stdout)
    assert 0.0 < data["relative_discrepancy"] < 0.02


def test_lattice_check_ratio_undefined_at_n_zero():
    res = run(build_config(["lattice-check", "--n", "0", "--k", "2", "--p", "1", "--format", "json"]))
    assert json.loads(res.stdout)["continuum_ratio"] is None
    text = run(build_config(["lattice-check", "--n", "0", "--k", "2", "--p", "1"]))
    assert "undefined" in text.stdout


def test_lattice_check_budget_exit(capsys):
    assert main(["lattice-check", "--n", "20", "--k", "3", "--p", "3", "--budget", "100"]) == 3
    assert "budget" in capsys.readouterr().err


def test_verify_exit_codes(good_file, bad_file):
    ok = run(build_config(["verify", "--file", good_file, "--format", "json"]))
    assert ok.code == 0
    assert json.loads(ok.stdout)["status"] == "pass"

    res = run(build_config(["verify", "--file", bad_file, "--format", "json"]))
    assert res.code == 1
    data = json.loads(res.stdout)
    assert data["status"] == "collision"
    assert data["total"] == [3]
    assert {frozenset(data["first"]), frozenset(data["second"])} == {
        frozenset({0, 1}),
        frozenset({2}),
    }


def test_verify_text_verdict(good_file):
    res = run(build_config(["verify", "--file", good_file]))
    assert "pass" in res.stdout


def test_search_text_embeds_witness_in_file_format():
    res = run(build_config(["search", "--n", "3", "--k", "2"]))
    assert res.code == 0
    tail = res.stdout.split("witness in sequence file format:\n", 1)[1]
    witness = VectorSequence.from_text(tail)
    assert witness.bound == 2
    assert witness.n == 3


def test_search_json_payload():
    res = run(build_config(["search", "--n", "4", "--k", "1", "--format", "json"]))
    data = json.loads(res.stdout)
    assert data["m_min"] == 7
    assert data["exhaustive"] is True
    witness = data["witness"]
    assert witness["bound"] == 7
    rebuilt = VectorSequence(
        witness["n"], witness["k"], witness["bound"],
        tuple(tuple(v) for v in witness["vectors"]),
    )
    assert verify_distinct(rebuilt) is None


def test_search_budget_partial_exit(capsys):
    code = main(["search", "--n", "5", "--k", "1", "--budget", "50", "--format", "json"])
    captured = capsys.readouterr()
    assert code == 3
    data = json.loads(captured.out)
    assert data["exhaustive"] is False
    assert data["m_min"] is None


def test_moments_exact_json_keeps_rationals(good_file):
    res = run(build_config(["moments", "--file", good_file, "--p", "2", "--format", "json"]))
    data = json.loads(res.stdout)
    assert data["value"] == "21/4"
    assert data["provenance"] == "exact_dp"
    assert "seed" not in data


def test_moments_mc_records_seed(good_file):
    res = run(
        build_config(
            ["moments", "--file", good_file, "--p", "2", "--samples", "5000", "--format", "json"]
        )
    )
    data = json.loads(res.stdout)
    assert data["provenance"] == "monte_carlo"
    assert data["seed"] == DEFAULT_SEED
    assert data["samples"] == 5000
    assert data["stderr"] > 0.0

    reseeded = run(
        build_config(
            [
                "moments",
                "--file",
                good_file,
                "--p",
                "2",
                "--samples",
                "5000",
                "--seed",
                "7",
                "--format",
                "json",
            ]
        )
    )
    other = json.loads(reseeded.stdout)
    assert other["seed"] == 7
    assert other["value"] != data["value"]


def test_moments_exact_rejects_fractional_p(good_file):
    assert main(["moments", "--file", good_file, "--p", "2.5"]) == 2


def test_report_exit_codes():
    assert main(["report", "--n", "3", "--k", "1", "--out", "/dev/null"]) == 0
    assert main(["report", "--n", "1", "--k", "1", "--out", "/dev/null"]) == 1


def test_report_json_rows():
    res = run(build_config(["report", "--n", "1", "--k", "1", "--format", "json"]))
    data = json.loads(res.stdout)
    flagged = [row["method"] for row in data["rows"] if row["finite_violation"]]
    assert flagged == ["third_moment"]
    assert res.code == 1


def test_usage_errors(capsys, good_file):
    assert main([]) == 2
    assert main(["bounds"]) == 2
    assert main(["bounds", "--n", "4", "--k", "0"]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["lattice-check", "--k", "2", "--p", "1"]) == 2
    assert main(["verify", "--file", "/nonexistent/path.seq"]) == 2
    capsys.readouterr()


def test_out_writes_file_instead_of_stdout(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code = main(["bounds", "--n", "6", "--k", "1", "--format", "csv", "--out", str(target)])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out == ""
    direct = run(build_config(["bounds", "--n", "6", "--k", "1", "--format", "csv"]))
    assert target.read_text() == direct.stdout
