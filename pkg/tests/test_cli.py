"""End-to-end CLI behavior: reports, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from starmetric import S4, X4, Y4
from starmetric.fileio import space_to_json_text
from helpers import scale


def run_cli(*argv, check=False):
    return subprocess.run(
        [sys.executable, "-m", "starmetric", *argv],
        capture_output=True,
        text=True,
        check=check,
    )


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, space in (("S4", S4), ("X4", X4), ("Y4", Y4), ("S4x2", scale(S4, 2))):
        path = tmp_path / f"{name}.json"
        path.write_text(space_to_json_text(space))
        paths[name] = str(path)
    bad = tmp_path / "asym.csv"
    bad.write_text("a,b\n0,1\n2,0\n")
    paths["asym"] = str(bad)
    return paths


class TestValidate:
    def test_ultrametric_space(self, files):
        result = run_cli("validate", files["S4"])
        assert result.returncode == 0
        assert json.loads(result.stdout)["is_ultrametric"] is True

    def test_structural_error_is_usage_error(self, files):
        result = run_cli("validate", files["asym"])
        assert result.returncode == 2
        assert "error:" in result.stderr

    def test_non_ultrametric_is_exit_one(self, tmp_path):
        path = tmp_path / "tri.csv"
        path.write_text("a,b,c\n0,1,2\n1,0,1\n2,1,0\n")
        result = run_cli("validate", str(path))
        assert result.returncode == 1
        report = json.loads(result.stdout)
        assert report["is_metric"] is True and report["is_ultrametric"] is False


class TestDiagnose:
    def test_star_space(self, files):
        result = run_cli("diagnose", files["S4"])
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["verdict"] == "US" and report["center"] == "s1"
        assert report["star"]["leaves"] == {"s2": "3", "s3": "1", "s4": "2"}

    def test_forbidden_space(self, files):
        result = run_cli("diagnose", files["X4"])
        assert result.returncode == 1
        report = json.loads(result.stdout)
        assert report["verdict"] == "FORBIDDEN"
        assert report["quad"] == ["x1", "x2", "x3", "x4"]
        assert report["model"] == "X4" and report["signature"] == [2, 2]

    def test_dot_flag_appends_graphviz(self, files):
        result = run_cli("diagnose", files["S4"], "--dot")
        assert result.returncode == 0
        assert "graph {" in result.stdout and '"s1" -- "s2";' in result.stdout


class TestStar:
    def test_auto_center(self, files):
        result = run_cli("star", files["S4"])
        assert result.returncode == 0
        assert json.loads(result.stdout)["center"] == "s1"

    def test_no_center_exists(self, files):
        result = run_cli("star", files["X4"])
        assert result.returncode == 1 and result.stdout == ""

    def test_named_center_that_fails_the_condition(self, files):
        result = run_cli("star", files["S4"], "--center", "s2")
        assert result.returncode == 1
        assert "not a star center" in result.stderr

    def test_unknown_center_is_usage_error(self, files):
        result = run_cli("star", files["S4"], "--center", "nope")
        assert result.returncode == 2


class TestScan:
    def test_clean_space_produces_empty_output(self, files):
        result = run_cli("scan", files["S4"])
        assert result.returncode == 0 and result.stdout == ""

    def test_forbidden_space(self, files):
        result = run_cli("scan", files["X4"])
        assert result.returncode == 1
        assert json.loads(result.stdout)["model"] == "X4"


class TestShift:
    def test_round_trip_through_files(self, files, tmp_path):
        shifted = run_cli("shift", files["S4"], "--delta", "1/2")
        assert shifted.returncode == 0
        mid = tmp_path / "mid.json"
        mid.write_text(shifted.stdout)
        back = run_cli("shift", str(mid), "--delta", "1/2", "--unshift")
        assert back.returncode == 0
        assert back.stdout == space_to_json_text(S4)

    def test_out_of_range_delta(self, files):
        result = run_cli("shift", files["S4"], "--delta", "1")
        assert result.returncode == 2


class TestWeaksim:
    def test_witness(self, files):
        result = run_cli("weaksim", files["S4"], files["S4x2"])
        assert result.returncode == 0
        witness = json.loads(result.stdout)
        assert witness["phi"] == {p: p for p in S4.points}
        assert witness["f"] == [["2", "1"], ["4", "2"], ["6", "3"]]

    def test_absence(self, files):
        result = run_cli("weaksim", files["X4"], files["Y4"])
        assert result.returncode == 1 and result.stdout == ""


class TestDplusAndGen:
    def test_dplus(self):
        result = run_cli("dplus", "1/2,1,2,3")
        assert result.returncode == 0
        space = json.loads(result.stdout)
        assert space["points"] == ["1/2", "1", "2", "3"]
        assert space["dist"][0][3] == "3"

    def test_dplus_rejects_duplicates(self):
        assert run_cli("dplus", "1,1").returncode == 2

    def test_gen_exhaustive_streams_every_space(self):
        result = run_cli("gen", "--n", "3", "--alphabet", "1,2")
        lines = result.stdout.splitlines()
        assert result.returncode == 0 and len(lines) == 5
        assert all(json.loads(line)["points"] == ["p1", "p2", "p3"] for line in lines)

    def test_gen_sample_respects_count_and_seed(self):
        result = run_cli(
            "gen", "--n", "4", "--alphabet", "1,2,3", "--mode", "sample",
            "--seed", "1", "--count", "3",
        )
        assert result.returncode == 0 and len(result.stdout.splitlines()) == 3

    def test_gen_cap_is_usage_error(self):
        assert run_cli("gen", "--n", "6", "--alphabet", "1").returncode == 2


class TestConjecture:
    def test_exhaustive_equidistant(self):
        result = run_cli(
            "conjecture", "--which", "equidistant", "--n", "4", "--alphabet", "1,2,3",
        )
        assert result.returncode == 0
        report = json.loads(result.stdout)
        assert report["status"] == "EXHAUSTED_HOLDS" and report["instances"] == 60
        assert "wall time" in result.stderr

    def test_sampled_k13(self):
        result = run_cli(
            "conjecture", "--which", "k13", "--n", "5", "--alphabet", "1,2,3",
            "--mode", "sample", "--seed", "3", "--count", "25",
        )
        assert result.returncode == 0
        assert json.loads(result.stdout)["status"] == "HOLDS_ON_SAMPLE"


class TestContract:
    def test_unknown_command_is_usage_error(self):
        assert run_cli("frobnicate").returncode == 2

    def test_missing_file_is_usage_error(self):
        assert run_cli("diagnose", "/nonexistent.json").returncode == 2

    def test_documented_commands_are_byte_deterministic(self, files):
        battery = [
            ("validate", files["S4"]),
            ("diagnose", files["S4"], "--dot"),
            ("diagnose", files["X4"]),
            ("star", files["S4"], "--dot"),
            ("scan", files["X4"]),
            ("shift", files["S4"], "--delta", "1/2"),
            ("weaksim", files["S4"], files["S4x2"]),
            ("dplus", "1/2,1,2,3"),
            ("gen", "--n", "3", "--alphabet", "1,2"),
            ("conjecture", "--which", "k112", "--n", "4", "--alphabet", "1,2"),
        ]
        for argv in battery:
            first = run_cli(*argv)
            second = run_cli(*argv)
            assert first.stdout == second.stdout, argv
            assert first.returncode == second.returncode, argv
