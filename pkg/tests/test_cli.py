"""End-to-end command-line tests: exit codes, JSON payloads, determinism."""

import json

import pytest

from hankelkit.cli import main


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_ok(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == 0, err
    assert err == ""
    return json.loads(out)


class TestDet:
    def test_flat(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": ["2", "1", "1", "1"]})
        payload = run_ok(capsys, ["det", path])
        assert payload == {"D": ["2", "1"], "Dprime": ["1", "1"]}

    def test_byte_determinism(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": ["1", "1/2", "1/3", "1/4"]})
        code1, out1, _ = run(capsys, ["det", path])
        code2, out2, _ = run(capsys, ["det", path])
        assert code1 == code2 == 0
        assert out1 == out2

    def test_empty_sequence_is_precondition_error(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": []})
        code, out, err = run(capsys, ["det", path])
        assert code == 3
        assert out == ""
        assert json.loads(err)["kind"]


class TestPoly:
    def test_default_depth(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": ["2", "1", "1", "1"]})
        payload = run_ok(capsys, ["poly", path])
        assert payload["P"][2] == {"coeffs": ["0", "-1", "1"]}
        assert payload["Q"][2] == {"coeffs": ["-1", "2"]}
        assert len(payload["P"]) == 3  # n = 0, 1, 2

    def test_max_n_flag(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": ["2", "1", "1", "1"]})
        payload = run_ok(capsys, ["poly", path, "--max-n", "1"])
        assert len(payload["P"]) == 2


class TestJacobi:
    def test_forward(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "s.json", {"sequence": ["1", "0", "1/2", "0"]}
        )
        payload = run_ok(capsys, ["jacobi", path])
        assert payload == {"a": ["0", "0"], "b": ["1", "1/2"]}

    def test_invert_roundtrip(self, tmp_path, capsys):
        forward_in = write_json(
            tmp_path, "s.json", {"sequence": ["2", "1", "1", "1"]}
        )
        coeffs = run_ok(capsys, ["jacobi", forward_in])
        invert_in = write_json(tmp_path, "j.json", coeffs)
        payload = run_ok(capsys, ["jacobi", invert_in, "--invert"])
        assert payload == {"sequence": ["2", "1", "1", "1"]}

    def test_not_quasi_definite_exit(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": ["1", "0", "0", "0"]})
        code, out, err = run(capsys, ["jacobi", path])
        assert code == 3
        assert json.loads(err)["kind"] == "not_quasi_definite"


class TestApprox:
    def test_extension(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": ["2", "1", "1", "1"]})
        payload = run_ok(capsys, ["approx", path, "--r", "1", "--len", "6"])
        assert payload == {"sequence": ["2", "1", "1/2", "1/4", "1/8", "1/16"]}

    def test_r_required(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": ["2", "1"]})
        code, _, _ = run(capsys, ["approx", path])
        assert code == 1

    def test_singular_minor_exit(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": ["0", "1", "1"]})
        code, _, err = run(capsys, ["approx", path, "--r", "1"])
        assert code == 3
        assert json.loads(err)["kind"] == "singular_leading_minor"


class TestRank:
    def test_finite_rank(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "s.json", {"sequence": ["1", "3", "9", "27", "81", "243"]}
        )
        payload = run_ok(capsys, ["rank", path])
        assert payload == {
            "verdict": "FiniteRank",
            "rank": 1,
            "horizon": 6,
            "recurrence": ["3"],
        }


class TestProfile:
    def test_structure(self, tmp_path, capsys):
        path = write_json(
            tmp_path,
            "s.json",
            {"sequence": ["1", "0", "0", "0", "1", "0", "0", "0"]},
        )
        payload = run_ok(capsys, ["profile", path])
        assert payload["full_degree_indices"] == [0, 1, 4]
        assert payload["gammas"] == [{"k": 1, "value": "-1"}]
        assert payload["anomalies"] == []


class TestSolve:
    def test_report_only(self, tmp_path, capsys):
        path = write_json(tmp_path, "t.json", {"target": ["2", "1"]})
        payload = run_ok(capsys, ["solve", path])
        assert payload["solvable"] is True
        assert "solution" not in payload

    def test_unsolvable_exit(self, tmp_path, capsys):
        path = write_json(tmp_path, "t.json", {"target": ["0", "1", "0"]})
        code, out, err = run(capsys, ["solve", path])
        assert code == 3
        error = json.loads(err)
        assert error["kind"] == "not_solvable"
        assert error["report"]["violation"]["gap"] == 2

    def test_construct_exact(self, tmp_path, capsys):
        path = write_json(tmp_path, "t.json", {"target": ["2", "1"]})
        payload = run_ok(capsys, ["solve", path, "--construct"])
        assert payload["mode"] == "exact"
        assert payload["solution"] == ["2", "0", "1/2"]
        assert payload["report"]["solvable"] is True

    def test_construct_roundtrip_through_det(self, tmp_path, capsys):
        t_path = write_json(tmp_path, "t.json", {"target": ["1", "-2", "3", "1/2"]})
        solved = run_ok(capsys, ["solve", t_path, "--construct"])
        assert solved["mode"] == "exact"
        s_path = write_json(tmp_path, "s.json", {"sequence": solved["solution"]})
        profile = run_ok(capsys, ["det", s_path])
        assert profile["D"] == ["1", "-2", "3", "1/2"]

    def test_construct_bigfloat(self, tmp_path, capsys):
        path = write_json(tmp_path, "t.json", {"target": ["1", "0", "-2"]})
        payload = run_ok(capsys, ["solve", path, "--construct"])
        assert payload["mode"] == "bigfloat"
        assert payload["precision_bits"] == 256

    def test_policy_flag_overrides_file(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "t.json", {"target": ["2", "1"], "policy": "seed:1"}
        )
        from_file = run_ok(capsys, ["solve", path, "--construct"])
        overridden = run_ok(
            capsys, ["solve", path, "--construct", "--policy", "zeros"]
        )
        assert overridden["solution"] == ["2", "0", "1/2"]
        assert from_file["solution"] != overridden["solution"]
        s_path = write_json(
            tmp_path, "s.json", {"sequence": from_file["solution"]}
        )
        profile = run_ok(capsys, ["det", s_path])
        assert profile["D"] == ["2", "1"]

    def test_bad_policy_is_parse_error(self, tmp_path, capsys):
        path = write_json(tmp_path, "t.json", {"target": ["2", "1"]})
        code, _, err = run(capsys, ["solve", path, "--construct", "--policy", "x"])
        assert code == 2
        assert json.loads(err)["kind"] == "parse_error"

    def test_precision_exhausted_exit(self, tmp_path, capsys):
        path = write_json(tmp_path, "t.json", {"target": ["1", "0", "-2"]})
        code, _, err = run(
            capsys,
            [
                "solve",
                path,
                "--construct",
                "--precision-bits",
                "64",
                "--tol",
                "1e-30",
            ],
        )
        assert code == 4
        assert json.loads(err)["kind"] == "precision_exhausted"


class TestMeasure:
    def test_two_atoms(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "s.json", {"sequence": ["2", "1", "1", "1", "1", "1"]}
        )
        payload = run_ok(capsys, ["measure", path])
        assert payload["r"] == 2
        assert len(payload["atoms"]) == 2
        assert payload["precision_bits"] == 256
        assert float(payload["residual"]) < 1e-20

    def test_non_psd_exit(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "s.json", {"sequence": ["1", "0", "-1", "0", "0", "0"]}
        )
        code, _, err = run(capsys, ["measure", path])
        assert code == 3
        assert json.loads(err)["kind"] == "not_psd_flat"

    def test_impossible_tolerance_exit(self, tmp_path, capsys):
        path = write_json(
            tmp_path, "s.json", {"sequence": ["2", "1", "1", "1", "1", "1"]}
        )
        code, _, err = run(capsys, ["measure", path, "--tol", "1e-200"])
        assert code == 4
        assert json.loads(err)["kind"] == "precision_exhausted"


class TestUsageAndParsing:
    def test_no_arguments(self, capsys):
        code, _, err = run(capsys, [])
        assert code == 1
        assert json.loads(err)["kind"] == "UsageError"

    def test_unknown_command(self, capsys):
        code, _, _ = run(capsys, ["frobnicate", "x.json"])
        assert code == 1

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["det", "/nonexistent/path.json"])
        assert code == 2
        assert json.loads(err)["kind"] == "parse_error"

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _, err = run(capsys, ["det", str(path)])
        assert code == 2

    def test_wrong_shape(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"values": ["1"]})
        code, _, err = run(capsys, ["det", path])
        assert code == 2

    def test_float_literal_rejected(self, tmp_path, capsys):
        path = write_json(tmp_path, "s.json", {"sequence": [1.5]})
        code, _, err = run(capsys, ["det", path])
        assert code == 2

    def test_precision_floor(self, tmp_path, capsys):
        path = write_json(tmp_path, "t.json", {"target": ["1", "0", "-2"]})
        code, _, _ = run(
            capsys, ["solve", path, "--construct", "--precision-bits", "4"]
        )
        assert code == 1
