import io
import json

import numpy as np
import pandas as pd
import pytest

from xtele.cli import main
from xtele.core.constants import CHUNK_SIZE, GAP_BOUND, SWEEP_COLUMNS
from xtele.example.examples import example_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestAnalyze:
    def test_werner(self, capsys):
        code, out, _ = run(capsys, "analyze", example_path("werner_0.8"))
        assert code == 0
        report = json.loads(out)
        assert report["kind"] == "x"
        assert report["m_value"] == pytest.approx(1.28, abs=1e-12)
        assert report["f2"] == pytest.approx(0.9, abs=1e-12)
        assert report["violates_chsh"] is True
        assert report["ties"] == []

    def test_maximally_mixed_is_classical(self, capsys):
        code, out, _ = run(capsys, "analyze", example_path("maximally_mixed"))
        report = json.loads(out)
        assert code == 0
        assert not any(report[key] for key in ("entangled", "violates_chsh", "nonclassical_teleport"))

    def test_dense_state(self, capsys):
        code, out, _ = run(capsys, "analyze", example_path("hadamard_rotated_bell"), "--basis", "standard")
        report = json.loads(out)
        assert code == 0
        assert report["kind"] == "dense"
        assert report["f1"] == pytest.approx(1, abs=1e-10)
        assert report["f2"] == pytest.approx(2 / 3, abs=1e-12)
        assert "nonclassical_teleport" in report["ties"]

    def test_invalid_coherence(self, capsys):
        code, out, err = run(capsys, "analyze", example_path("invalid_coherence"))
        assert code == 3
        assert out == ""
        assert err.startswith("CoherenceBoundViolated:")
        assert len(err.strip().splitlines()) == 1

    def test_non_finite_coherence(self, capsys, tmp_path):
        fname = tmp_path / "nan.json"
        fname.write_text(
            '{"type": "x", "a": 0.25, "b": 0.25, "c": 0.25, "d": 0.25, '
            '"w": {"re": NaN, "im": 0.0}, "z": {"re": 0.0, "im": 0.0}}'
        )
        code, out, err = run(capsys, "analyze", str(fname))
        assert code == 3
        assert out == ""
        assert err.startswith("CoherenceBoundViolated:")

    def test_malformed_json(self, capsys, tmp_path):
        fname = tmp_path / "broken.json"
        fname.write_text('{"type": "x", "a": ')
        code, _, err = run(capsys, "analyze", str(fname))
        assert code == 2
        assert err.startswith("StateFileError:")

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "analyze", str(tmp_path / "nowhere.json"))
        assert code == 4
        assert err.startswith("IOError:")


class TestSweep:
    def test_werner_thresholds(self, capsys):
        code, out, _ = run(capsys, "sweep", "--family", "werner", "--steps", "101")
        assert code == 0
        assert out.splitlines()[0] == ",".join(SWEEP_COLUMNS)
        frame = pd.read_csv(io.StringIO(out))
        assert len(frame) == 101
        assert frame.loc[33, "concurrence"] == 0
        assert frame.loc[34, "concurrence"] > 0
        assert frame.loc[70, "violates_chsh"] == 0
        assert frame.loc[71, "violates_chsh"] == 1
        np.testing.assert_allclose(frame["f1"], frame["f2"], atol=1e-11)

    def test_two_steps(self, capsys):
        code, out, _ = run(capsys, "sweep", "--family", "bell", "--from", "0", "--to", "1", "--steps", "2")
        assert code == 0
        assert len(out.strip().splitlines()) == 3

    def test_output_file(self, capsys, tmp_path):
        fname = tmp_path / "gap.csv"
        code, out, _ = run(capsys, "sweep", "--family", "extremal-gap", "--steps", "11", "-o", str(fname))
        assert code == 0
        assert out == ""
        frame = pd.read_csv(fname)
        assert frame["gap"].iloc[-1] == pytest.approx(GAP_BOUND, abs=1e-11)
        assert b"\r\n" not in fname.read_bytes()

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "--family", "werner", "-o", str(tmp_path / "missing" / "out.csv"))
        assert code == 4
        assert err.startswith("IOError:")

    def test_parameter_out_of_range(self, capsys):
        code, _, err = run(capsys, "sweep", "--family", "extremal-gap", "--to", "0.5")
        assert code == 3
        assert err.startswith("ParamOutOfRange:")

    def test_family_is_required(self):
        with pytest.raises(SystemExit):
            main(["sweep"])


class TestTeleport:
    def test_extremal_gap_pauli(self, capsys):
        code, out, _ = run(capsys, "teleport", example_path("extremal_gap_w"))
        report = json.loads(out)
        assert code == 0
        assert report["oracle_fidelity"] == pytest.approx(5 / 9, abs=1e-9)
        assert report["closed_form_fidelity"] == pytest.approx(5 / 9, abs=1e-12)
        assert report["abs_difference"] <= 1e-9

    def test_hadamard_rotated_bell(self, capsys):
        _, out, _ = run(capsys, "teleport", example_path("hadamard_rotated_bell"), "--corrections", "optimal", "--restarts", "4")
        assert json.loads(out)["oracle_fidelity"] == pytest.approx(1, abs=1e-4)
        _, out, _ = run(capsys, "teleport", example_path("hadamard_rotated_bell"))
        assert json.loads(out)["oracle_fidelity"] == pytest.approx(2 / 3, abs=1e-9)

    @pytest.mark.parametrize("corrections", ["pauli", "optimal"])
    def test_maximally_mixed(self, capsys, corrections):
        _, out, _ = run(
            capsys, "teleport", example_path("maximally_mixed"), "--corrections", corrections, "--restarts", "2"
        )
        assert json.loads(out)["oracle_fidelity"] == pytest.approx(0.5, abs=1e-12)

    def test_monte_carlo_quadrature(self, capsys):
        _, out, _ = run(capsys, "teleport", example_path("werner_0.8"), "--quadrature", "mc", "--mc-n", "20000")
        report = json.loads(out)
        assert report["standard_error"] > 0
        assert abs(report["oracle_fidelity"] - 0.9) < 5 * report["standard_error"]


class TestCampaigns:
    def test_ensemble(self, capsys):
        code, out, err = run(capsys, "ensemble", "--samples", "2000", "--seed", "1")
        report = json.loads(out)
        assert code == 0
        assert report["sample_count"] == 2000
        assert report["p_b"] <= report["p_t"] <= report["p_e"]
        assert "required" in err

    @pytest.mark.parametrize("prop", ["1", "vw"])
    def test_verify(self, capsys, prop):
        code, out, _ = run(capsys, "verify", "--prop", prop, "--samples", "2000")
        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_verify_prop2_refined(self, capsys):
        code, out, _ = run(capsys, "verify", "--prop", "2", "--samples", "200", "--refine")
        report = json.loads(out)
        assert code == 0
        assert GAP_BOUND - 1e-6 <= report["extremal_value"] <= GAP_BOUND + 1e-10

    @pytest.mark.parametrize("argv", [["ensemble"], ["verify", "--prop", "vw"], ["verify", "--prop", "2", "--refine"]])
    def test_output_does_not_depend_on_threads(self, capsys, argv):
        argv = [*argv, "--samples", str(CHUNK_SIZE + 1000), "--seed", "4"]
        _, serial, _ = run(capsys, "--threads", "1", *argv)
        _, parallel, _ = run(capsys, "--threads", "3", *argv)
        assert serial == parallel

    def test_threads_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("XTELE_THREADS", "2")
        code, out, _ = run(capsys, "ensemble", "--samples", "2000", "--seed", "1")
        assert code == 0
        monkeypatch.setenv("XTELE_THREADS", "many")
        code, out, err = run(capsys, "ensemble", "--samples", "2000", "--seed", "1")
        assert code == 3
        assert out == ""
        assert err.startswith("ParamOutOfRange:")
