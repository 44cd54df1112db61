"""Command-line behavior: output text, files written, and exit codes
(0 success, 2 input problems, 3 unidentifiable fits, 1 transport errors)."""

import json
import subprocess
import sys

import pytest

from plmodel.cli import main
from plmodel.models import CiParams, evaluate, params_from_dict
from plmodel.report import registry_report


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def ci_csv(tmp_path, capsys):
    """A noisy CI dataset written by the synth command itself."""
    path = tmp_path / "meas.csv"
    code, out, err = _run(
        capsys,
        "synth",
        "--model", "ci", "--n", "2.9",
        "--freqs", "6.75,28",
        "--count", "120",
        "--sigma", "8.0",
        "--seed", "11",
        "--output", str(path),
    )
    assert code == 0, err
    return path


class TestSynth:
    _ARGS = (
        "synth", "--model", "ci", "--n", "2.0",
        "--freqs", "28", "--count", "5", "--sigma", "3.0", "--seed", "7",
    )

    def test_stdout_deterministic(self, capsys):
        code_a, out_a, _ = _run(capsys, *self._ARGS)
        code_b, out_b, _ = _run(capsys, *self._ARGS)
        assert code_a == code_b == 0
        assert out_a == out_b
        assert out_a.startswith("freq_ghz,distance_m,env,pol,pl_db,campaign\n")
        assert out_a.count("\n") == 6  # header + 5 rows

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "out.csv"
        code, out, _ = _run(capsys, *self._ARGS, "--output", str(path))
        assert code == 0
        assert out == f"wrote 5 samples to {path}\n"
        assert path.read_text().count("\n") == 6

    def test_file_matches_stdout(self, tmp_path, capsys):
        _, out, _ = _run(capsys, *self._ARGS)
        path = tmp_path / "out.csv"
        _run(capsys, *self._ARGS, "--output", str(path))
        assert path.read_text() == out

    def test_3gpp_generator_needs_no_params(self, capsys):
        code, out, _ = _run(
            capsys,
            "synth", "--model", "3gpp-inh-los",
            "--freqs", "28", "--count", "3",
        )
        assert code == 0
        assert out.count("\n") == 4

    def test_bad_freqs(self, capsys):
        code, _, err = _run(
            capsys, "synth", "--model", "ci", "--n", "2.0",
            "--freqs", "abc", "--count", "5",
        )
        assert code == 2
        assert "--freqs" in err

    def test_bad_d_range(self, capsys):
        code, _, err = _run(
            capsys, "synth", "--model", "ci", "--n", "2.0",
            "--freqs", "28", "--count", "5", "--d-range", "1,2,3",
        )
        assert code == 2
        assert "--d-range" in err

    def test_missing_param_rejected(self, capsys):
        code, _, err = _run(
            capsys, "synth", "--model", "ci", "--freqs", "28", "--count", "5"
        )
        assert code == 2
        assert "n" in err


class TestFit:
    def test_stdout_and_json_output(self, tmp_path, capsys, ci_csv):
        out_json = tmp_path / "fit.json"
        code, out, _ = _run(
            capsys,
            "fit", "--input", str(ci_csv), "--model", "ci",
            "--output", str(out_json),
        )
        assert code == 0
        assert "model: ci" in out
        assert "n_samples: 240" in out
        assert "sigma:" in out and "dB" in out
        flat = json.loads(out_json.read_text())
        assert flat["model"] == "ci"
        assert 2.0 < params_from_dict(flat).n < 4.0

    def test_env_band_filters(self, capsys, ci_csv):
        code, out, _ = _run(
            capsys,
            "fit", "--input", str(ci_csv), "--model", "ci",
            "--env", "los", "--band", "20,30",
        )
        assert code == 0
        assert "n_samples: 120" in out

    def test_unidentifiable_exit_3(self, capsys, ci_csv):
        code, _, err = _run(
            capsys,
            "fit", "--input", str(ci_csv), "--model", "abg", "--band", "27,29",
        )
        assert code == 3
        assert "gamma" in err

    def test_missing_file_exit_2(self, capsys):
        code, _, err = _run(capsys, "fit", "--input", "/no/such.csv", "--model", "ci")
        assert code == 2
        assert "error:" in err

    def test_malformed_band_exit_2(self, capsys, ci_csv):
        code, _, err = _run(
            capsys, "fit", "--input", str(ci_csv), "--model", "ci", "--band", "20"
        )
        assert code == 2
        assert "--band" in err

    def test_pin_f0_on_ci_exit_2(self, capsys, ci_csv):
        code, _, err = _run(
            capsys,
            "fit", "--input", str(ci_csv), "--model", "ci", "--pin-f0", "12",
        )
        assert code == 2
        assert "pin_f0" in err


class TestEval:
    def test_registry_form(self, capsys):
        code, out, _ = _run(
            capsys,
            "eval", "--registry", "ci:single_142:los:vv", "--f", "142", "--d", "20",
        )
        assert code == 0
        expected = float(evaluate(CiParams(1.8), 142.0, 20.0))
        assert out == f"{expected:.2f} dB\n"

    def test_params_form(self, capsys):
        code, out, _ = _run(
            capsys, "eval", "--model", "ci", "--n", "2.0", "--f", "28", "--d", "10"
        )
        assert code == 0
        assert out == "81.34 dB\n"

    def test_fi_without_frequency(self, capsys):
        code, out, _ = _run(
            capsys,
            "eval", "--model", "fi", "--alpha", "98.9", "--beta", "0.8",
            "--d", "39.2",
        )
        assert code == 0
        assert out == "111.65 dB\n"

    def test_both_sources_exit_2(self, capsys):
        code, _, err = _run(
            capsys,
            "eval", "--registry", "ci:single_142:los:vv",
            "--model", "ci", "--n", "2.0", "--f", "28", "--d", "10",
        )
        assert code == 2
        assert "exactly one" in err

    def test_unknown_registry_exit_2(self, capsys):
        code, _, err = _run(
            capsys, "eval", "--registry", "fi:fr3_7_24:los:vv", "--d", "10"
        )
        assert code == 2
        assert "no published entry" in err

    def test_short_distance_exit_2(self, capsys):
        code, _, err = _run(
            capsys, "eval", "--model", "ci", "--n", "2.0", "--f", "28", "--d", "0.5"
        )
        assert code == 2


class TestCompare:
    def test_outside_verdict(self, capsys, tmp_path):
        path = tmp_path / "low.csv"
        _run(
            capsys,
            "synth", "--model", "ci", "--n", "1.4", "--freqs", "28",
            "--count", "400", "--sigma", "3.0", "--seed", "13",
            "--output", str(path),
        )
        code, out, _ = _run(
            capsys, "compare", "--input", str(path), "--against", "3gpp-inh-los"
        )
        assert code == 0
        assert "verdict: OUTSIDE" in out
        assert "reference n: 1.73 (3gpp-inh-los)" in out
        assert "ci95(n): [" in out

    def test_inside_verdict(self, capsys, tmp_path):
        path = tmp_path / "match.csv"
        _run(
            capsys,
            "synth", "--model", "3gpp-inh-los", "--freqs", "28",
            "--count", "400", "--sigma", "3.0", "--seed", "13",
            "--output", str(path),
        )
        code, out, _ = _run(
            capsys, "compare", "--input", str(path), "--against", "3gpp-inh-los"
        )
        assert code == 0
        assert "verdict: INSIDE" in out

    def test_identities(self, capsys):
        code, out, _ = _run(capsys, "compare", "--identities")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 8
        for line in lines:
            assert ": OK (worst gap " in line
            assert line.endswith("m)")

    def test_requires_input_or_identities(self, capsys):
        code, _, err = _run(capsys, "compare", "--against", "3gpp-inh-los")
        assert code == 2
        assert "--input" in err


class TestReport:
    def test_registry_md_byte_stable(self, capsys):
        code, out, _ = _run(capsys, "report", "--registry", "table4")
        assert code == 0
        assert out == registry_report("table4", "md")
        assert out.startswith("|")

    def test_registry_csv_and_json(self, capsys):
        code, csv_out, _ = _run(
            capsys, "report", "--registry", "table4", "--format", "csv"
        )
        assert code == 0
        assert csv_out.count("\n") == 7  # header + 6 entries
        code, json_out, _ = _run(
            capsys, "report", "--registry", "table4", "--format", "json"
        )
        assert code == 0
        assert len(json.loads(json_out)["entries"]) == 6

    def test_fit_report_and_series(self, tmp_path, capsys, ci_csv):
        fit_json = tmp_path / "fit.json"
        _run(
            capsys,
            "fit", "--input", str(ci_csv), "--model", "ci",
            "--output", str(fit_json),
        )
        code, out, _ = _run(capsys, "report", "--fit", str(fit_json))
        assert code == 0
        assert "model: ci" in out
        code, series_out, _ = _run(
            capsys,
            "report", "--fit", str(fit_json), "--input", str(ci_csv),
            "--series", "--format", "json",
        )
        assert code == 0
        data = json.loads(series_out)
        assert "curve" in json.dumps(data)

    def test_output_file(self, tmp_path, capsys):
        path = tmp_path / "report.md"
        code, out, _ = _run(
            capsys, "report", "--registry", "table1", "--output", str(path)
        )
        assert code == 0
        assert out == ""
        assert path.read_text() == registry_report("table1", "md")

    def test_unknown_filter_exit_2(self, capsys):
        code, _, err = _run(capsys, "report", "--registry", "table9")
        assert code == 2

    def test_both_sources_exit_2(self, capsys, tmp_path):
        fit_json = tmp_path / "f.json"
        fit_json.write_text('{"model": "ci", "n": 2.0}')
        code, _, err = _run(
            capsys, "report", "--registry", "table1", "--fit", str(fit_json)
        )
        assert code == 2
        assert "exactly one" in err

    def test_bad_fit_json_exit_2(self, tmp_path, capsys):
        fit_json = tmp_path / "bad.json"
        fit_json.write_text("{not json")
        code, _, err = _run(capsys, "report", "--fit", str(fit_json))
        assert code == 2
        assert "bad fit JSON" in err


class TestPlumbing:
    def test_no_ansi_when_not_a_tty(self, capsys):
        _, out, _ = _run(capsys, "compare", "--identities")
        assert "\x1b[" not in out

    def test_unreachable_server_exit_1(self, capsys):
        code, _, err = _run(
            capsys,
            "--server", "http://127.0.0.1:9",
            "eval", "--registry", "ci:single_142:los:vv", "--f", "142", "--d", "20",
        )
        assert code == 1
        assert "error:" in err

    def test_console_script(self, tmp_path):
        proc = subprocess.run(
            [
                "plmodel", "eval",
                "--model", "ci", "--n", "2.0", "--f", "28", "--d", "10",
            ],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert proc.stdout == "81.34 dB\n"

    def test_module_help(self):
        proc = subprocess.run(
            [sys.executable, "-c", "from plmodel.cli import main; main(['--help'])"],
            capture_output=True,
            text=True,
            timeout=60,
        )
        assert proc.returncode == 0
        assert "fit" in proc.stdout and "serve" in proc.stdout
