import csv
import io
import json

import pytest

from cghz_toolkit.cli import main
from cghz_toolkit.core.utils import format_float

BALANCED = "0.7071067811865476"


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _ket_lines(text):
    return [line for line in text.splitlines() if line and not line.startswith("#")]


def test_run_balanced_pair(capsys):
    code, out, _ = _run(capsys, "run", "--m", "2", "--n", "2", "--alpha", BALANCED, "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["success_probability"] == pytest.approx(0.125, abs=1e-12)
    assert report["ok"] is True
    assert len(report["outcomes"]) == 16


def test_run_text_report(capsys):
    code, out, _ = _run(capsys, "run", "--m", "3", "--n", "2", "--alpha", "0.6")
    assert code == 0
    summary = dict(line.split(None, 1) for line in out.splitlines()[1:5])
    assert float(summary["success_probability"]) == pytest.approx(0.0288, abs=1e-12)
    assert int(summary["outcomes"]) == 64
    assert "FAILED" not in out


def test_run_complex_alpha(capsys):
    code, out, _ = _run(capsys, "run", "--m", "2", "--n", "2", "--alpha-re", "0.3", "--alpha-im", "0.4", "--format", "json")
    assert code == 0
    assert json.loads(out)["success_probability"] == pytest.approx(0.09375)


@pytest.mark.parametrize(
    "argv",
    [
        ["run", "--m", "2", "--n", "2", "--alpha", "1.0"],
        ["run", "--m", "2", "--n", "2", "--alpha", "0.0"],
        ["run", "--m", "2", "--n", "2", "--alpha", "1.5"],
        ["run", "--m", "1", "--n", "2", "--alpha", "0.6"],
        ["run", "--n", "2", "--alpha", "0.6"],
        ["run", "--m", "2", "--n", "2"],
        ["run", "--m", "2", "--n", "2", "--alpha", "0.6", "--alpha-re", "0.6"],
        ["sweep", "--alphas", ""],
        ["sweep", "--alphas", "0.5,1.2"],
    ],
)
def test_invalid_input_exits_2(capsys, argv):
    code, _, err = _run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--m", "two"])
    assert exc.value.code == 2


def test_cap_exits_3(capsys):
    code, _, _ = _run(capsys, "run", "--m", "4", "--n", "3", "--alpha", "0.6")
    assert code == 3
    code, _, _ = _run(capsys, "trace", "--m", "3", "--n", "3", "--alpha", "0.6")
    assert code == 3


def test_bad_cap_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("CGHZ_MAX_MN", "two")
    code, _, _ = _run(capsys, "run", "--m", "2", "--n", "2", "--alpha", "0.6")
    assert code == 2


def test_trace_hwp(capsys):
    code, out, _ = _run(capsys, "trace", "--m", "2", "--n", "2", "--alpha", "0.6", "--stage", "hwp")
    assert code == 0
    assert len(_ket_lines(out)) == 64
    assert all(" × |" in line for line in _ket_lines(out))


def test_trace_prepared_product_input(capsys):
    code, out, _ = _run(capsys, "trace", "--m", "2", "--n", "2", "--alpha", "1", "--stage", "prepared")
    assert code == 0
    assert "# copy 1 (4 kets)" in out
    assert "# copy 2 (4 kets)" in out


def test_trace_postselect_equal_magnitudes(capsys):
    code, out, _ = _run(capsys, "trace", "--m", "2", "--n", "2", "--alpha", BALANCED, "--stage", "postselect")
    assert code == 0
    lines = _ket_lines(out)
    assert len(lines) == 8
    assert len({line.split(" × ")[0] for line in lines}) == 1


def test_trace_is_deterministic(capsys):
    argv = ["trace", "--m", "3", "--n", "2", "--alpha", "0.3", "--stage", "measured"]
    _, first, _ = _run(capsys, *argv)
    _, second, _ = _run(capsys, *argv)
    assert first == second
    assert first.count("# pattern") == 64


def test_trace_final(capsys):
    code, out, _ = _run(capsys, "trace", "--m", "2", "--n", "2", "--alpha", "0.6", "--stage", "final")
    assert code == 0
    assert "corrections: none" in out
    assert len(_ket_lines(out)) == 2


def test_sweep_to_file_is_reproducible(capsys, tmp_path):
    out = tmp_path / "tables" / "sweep.csv"
    argv = ["sweep", "--m-values", "2", "--n-values", "2,3", "--alphas", "0.3,0.6", "--no-timing", "--out", str(out)]
    assert _run(capsys, *argv)[0] == 0
    first = out.read_bytes()
    assert _run(capsys, *argv)[0] == 0
    assert out.read_bytes() == first
    lines = first.decode().split("\n")
    assert lines[0] == "m,N,alpha,p_analytic,p_simulated,abs_error,min_fidelity,runtime_ms"
    assert len([line for line in lines if line]) == 5


def test_sweep_json_stdout(capsys):
    code, out, _ = _run(capsys, "sweep", "--m-values", "2", "--n-values", "2", "--alphas", "0.6", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["p_simulated"] == pytest.approx(0.1152)


def test_sweep_unwritable_path_exits_4(capsys, tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x", encoding="utf-8")
    code, _, _ = _run(capsys, "sweep", "--m-values", "2", "--n-values", "2", "--alphas", "0.6", "--out", str(blocker / "out.csv"))
    assert code == 4


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.yml"
    cfg.write_text("m: 2\nn: 2\nalpha: 0.6\nformat: json\n", encoding="utf-8")
    code, out, _ = _run(capsys, "run", "--config", str(cfg))
    assert code == 0
    assert json.loads(out)["success_probability"] == pytest.approx(0.1152)
    code, out, _ = _run(capsys, "run", "--config", str(cfg), "--alpha", BALANCED)
    assert json.loads(out)["success_probability"] == pytest.approx(0.125)


def test_sweep_config_file(capsys, tmp_path):
    cfg = tmp_path / "sweep.yml"
    cfg.write_text("m_values: [2]\nn_values: [2]\nalphas: [0.2, 0.4]\nno_timing: true\n", encoding="utf-8")
    code, out, _ = _run(capsys, "sweep", "--config", str(cfg))
    assert code == 0
    assert len(out.strip().splitlines()) == 3


def test_config_file_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.yml"
    cfg.write_text("colour: blue\n", encoding="utf-8")
    assert _run(capsys, "run", "--config", str(cfg))[0] == 2
    assert _run(capsys, "run", "--config", str(tmp_path / "missing.yml"))[0] == 2


def test_verify_quick(capsys):
    code, out, _ = _run(capsys, "verify", "--quick")
    assert code == 0
    assert out and all(line.startswith("PASS") for line in out.splitlines())


def test_verify_catches_a_wrong_pbs_convention(capsys):
    code, out, _ = _run(capsys, "verify", "--quick", "--pbs-reflection-phase", "45")
    assert code == 1
    assert "FAIL  m=N=2 post-selected state" in out
    assert "PASS  m=N=2 state after HWP layer" in out


@pytest.mark.slow
def test_default_sweep_grid(capsys):
    code, out, _ = _run(capsys, "sweep", "--no-timing")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2 * 2 * 25
    assert {(int(r["m"]), int(r["N"])) for r in rows} == {(2, 2), (2, 3), (3, 2), (3, 3)}
    for r in rows:
        m, n, alpha = int(r["m"]), int(r["N"]), float(r["alpha"])
        assert float(r["abs_error"]) <= 1e-9
        assert float(r["min_fidelity"]) >= 1 - 1e-9
        assert format_float(float(r["p_analytic"])) == r["p_analytic"]
        expected = alpha ** 2 * (1 - alpha ** 2) / 2 ** ((m - 1) * n - 1)
        assert float(r["p_analytic"]) == pytest.approx(expected, rel=1e-13)
    alphas = sorted({float(r["alpha"]) for r in rows})
    assert alphas == pytest.approx([k / 26 for k in range(1, 26)], abs=1e-15)


def test_trace_final_simulates_once(capsys, monkeypatch):
    from cghz_toolkit.core.services import ecp_service

    calls = []
    real = ecp_service.simulate_stages

    def counting(*args, **kwargs):
        calls.append(args)
        return real(*args, **kwargs)

    monkeypatch.setattr(ecp_service, "simulate_stages", counting)
    code, out, _ = _run(capsys, "trace", "--m", "2", "--n", "2", "--alpha", "0.6", "--stage", "final")
    assert code == 0
    assert len(calls) == 1
    assert "corrections: none" in out
