import csv
import io
import math
import time

import numpy as np
import pytest

from resdil import cli, rates
from resdil.errors import UnknownFigure


def parse(text):
    meta = [line[2:] for line in text.splitlines() if line.startswith("#")]
    body = [line for line in text.splitlines() if not line.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(body))))
    header, data = rows[0], rows[1:]
    cols = {name: np.array([float(r[i]) if r[i] not in ("nan", "") else math.nan for r in data])
            if name != "winner" else [r[i] for r in data] for i, name in enumerate(header)}
    return meta, header, cols


@pytest.fixture(scope="module")
def fig2_text():
    return cli.run_figure("fig2")


def test_fig2_rhs_constant(fig2_text):
    meta, header, cols = parse(fig2_text)
    assert header == ["alpha", "lhs", "rhs"]
    assert len(cols["alpha"]) == 200 and cols["alpha"][0] > 0
    assert np.all(np.abs(cols["rhs"] - 0.39912396330714390) < 1e-11)
    assert np.all(cols["lhs"][:-1] > cols["rhs"][:-1])
    assert abs(cols["lhs"][-1] - cols["rhs"][-1]) < 1e-11
    assert "lambda=0.5" in meta and "grid=200" in meta


def test_fig2_metadata_lines(fig2_text):
    lines = fig2_text.splitlines()
    assert lines[0] == f"# resdil {cli.__version__}"
    config_lines = lines[1:6]
    assert config_lines == sorted(config_lines) and "# command=figure fig2" in config_lines


def test_fig3_pure_maximum():
    _, header, cols = parse(cli.run_figure("fig3"))
    assert header == ["alpha", "pure", "mixed", "rhs"]
    assert abs(np.nanmax(cols["pure"]) - 0.15) < 0.01
    assert abs(cols["alpha"][np.nanargmax(cols["pure"])] - 0.34) < 0.02
    assert np.allclose(cols["rhs"], 0.128264020555749, atol=1e-11)


def test_figqec_qec_dominates():
    _, header, cols = parse(cli.run_figure("figQEC"))
    assert header == ["p", "qec", "dilution", "nothing"]
    assert np.all(cols["qec"] >= cols["dilution"] - 1e-12)


def test_fig4_argmax():
    meta, _, cols = parse(cli.run_figure("fig4"))
    assert abs(cols["q"][np.nanargmax(cols["lhs"])] - 0.85) < 0.01
    q_max = float(next(m for m in meta if m.startswith("q_max=")).split("=")[1])
    assert abs(q_max - 0.8502659) < 1e-6


def test_figs2_block_rates():
    _, header, cols = parse(cli.run_figure("figS2", grid=20))
    assert header == ["alpha", "diluted", "singlet"]
    assert np.allclose(cols["singlet"], 2 - 1.2687964645154587, atol=1e-11)
    assert cols["diluted"][0] > cols["singlet"][0]


def test_every_figure_is_fast():
    for name in cli.FIGURES:
        start = time.perf_counter()
        cli.run_figure(name)
        assert time.perf_counter() - start < 60, name


def test_byte_identical_reruns(fig2_text):
    assert cli.run_figure("fig2") == fig2_text
    a = cli.run_pauli_compare(cli.resolve_config("pauli-compare", "", {"p": (0.8, 0.05, 0.1, 0.05)}))[0]
    b = cli.run_pauli_compare(cli.resolve_config("pauli-compare", "", {"p": (0.8, 0.05, 0.1, 0.05)}))[0]
    assert a == b


def test_unknown_figure():
    with pytest.raises(UnknownFigure):
        cli.run_figure("fig9")


# configuration ---------------------------------------------------------------


def test_parse_value():
    assert cli.parse_value("grid", "50") == 50
    assert cli.parse_value("alpha-range", "0.1,0.5") == (0.1, 0.5)
    assert cli.parse_value("lambda", "0.25") == 0.25
    with pytest.raises(ValueError):
        cli.parse_value("alpha-range", "0.5")
    with pytest.raises(ValueError):
        cli.parse_value("grid", "many")


def test_config_precedence(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\nlambda = 0.3\ngrid=40\nalpha-range=0.1,0.5\n")
    cfg = cli.resolve_config("figure", "fig2", {"lambda": 0.7}, str(path))
    assert cfg.get("lambda") == 0.7
    assert cfg.grid_points == 40
    assert cfg.get("alpha-range") == (0.1, 0.5)
    cfg = cli.resolve_config("figure", "fig2", {}, str(path))
    assert cfg.get("lambda") == 0.3
    cfg = cli.resolve_config("figure", "fig2", {})
    assert cfg.get("lambda") == 0.5 and cfg.grid_points == 200 and cfg.seed == 0


def test_config_file_rejects_bad_lines(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("lambda 0.3\n")
    with pytest.raises(ValueError):
        cli.read_config_file(str(path))


def test_run_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig("sweep thermal", {}, None, 1, 0)
    with pytest.raises(ValueError):
        cli.RunConfig("sweep thermal", {"q-range": (0.9, 0.1)}, None, 10, 0)


# sweeps ----------------------------------------------------------------------


def test_thermal_sweep_argmax():
    _, res = cli.run_sweep("thermal")
    assert abs(res.argmax_param - 0.85) < 0.01


def test_constant_sweep_tie_break():
    _, res = cli.run_sweep("constant", grid=11)
    assert res.argmax_param == 0.0


def test_reversed_range_rejected():
    with pytest.raises(ValueError):
        cli.run_sweep("thermal", **{"q-range": (1.0, 0.0)})


def test_entanglement_sweep_skips_open_endpoint():
    text, res = cli.run_sweep("entanglement", grid=10)
    assert res.points[0].parameter > 0
    assert abs(res.points[-1].lhs - res.points[-1].rhs) < 1e-9
    assert text.count("\n") == len(res.points) + len(text.split("alpha,lhs,rhs")[0].splitlines()) + 1


def test_purity_sweep_increasing():
    _, res = cli.run_sweep("purity", grid=30, p=0.5)
    assert np.all(np.diff([pt.lhs for pt in res.points]) > 0)


# main ------------------------------------------------------------------------


def test_main_writes_out_file(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    assert cli.main(["figure", "fig2", "--grid", "20", "--out", str(out)]) == cli.EXIT_OK
    assert capsys.readouterr().out == ""
    _, _, cols = parse(out.read_text())
    assert len(cols["alpha"]) == 20


def test_main_stdout(capsys):
    assert cli.main(["sweep", "entanglement", "--lambda", "0.5", "--grid", "5"]) == 0
    assert "alpha,lhs,rhs" in capsys.readouterr().out


def test_main_pauli_compare(capsys):
    assert cli.main(["pauli-compare", "--p", "0.9,0,0,0.1"]) == 0
    _, header, cols = parse(capsys.readouterr().out)
    assert cols["winner"] == ["qec"]
    assert abs(cols["qec"][0] - 0.815739406660) < 1e-11


def test_exit_code_validation(capsys):
    assert cli.main(["figure", "fig9"]) == cli.EXIT_VALIDATION
    assert cli.main(["sweep", "thermal", "--q-range", "0.9,0.1"]) == cli.EXIT_VALIDATION
    assert cli.main(["pauli-compare", "--p", "0.5,0.5"]) == cli.EXIT_VALIDATION
    assert cli.main(["figure", "fig2", "--lambda", "2"]) == cli.EXIT_VALIDATION
    assert cli.main(["no-such-command"]) == cli.EXIT_VALIDATION


def test_exit_code_numerical(capsys):
    # the Gibbs excited weight underflows, so every q > 0 has an infinite denominator
    assert cli.main(["sweep", "thermal", "--T", "0.01", "--q-range", "0.5,1", "--grid", "3"]) == cli.EXIT_NUMERICAL


def test_exit_code_io(tmp_path, capsys):
    assert cli.main(["figure", "fig2", "--config", str(tmp_path / "missing.cfg")]) == cli.EXIT_IO
    bad = tmp_path / "no" / "such" / "dir" / "out.csv"
    assert cli.main(["figure", "fig2", "--grid", "5", "--out", str(bad)]) == cli.EXIT_IO


def test_version(capsys):
    assert cli.main(["--version"]) == 0


# selftest --------------------------------------------------------------------


def test_selftest_passes():
    report = cli.run_selftest()
    assert report.passed, report.failures()
    counts = report.counts()
    assert set(counts) == {"linalg", "states", "channels", "functionals", "rates", "dilution", "qec"}
    assert all(ok == total for ok, total in counts.values())


def test_selftest_reports_corrupted_tolerance():
    report = cli.run_selftest(tolerance_overrides={"rates.closed_form_vs_simulation": -1.0})
    assert not report.passed
    assert report.failures() == ["rates.closed_form_vs_simulation"]
    assert "FAIL rates.closed_form_vs_simulation" in report.render()
    assert "rates: 1/2 passed" in report.render()


def test_selftest_rejects_unknown_override():
    with pytest.raises(KeyError):
        cli.run_selftest(tolerance_overrides={"rates.nope": 1.0})


def test_main_selftest(capsys):
    assert cli.main(["selftest"]) == cli.EXIT_OK
    assert "qec: 3/3 passed" in capsys.readouterr().out


def test_safe_maps_degenerate_to_nan():
    assert math.isnan(cli._safe(rates.coherence_rate, np.eye(2) / 2, rates.ch.amplitude_damping(0.5)))
