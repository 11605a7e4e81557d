import json
import math

import numpy as np
import pytest

from walsh_spectra.cli import main

WHITE_NOISE = {"kind": "tvDMA", "ma": ["1"], "sigma": 1.0, "seed": 3}
CONSTANT_DAR = {"kind": "tvDAR", "ar": ["2", "1"], "seed": 5}
SINGULAR_DAR = {"kind": "tvDAR", "ar": ["1", "1"], "seed": 1}


def write_spec(tmp_path, payload, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def read_rows(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# tool=walsh-spectra")
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:]]
    return header, rows


def test_simulate_white_noise(tmp_path):
    spec = write_spec(tmp_path, WHITE_NOISE)
    out = tmp_path / "path.csv"
    assert main(["simulate", "--spec", spec, "--T", "8", "--out", str(out)]) == 0
    header, rows = read_rows(out)
    assert header == ["t", "u", "x_value"]
    assert len(rows) == 8
    assert [r[0] for r in rows] == [str(t) for t in range(8)]
    sidecar = json.loads((tmp_path / "path.csv.json").read_text())
    assert sidecar["T"] == 8
    assert sidecar["seed"] == 3
    assert len(sidecar["fingerprint"]) == 16


def test_simulate_reruns_byte_identical(tmp_path):
    spec = write_spec(tmp_path, {"kind": "tvDMA", "ma": ["1", "0.5*u"], "seed": 9})
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["simulate", "--spec", spec, "--T", "256", "--out", str(out1)]) == 0
    assert main(["simulate", "--spec", spec, "--T", "256", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert (tmp_path / "a.csv.json").read_bytes() == (tmp_path / "b.csv.json").read_bytes()


def test_simulate_preset_runs(tmp_path):
    out = tmp_path / "fig1.csv"
    code = main(["simulate", "--preset", "figure1", "--T", "4096", "--seed", "11", "--out", str(out)])
    assert code == 0
    _, rows = read_rows(out)
    assert len(rows) == 4096


def test_simulate_singular_block_exit_code(tmp_path, capsys):
    spec = write_spec(tmp_path, SINGULAR_DAR)
    out = tmp_path / "path.csv"
    assert main(["simulate", "--spec", spec, "--T", "64", "--out", str(out)]) == 3
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "singular-block"
    assert "block 0" in err["message"]


def test_bad_curve_exit_code(tmp_path, capsys):
    spec = write_spec(tmp_path, {"kind": "tvDMA", "ma": ["cos("], "seed": 0})
    assert main(["simulate", "--spec", spec, "--T", "8", "--out", str(tmp_path / "x.csv")]) == 2
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "config"


def test_bad_json_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["simulate", "--spec", str(path), "--T", "8", "--out", str(tmp_path / "x.csv")]) == 2


def test_missing_spec_exit_code(tmp_path):
    assert main(["simulate", "--T", "8", "--out", str(tmp_path / "x.csv")]) == 2


def test_bad_horizon_exit_code(tmp_path, capsys):
    spec = write_spec(tmp_path, WHITE_NOISE)
    assert main(["simulate", "--spec", spec, "--T", "48", "--out", str(tmp_path / "x.csv")]) == 2
    err = json.loads(capsys.readouterr().err.strip())
    assert "power of two" in err["message"]


def test_spectrum_preset_spot_values(tmp_path):
    out = tmp_path / "grid.csv"
    assert main([
        "spectrum", "--preset", "figure1", "--u-points", "5", "--m", "1", "--out", str(out),
    ]) == 0
    header, rows = read_rows(out)
    assert header == ["u", "x", "g"]
    by_key = {(r[0], r[1]): float(r[2]) for r in rows}
    a0 = -1.8 * math.cos(1.5 - math.cos(0.0))
    assert by_key[("0.0", "0.0")] == pytest.approx((a0 + 0.81) ** 2, abs=1e-9)
    assert by_key[("0.0", "0.5")] == pytest.approx((a0 - 0.81) ** 2, abs=1e-9)


def test_spectrum_figure2_resolves_quarter_cells(tmp_path):
    out = tmp_path / "grid2.csv"
    assert main([
        "spectrum", "--preset", "figure2", "--u-points", "3", "--m", "2", "--out", str(out),
    ]) == 0
    _, rows = read_rows(out)
    # at u = 0.5 the order-2 coefficient is 0.5, so all four quarter cells differ
    at_half = [float(r[2]) for r in rows if r[0] == "0.5"]
    assert len(at_half) == 4
    assert len(set(at_half)) == 4


def test_spectrum_fourier_sidecar(tmp_path):
    out = tmp_path / "grid.csv"
    four = tmp_path / "fourier.csv"
    assert main([
        "spectrum", "--preset", "figure1", "--u-points", "3", "--m", "1",
        "--out", str(out), "--fourier-out", str(four), "--lambda-points", "5",
    ]) == 0
    header, rows = read_rows(four)
    assert header == ["u", "lambda", "f"]
    assert len(rows) == 3 * 5


def test_convert_constant_dar(tmp_path):
    spec = write_spec(tmp_path, CONSTANT_DAR)
    out = tmp_path / "coef.csv"
    assert main(["convert", "--spec", spec, "--target", "dma", "--u-points", "4", "--out", str(out)]) == 0
    header, rows = read_rows(out)
    assert header == ["u", "j", "K_j"]
    for r in rows:
        expect = 2 / 3 if r[1] == "0" else -1 / 3
        assert float(r[2]) == pytest.approx(expect, abs=1e-12)


def test_convert_identity_for_dma_spec(tmp_path):
    spec = write_spec(tmp_path, {"kind": "tvDMA", "ma": ["u", "0.5"], "seed": 0})
    out = tmp_path / "coef.csv"
    assert main(["convert", "--spec", spec, "--target", "dma", "--u-points", "3", "--out", str(out)]) == 0
    _, rows = read_rows(out)
    values = {(r[0], r[1]): float(r[2]) for r in rows}
    assert values[("0.0", "0")] == 0.0
    assert values[("0.5", "0")] == 0.5
    assert values[("1.0", "1")] == 0.5


def test_convert_singular_exit_code(tmp_path, capsys):
    spec = write_spec(tmp_path, {"kind": "tvDMA", "ma": ["1", "1"], "seed": 0})
    out = tmp_path / "coef.csv"
    assert main(["convert", "--spec", spec, "--target", "dar", "--u-points", "3", "--out", str(out)]) == 3
    err = json.loads(capsys.readouterr().err.strip())
    assert err["error"] == "singular-polynomial"
    assert "u=0.0" in err["message"]


def test_verify_exact_constant_spec(tmp_path, capsys):
    spec = write_spec(tmp_path, {"kind": "tvDMA", "ma": ["1", "0.5"], "seed": 2})
    out = tmp_path / "report.json"
    code = main([
        "verify", "--spec", spec, "--mode", "frozen", "--T", "128,256",
        "--replicates", "2", "--out", str(out),
    ])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["exact"] is True
    assert report["passed"] is True
    assert "exactly zero" in capsys.readouterr().out


def test_verify_passes_at_generic_point(tmp_path):
    out = tmp_path / "report.json"
    code = main([
        "verify", "--preset", "figure1", "--mode", "frozen",
        "--T", "128,256,512,1024,2048", "--replicates", "5",
        "--u0", "0.3", "--out", str(out),
    ])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert -1.4 <= report["slope"] <= -0.6


def test_verify_flags_faster_than_first_order_decay(tmp_path):
    # at u0 = 0.5 the figure1 curve is critical, the decay is second order,
    # and the slope gate reports a verification failure (exit code 4)
    out = tmp_path / "report.json"
    code = main([
        "verify", "--preset", "figure1", "--mode", "frozen",
        "--T", "512,1024,2048,4096", "--replicates", "3",
        "--u0", "0.5", "--out", str(out),
    ])
    assert code == 4
    report = json.loads(out.read_text())
    assert report["passed"] is False
    assert report["slope"] < -1.6


def test_verify_conversion_mode(tmp_path):
    spec = write_spec(
        tmp_path,
        {"kind": "tvDARMA", "ar": ["1", "-0.2+0.5*u"], "ma": ["1", "0.25+0.3*u"], "seed": 6},
    )
    out = tmp_path / "report.json"
    code = main([
        "verify", "--spec", spec, "--mode", "conversion",
        "--T", "128,256,512,1024", "--replicates", "4", "--out", str(out),
    ])
    assert code == 0


def test_periodogram_constant_data_impulse(tmp_path):
    spec = write_spec(tmp_path, {"kind": "tvDMA", "ma": ["0"], "trend": "5", "seed": 0})
    out = tmp_path / "pgram.csv"
    assert main([
        "periodogram", "--spec", spec, "--T", "8", "--segments", "8", "--out", str(out),
    ]) == 0
    header, rows = read_rows(out)
    assert header == ["segment_u0", "x", "I"]
    values = {r[1]: float(r[2]) for r in rows}
    assert values["0.0"] == pytest.approx(8 * 25.0)  # N * mean**2
    for x, v in values.items():
        if x != "0.0":
            assert v == pytest.approx(0.0, abs=1e-12)


def test_periodogram_replicates_and_smoothing(tmp_path):
    spec = write_spec(tmp_path, WHITE_NOISE)
    out = tmp_path / "pgram.csv"
    assert main([
        "periodogram", "--spec", spec, "--T", "512", "--segments", "128",
        "--replicates", "20", "--smooth", "2", "--out", str(out),
    ]) == 0
    _, rows = read_rows(out)
    assert len(rows) == 4 * 128
    levels = np.array([float(r[2]) for r in rows])
    assert abs(np.mean(levels) - 1.0) < 0.15


def test_periodogram_rerun_byte_identical(tmp_path):
    spec = write_spec(tmp_path, WHITE_NOISE)
    args = ["periodogram", "--spec", spec, "--T", "256", "--segments", "64", "--replicates", "5"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_periodogram_segment_too_long(tmp_path, capsys):
    spec = write_spec(tmp_path, WHITE_NOISE)
    assert main([
        "periodogram", "--spec", spec, "--T", "64", "--segments", "128",
        "--out", str(tmp_path / "x.csv"),
    ]) == 2


def test_figures_exports_all_grids(tmp_path):
    outdir = tmp_path / "figs"
    assert main([
        "figures", "--out", str(outdir), "--u-points", "9", "--m", "2", "--lambda-points", "7",
    ]) == 0
    names = sorted(p.name for p in outdir.iterdir())
    assert names == [
        "figure1_dyadic.csv",
        "figure1_fourier.csv",
        "figure2_dyadic.csv",
        "figure2_fourier.csv",
    ]
    header, rows = read_rows(outdir / "figure2_dyadic.csv")
    assert header == ["u", "x", "g"]
    assert len(rows) == 9 * 4


def test_version_flag():
    assert main(["--version"]) == 0
