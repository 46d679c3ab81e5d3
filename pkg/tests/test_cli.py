import json

import numpy as np
import pytest

import fracspec as fs
from fracspec.cli import ingest_signal, read_signal_csv, run, write_signal_csv


def file_bytes(path):
    with open(path, "rb") as fh:
        return fh.read()


class TestIngest:
    def test_synthetic_gaussian(self):
        sig = ingest_signal('{"gaussian": {"width": 1}, "N": 1024, "T": 12}')
        assert sig.n == 1024
        assert np.isclose(sig.dt, 24.0 / 1023)
        assert np.isclose(sig.samples[512].real, np.exp(-sig.t_grid[512] ** 2 / 2))

    def test_csv_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(2)
        t = np.linspace(-1, 1, 64)
        vals = rng.normal(size=64) + 1j * rng.normal(size=64)
        path = tmp_path / "sig.csv"
        write_signal_csv(path, t, vals)
        sig = read_signal_csv(path)
        assert np.array_equal(sig.samples, vals)
        path2 = tmp_path / "sig2.csv"
        write_signal_csv(path2, sig.t_grid, sig.samples)
        assert file_bytes(path) == file_bytes(path2)

    def test_jittered_grid_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,re,im\n0.0,1.0,0.0\n0.1,1.0,0.0\n0.25,1.0,0.0\n")
        with pytest.raises(fs.NonUniformGrid):
            read_signal_csv(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        with pytest.raises(fs.MalformedCSV):
            read_signal_csv(path)


SYNTH = '{"gaussian": {"width": 1}, "N": 512, "T": 8}'


class TestCommands:
    def test_frst_zero_operator(self, tmp_path):
        out = tmp_path / "zero"
        code = run(["frst", "--alpha", "0", "--window", "gauss-unit",
                    "--input", SYNTH, "--x=-2:2:9", "--xi", "0.5:2:6",
                    "--output", str(out)])
        assert code == 0
        grid = fs.grid_from_csv(f"{out}.csv", f"{out}.meta.json")
        assert np.all(grid.values == 0)
        assert grid.meta["transform"] == "FRST"

    def test_frst_singular_angle_usage_error(self, tmp_path):
        code = run(["frst", "--alpha", "3.14159265", "--window", "gauss-unit",
                    "--input", SYNTH, "--output", str(tmp_path / "x")])
        assert code == 1

    def test_frft_writes_signal_csv(self, tmp_path):
        out = tmp_path / "f"
        code = run(["frft", "--alpha", "1.5707963267948966", "--input",
                    '{"gaussian": {"width": 1}, "N": 1024, "T": 12}',
                    "--xi=-4:4:81", "--output", str(out)])
        assert code == 0
        sig = read_signal_csv(f"{out}.csv")
        xi = sig.t_grid
        assert np.max(np.abs(sig.samples - np.exp(-xi ** 2 / 2))) < 1e-6

    def test_verify_te3_delta(self, tmp_path):
        out = tmp_path / "te3"
        code = run(["verify", "te3", "--alpha", "1.0472", "--window", "hermite1",
                    "--dist", '{"kind":"delta","terms":[[0,0,1.0]]}',
                    "--output", str(out)])
        assert code == 0
        rep = json.loads((tmp_path / "te3.report.json").read_text())
        assert rep["verdict"] == "pass"
        assert abs(np.mean(rep["fitted_exponent"]) + 0.5) < 0.05

    def test_verify_te1(self, tmp_path):
        out = tmp_path / "te1"
        code = run(["verify", "te1", "--alpha", "1.0472", "--window", "hermite1",
                    "--dist", '{"kind":"delta","terms":[[0,0,1.0]]}',
                    "--output", str(out)])
        assert code == 0

    def test_verify_not_applicable_exit_code(self, tmp_path):
        code = run(["verify", "rez1", "--alpha", "1.0472", "--window", "hermite1",
                    "--dist", '{"kind":"delta","terms":[[0,0,0.0]]}',
                    "--degree", "-1",
                    "--output", str(tmp_path / "na")])
        assert code == 4

    def test_admissibility_command(self, tmp_path):
        out = tmp_path / "adm"
        code = run(["admissibility", "--window", "mexican-hat",
                    "--output", str(out)])
        assert code == 0
        rep = json.loads((tmp_path / "adm.report.json").read_text())
        assert abs(rep["c_g"] - 1.0) < 1e-6

    def test_admissibility_divergent_maps_to_numerical_error(self, tmp_path, capsys):
        with pytest.raises(fs.DivergentAdmissibility):
            run(["admissibility", "--window", "hermite1", "--psi", "hermite1",
                 "--c2", "1.1547", "--output", str(tmp_path / "d")])

    def test_seminorm_command(self, tmp_path):
        out = tmp_path / "rho"
        code = run(["seminorm", "--window", "gauss", "--k", "1", "--p", "0",
                    "--output", str(out)])
        assert code == 0
        rep = json.loads((tmp_path / "rho.report.json").read_text())
        assert abs(rep["value"] - np.exp(-0.5)) < 1e-5

    def test_bridge_command(self, tmp_path):
        code = run(["bridge", "--alpha", "1.0471975511965976", "--window",
                    "hermite1", "--input",
                    '{"gaussian": {"width": 1}, "N": 1024, "T": 12}',
                    "--points=-2:2:4x0.5:4:4",
                    "--output", str(tmp_path / "br")])
        assert code == 0

    def test_invert_frst_with_psi_and_tolerance_gate(self, tmp_path):
        # admissible pair at alpha = pi/2 on a loose grid: report written;
        # an over-tight tolerance flips the exit code to 3
        args = ["invert", "--transform", "frst", "--alpha", "1.5707963267948966",
                "--window", "mexican-hat", "--psi", "modulated:dog:6:-1",
                "--input", SYNTH, "--x=-6:6:64", "--xi", "0.25:8:32",
                "--output", str(tmp_path / "inv")]
        assert run(args) == 0
        rep = json.loads((tmp_path / "inv.report.json").read_text())
        assert np.isfinite(rep["rel_l2"])
        assert run(args + ["--tolerance", "1e-12"]) == 3

    def test_invert_frwt(self, tmp_path):
        code = run(["invert", "--transform", "frwt", "--alpha", "1.5707963",
                    "--window", "mexican-hat", "--input", SYNTH,
                    "--x=-8:8:96", "--xi", "0.25:4:48",
                    "--output", str(tmp_path / "inv")])
        assert code == 0
        rep = json.loads((tmp_path / "inv.report.json").read_text())
        assert "rel_l2" in rep


class TestDeterminism:
    def test_identical_runs_byte_identical(self, tmp_path):
        args = ["frst", "--alpha", "1.0471975511965976", "--window", "hermite1",
                "--input", SYNTH, "--x=-4:4:33", "--xi", "0.5:4:12"]
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run(args + ["--output", str(out1)]) == 0
        assert run(args + ["--output", str(out2)]) == 0
        assert file_bytes(f"{out1}.csv") == file_bytes(f"{out2}.csv")
        assert file_bytes(f"{out1}.meta.json") == file_bytes(f"{out2}.meta.json")

    def test_verify_reports_byte_identical(self, tmp_path):
        args = ["verify", "rez1", "--alpha", "1.0472", "--window", "hermite1",
                "--dist", '{"kind":"delta","terms":[[0,0,1.0]]}']
        assert run(args + ["--output", str(tmp_path / "r1")]) == 0
        assert run(args + ["--output", str(tmp_path / "r2")]) == 0
        assert (file_bytes(tmp_path / "r1.report.json")
                == file_bytes(tmp_path / "r2.report.json"))
