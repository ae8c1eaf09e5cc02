import json

import numpy as np
import pytest

from heisenheat import cli
from heisenheat.kernels import FieldSample, GridAxis, GridSpec, KernelParams, evaluate_on_grid


def run(argv):
    return cli.main(argv)


class TestEval:
    def test_s_zero_all_ones(self, tmp_path):
        out = tmp_path / "flat.json"
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "0", "--tau", "1", "--gamma", "0",
                "--n", "1", "--axis", "alpha:-1:1:3", "--axis", "beta:0:0:1",
                "--output", str(out), "--format", "json",
            ]
        )
        assert code == 0
        sample = FieldSample.from_json(out)
        assert np.all(sample.values == 1.0)

    def test_tau_zero_gaussian_column(self, tmp_path):
        out = tmp_path / "gauss.json"
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "1", "--tau", "0",
                "--axis", "alpha:-2:2:5", "--axis", "beta:0:0:1",
                "--output", str(out),
            ]
        )
        assert code == 0
        sample = FieldSample.from_json(out)
        alphas = np.linspace(-2, 2, 5)
        assert np.allclose(sample.values.real, np.exp(-alphas**2 / 4), rtol=1e-14)

    def test_json_round_trip_bitwise(self, tmp_path):
        out = tmp_path / "rt.json"
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "0.8", "--tau", "0.9",
                "--gamma", "0.5+0.25i", "--axis", "alpha:-1:1:4", "--axis", "beta:-1:1:3",
                "--output", str(out),
            ]
        )
        assert code == 0
        loaded = FieldSample.from_json(out)
        p = KernelParams(s=0.8, tau=0.9, gamma=0.5 + 0.25j, n=1)
        grid = GridSpec((GridAxis("alpha", -1, 1, 4), GridAxis("beta", -1, 1, 3)))
        direct = evaluate_on_grid("rho-hat", p, grid)
        assert np.array_equal(loaded.values, direct.values)

    def test_deterministic_output_bytes(self, tmp_path):
        args = [
            "eval", "--kernel", "rho-tilde", "--s", "1.2", "--tau", "-0.7",
            "--gamma", "i", "--axis", "x:-1:1:5", "--axis", "y:-1:1:5",
        ]
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        assert run(args + ["--output", str(out1)]) == 0
        assert run(args + ["--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_csv_format(self, tmp_path):
        out = tmp_path / "grid.csv"
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "1", "--tau", "0.5",
                "--axis", "alpha:-1:1:3", "--axis", "beta:0:1:2",
                "--output", str(out), "--format", "csv",
            ]
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "alpha,beta,re,im"
        assert len(lines) == 1 + 6

    def test_boxb_q_flag(self, tmp_path):
        out = tmp_path / "boxb.json"
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "1", "--tau", "1", "--n", "2",
                "--boxb-q", "0", "--axis", "alpha1:0:0:1", "--axis", "beta1:0:0:1",
                "--output", str(out),
            ]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["params"]["gamma"] == [2.0, 0.0]

    def test_axis_mismatch_exit_2(self, tmp_path):
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "1", "--tau", "1",
                "--axis", "x:-1:1:3", "--output", str(tmp_path / "x.json"),
            ]
        )
        assert code == 2

    def test_gamma_grammar(self):
        assert cli._parse_gamma("1.5") == 1.5
        assert cli._parse_gamma("i") == 1j
        assert cli._parse_gamma("-i") == -1j
        assert cli._parse_gamma("1+i") == 1 + 1j
        assert cli._parse_gamma("2i") == 2j
        assert cli._parse_gamma("0.5-0.3i") == 0.5 - 0.3j
        with pytest.raises(cli.CliError):
            cli._parse_gamma("one plus i")

    def test_bad_gamma_exit_2(self, tmp_path):
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "1", "--tau", "1",
                "--gamma", "wat", "--axis", "alpha:0:1:2",
                "--output", str(tmp_path / "x.json"),
            ]
        )
        assert code == 2

    def test_gamma_and_boxb_conflict_exit_2(self, tmp_path):
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "1", "--tau", "1",
                "--gamma", "1", "--boxb-q", "0", "--axis", "alpha:0:1:2",
                "--output", str(tmp_path / "x.json"),
            ]
        )
        assert code == 2

    def test_bad_axis_exit_2(self, tmp_path):
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "1", "--tau", "1",
                "--axis", "alpha:0:1", "--output", str(tmp_path / "x.json"),
            ]
        )
        assert code == 2

    def test_unwritable_output_exit_3(self, tmp_path):
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "1", "--tau", "1",
                "--axis", "alpha:0:1:2", "--axis", "beta:0:0:1",
                "--output", str(tmp_path / "no-such-dir" / "x.json"),
            ]
        )
        assert code == 3
        assert not (tmp_path / "no-such-dir").exists()

    def test_output_dir_env_default(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
        code = run(
            [
                "eval", "--kernel", "rho-hat", "--s", "0", "--tau", "1",
                "--axis", "alpha:0:0:1", "--axis", "beta:0:0:1",
            ]
        )
        assert code == 0
        assert (tmp_path / "rho-hat.json").exists()


def _write_gaussian_field(path, count=61, extent=5.0):
    axes = (GridAxis("x", -extent, extent, count), GridAxis("y", -extent, extent, count))
    grid = GridSpec(axes)
    coords = grid.coordinates()
    values = np.exp(-(coords["x"] ** 2) - coords["y"] ** 2).astype(complex)
    FieldSample(grid=grid, values=values, kernel="test-gaussian").to_json(path)
    return grid


class TestApply:
    def test_zero_input_gives_zero(self, tmp_path):
        axes = (GridAxis("x", -3, 3, 11), GridAxis("y", -3, 3, 11))
        grid = GridSpec(axes)
        FieldSample(grid=grid, values=np.zeros(grid.size, complex)).to_json(tmp_path / "z.json")
        out = tmp_path / "out.json"
        code = run(
            [
                "apply", "--input", str(tmp_path / "z.json"), "--s", "0.5", "--tau", "1",
                "--axis", "x:-1:1:3", "--axis", "y:-1:1:3", "--output", str(out),
            ]
        )
        assert code == 0
        assert np.all(FieldSample.from_json(out).values == 0.0)

    def test_small_s_recovers_input(self, tmp_path):
        # grid spacing 0.04 resolves the s = 0.02 kernel (width ~0.1), so the
        # remaining error is the O(s) initial-condition defect
        _write_gaussian_field(tmp_path / "f.json", count=201, extent=4.0)
        out = tmp_path / "out.json"
        code = run(
            [
                "apply", "--input", str(tmp_path / "f.json"), "--s", "0.02", "--tau", "1",
                "--axis", "x:-0.5:0.5:3", "--axis", "y:-0.5:0.5:3", "--output", str(out),
            ]
        )
        assert code == 0
        got = FieldSample.from_json(out)
        coords = got.grid.coordinates()
        f_exact = np.exp(-(coords["x"] ** 2) - coords["y"] ** 2)
        assert np.max(np.abs(got.values - f_exact)) < 5e-2

    def test_two_steps_compose(self, tmp_path):
        _write_gaussian_field(tmp_path / "f.json", count=81, extent=6.0)
        mid, once, twice = tmp_path / "mid.json", tmp_path / "once.json", tmp_path / "twice.json"
        # apply(s=0.6) in one shot
        assert run(
            [
                "apply", "--input", str(tmp_path / "f.json"), "--s", "0.6", "--tau", "0.5",
                "--axis", "x:-0.8:0.8:3", "--axis", "y:-0.8:0.8:3", "--output", str(once),
            ]
        ) == 0
        # apply(s=0.3) twice; intermediate grid must cover the mass
        assert run(
            [
                "apply", "--input", str(tmp_path / "f.json"), "--s", "0.3", "--tau", "0.5",
                "--axis", "x:-6:6:81", "--axis", "y:-6:6:81", "--output", str(mid),
            ]
        ) == 0
        assert run(
            [
                "apply", "--input", str(mid), "--s", "0.3", "--tau", "0.5",
                "--axis", "x:-0.8:0.8:3", "--axis", "y:-0.8:0.8:3", "--output", str(twice),
            ]
        ) == 0
        a = FieldSample.from_json(once).values
        b = FieldSample.from_json(twice).values
        assert np.max(np.abs(a - b)) < 5e-3

    def test_csv_input_matches_json_input(self, tmp_path):
        axes = (GridAxis("x", -3, 3, 31), GridAxis("y", -3, 3, 31))
        grid = GridSpec(axes)
        coords = grid.coordinates()
        values = np.exp(-(coords["x"] ** 2) - coords["y"] ** 2).astype(complex)
        sample = FieldSample(grid=grid, values=values)
        sample.to_json(tmp_path / "f.json")
        sample.to_csv(tmp_path / "f.csv")
        outs = {}
        for ext in ("json", "csv"):
            out = tmp_path / f"out_{ext}.json"
            assert run(
                [
                    "apply", "--input", str(tmp_path / f"f.{ext}"), "--s", "0.3",
                    "--tau", "1", "--axis", "x:-1:1:3", "--axis", "y:-1:1:3",
                    "--output", str(out),
                ]
            ) == 0
            outs[ext] = FieldSample.from_json(out).values
        assert np.array_equal(outs["json"], outs["csv"])

    def test_grid_mismatch_exit_2(self, tmp_path):
        axes = (GridAxis("alpha", -1, 1, 4), GridAxis("beta", -1, 1, 4))
        grid = GridSpec(axes)
        FieldSample(grid=grid, values=np.ones(grid.size, complex)).to_json(tmp_path / "f.json")
        code = run(
            [
                "apply", "--input", str(tmp_path / "f.json"), "--s", "0.5", "--tau", "1",
                "--axis", "x:-1:1:3", "--axis", "y:-1:1:3",
                "--output", str(tmp_path / "out.json"),
            ]
        )
        assert code == 2

    def test_missing_input_exit_2(self, tmp_path):
        code = run(
            [
                "apply", "--input", str(tmp_path / "absent.json"), "--s", "0.5", "--tau", "1",
                "--axis", "x:-1:1:3", "--axis", "y:-1:1:3",
                "--output", str(tmp_path / "out.json"),
            ]
        )
        assert code == 2


class TestVerify:
    def test_hermite_suite_pass_and_report(self, tmp_path):
        report_path = tmp_path / "hermite.json"
        code = run(["verify", "--suite", "hermite", "--report", str(report_path)])
        assert code == 0
        doc = json.loads(report_path.read_text())
        assert doc["suite"] == "hermite"
        assert doc["passed"] is True
        assert all("worst" in c and "tolerance" in c for c in doc["checks"])

    def test_unknown_suite_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            run(["verify", "--suite", "bogus"])
        assert exc.value.code == 2


class TestIdentities:
    def test_default_panel_passes(self, tmp_path, capsys):
        report = tmp_path / "ident.json"
        code = run(["identities", "--report", str(report)])
        assert code == 0
        doc = json.loads(report.read_text())
        assert doc["passed"] is True
        assert doc["twist_factorization"] < 1e-12
        out = capsys.readouterr().out
        assert "twist-factorization" in out

    def test_seeded_panel(self):
        assert run(["identities", "--seed", "7", "--points", "8"]) == 0
