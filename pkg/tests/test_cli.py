import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest

from gqw import __version__
from gqw.cli import RunConfig, UsageError, cmd_sweep, main

A1, A2 = float(mpmath.airyaizero(1)), float(mpmath.airyaizero(2))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    comments = [line for line in text.splitlines() if line.startswith("#")]
    body = [line for line in text.splitlines() if not line.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(body))))
    return comments, rows[0], rows[1:]


class TestZeros:
    def test_five(self, capsys):
        code, out, _ = run(capsys, "zeros", "--count", "5")
        assert code == 0
        comments, header, rows = parse_csv(out)
        assert header == ["n", "a_n", "abs_ai_at_a_n"]
        assert len(rows) == 5
        assert float(rows[0][1]) == pytest.approx(-2.33810741, abs=1e-8)
        assert comments[0] == f"# gqw {__version__}"
        assert any(c.startswith("# config:") for c in comments)

    def test_residual_column(self, capsys):
        _, out, _ = run(capsys, "zeros", "--count", "1", "--tol", "1e-12")
        assert float(parse_csv(out)[2][0][2]) < 1e-12

    @pytest.mark.parametrize("count", ["0", "-3"])
    def test_bad_count(self, capsys, count):
        code, _, err = run(capsys, "zeros", "--count", count)
        assert code == 2 and "error" in err

    def test_bad_tol(self, capsys):
        assert run(capsys, "zeros", "--tol", "1e-20")[0] == 2


class TestSpectrum:
    def test_natural(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--levels", "5", "--units", "natural")
        assert code == 0
        _, header, rows = parse_csv(out)
        assert header[2] == "energy[natural]"
        energies = [float(r[2]) for r in rows]
        assert len(energies) == 5 and all(b > a for a, b in zip(energies, energies[1:]))
        assert energies[0] == pytest.approx(1.85575708148924, rel=1e-13)

    def test_ratios_unit_independent(self, capsys):
        _, nat, _ = run(capsys, "spectrum", "--units", "natural")
        _, si, _ = run(capsys, "spectrum", "--units", "si", "--g0", "9.81")
        r_nat = [float(r[4]) for r in parse_csv(nat)[2]]
        r_si = [float(r[4]) for r in parse_csv(si)[2]]
        assert r_nat == pytest.approx(r_si, rel=1e-13)
        assert r_nat[1] == pytest.approx(A2 / A1, rel=1e-13)

    def test_si_units_and_defaults(self, capsys):
        _, out, _ = run(capsys, "spectrum")
        comments, header, rows = parse_csv(out)
        assert header[2] == "energy[J]" and header[3] == "turning_point[m]"
        assert "g0=10" in comments[2]
        assert float(rows[0][2]) == pytest.approx(-A1 * (1.67492749804e-27 * 100 * (1.054571817e-34) ** 2 / 2) ** (1 / 3), rel=1e-8)

    def test_malformed_unit_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["spectrum", "--units", "cgs"])
        assert exc.value.code == 2

    def test_natural_with_mass_rejected(self, capsys):
        assert run(capsys, "spectrum", "--units", "natural", "--mass", "2")[0] == 2

    def test_negative_mass(self, capsys):
        assert run(capsys, "spectrum", "--mass", "-1")[0] == 2


class TestCycle:
    def test_isograv_json(self, capsys):
        code, out, _ = run(capsys, "cycle", "isograv", "--alpha", "2")
        assert code == 0
        data = json.loads(out)
        assert data["schema_version"] == 1
        assert data["efficiency"] == pytest.approx(0.75, abs=1e-12)
        assert data["cycle_closed"] is True
        assert len(data["strokes"]) == 4
        assert set(data["strokes"][0]) >= {"kind", "g_start", "g_end", "ell_start", "ell_end", "heat", "work"}

    def test_isoenergetic_json(self, capsys):
        _, out, _ = run(capsys, "cycle", "isoenergetic", "--pair", "1", "2", "--alpha", "2")
        data = json.loads(out)
        assert data["efficiency"] == pytest.approx(0.8570, abs=1e-4)
        assert data["cycle_closed"] is True
        assert len(data["heat_integral_residuals"]) == 2
        assert data["length_rule"] == "zero_ratio"

    def test_energy_matched_rule(self, capsys):
        _, out, _ = run(capsys, "cycle", "isoenergetic", "--alpha", "2", "--length-rule", "energy_matched")
        assert json.loads(out)["efficiency"] == pytest.approx(0.75, abs=1e-10)

    def test_csv(self, capsys):
        _, out, _ = run(capsys, "cycle", "isograv", "--format", "csv")
        comments, header, rows = parse_csv(out)
        assert header[6] == "heat[J]" and len(rows) == 4
        assert comments[-1].endswith("cycle_closed=true")

    @pytest.mark.parametrize("alpha", ["1", "0.5", "-2"])
    def test_alpha_not_above_one(self, capsys, alpha):
        assert run(capsys, "cycle", "isograv", "--alpha", alpha)[0] == 2

    @pytest.mark.parametrize("pair", [("2", "1"), ("1", "1"), ("0", "2")])
    def test_bad_pair(self, capsys, pair):
        assert run(capsys, "cycle", "isoenergetic", "--pair", *pair)[0] == 2

    def test_odd_path_steps(self, capsys):
        assert run(capsys, "cycle", "isoenergetic", "--path-steps", "7")[0] == 2


class TestSweep:
    def test_grid(self, capsys):
        _, out, _ = run(capsys, "sweep", "--alpha-min", "1", "--alpha-max", "5", "--steps", "100")
        _, header, rows = parse_csv(out)
        assert header == ["alpha", "eta_isograv", "eta_isoenergetic"]
        assert len(rows) == 100
        last = [float(x) for x in rows[-1]]
        assert last[0] == 5.0
        assert last[1] == pytest.approx(0.96, abs=1e-12)
        assert last[2] == pytest.approx(1 - (A1 / A2) / 25, abs=1e-12)
        for r in rows:
            alpha, a, b = map(float, r)
            assert b - a == pytest.approx((1 - A1 / A2) / alpha**2, abs=1e-12)

    def test_single_point(self, capsys):
        _, out, _ = run(capsys, "sweep", "--alpha-min", "2", "--alpha-max", "2", "--steps", "1")
        assert len(parse_csv(out)[2]) == 1

    @pytest.mark.parametrize(
        "args", [("--steps", "0"), ("--alpha-min", "5", "--alpha-max", "2"), ("--alpha-min", "0.5")]
    )
    def test_bad_grid(self, capsys, args):
        assert run(capsys, "sweep", *args)[0] == 2

    def test_empty_grid_function(self):
        with pytest.raises(UsageError):
            RunConfig(steps=0)

    def test_deterministic_files(self, tmp_path, capsys):
        paths = [tmp_path / f"s{i}.csv" for i in range(3)]
        run(capsys, "sweep", "--steps", "40", "--out", str(paths[0]))
        run(capsys, "sweep", "--steps", "40", "--out", str(paths[1]))
        run(capsys, "sweep", "--steps", "40", "--jobs", "3", "--out", str(paths[2]))
        data = [p.read_bytes() for p in paths]
        assert data[0] == data[1] == data[2]

    def test_cmd_sweep_same_config(self):
        config = RunConfig(steps=25)
        assert cmd_sweep(config) == cmd_sweep(config, jobs=2)


class TestEos:
    def test_default(self, capsys):
        code, out, _ = run(capsys, "eos", "--pair", "1", "2", "--samples", "101", "--units", "natural")
        assert code == 0
        _, header, rows = parse_csv(out)
        assert header == [
            "ell_g[natural]",
            "force[natural]",
            "pressure[natural]",
            "pressure_times_ell3[natural]",
            "two_mean_energy[natural]",
        ]
        assert len(rows) == 101
        for r in rows:
            assert float(r[3]) == pytest.approx(float(r[4]), rel=1e-10)

    def test_si_compression(self, capsys):
        _, out, _ = run(capsys, "eos", "--direction", "compression", "--pair", "1", "3")
        rows = parse_csv(out)[2]
        assert all(float(r[3]) == pytest.approx(float(r[4]), rel=1e-10) for r in rows)

    def test_degenerate_single_row(self, capsys):
        code, out, _ = run(capsys, "eos", "--units", "natural", "--g-start", "1", "--g-end", "1")
        assert code == 0
        rows = parse_csv(out)[2]
        assert len(rows) == 1
        assert float(rows[0][3]) == pytest.approx(float(rows[0][4]), rel=1e-12)

    @pytest.mark.parametrize("kind", ["isograv", "isoentropic"])
    def test_wrong_kind(self, capsys, kind):
        assert run(capsys, "eos", "--kind", kind)[0] == 2

    def test_g_end_out_of_range(self, capsys):
        assert run(capsys, "eos", "--units", "natural", "--g-end", "5")[0] == 2


def test_entry_point_module():
    proc = subprocess.run(
        [sys.executable, "-m", "gqw", "zeros", "--count", "3", "--format", "json"],
        capture_output=True,
        text=True,
        check=True,
    )
    data = json.loads(proc.stdout)
    assert data["schema_version"] == 1 and len(data["rows"]) == 3


def test_numerical_failure_exit_code(capsys, monkeypatch):
    from gqw import cli
    from gqw.errors import NumericalError

    def boom(*args, **kwargs):
        raise NumericalError("forced")

    monkeypatch.setattr(cli, "run_isogravitational_cycle", boom)
    code, _, err = run(capsys, "cycle", "isograv")
    assert code == 3 and "numerical failure" in err
