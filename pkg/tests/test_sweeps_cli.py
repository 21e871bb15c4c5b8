"""Sweep tables, CSV round-trips, and the command-line surface."""

import math
import os

import pytest

from winsor_bounds import cli
from winsor_bounds.distributions import BoundQuery
from winsor_bounds.errors import ParameterError
from winsor_bounds.sweeps import SweepKind, compute_sweep, read_csv, sigma_grid, write_csv
from winsor_bounds.winsor import lower_bound_fixed_c, lower_bound_universal


class TestSigmaGrid:
    def test_log_grid_endpoints(self):
        grid = sigma_grid(0.1, 100.0, 4, "log")
        assert len(grid) == 4
        assert grid[0] == pytest.approx(0.1)
        assert grid[-1] == pytest.approx(100.0)
        ratios = [g2 / g1 for g1, g2 in zip(grid, grid[1:])]
        assert max(ratios) - min(ratios) < 1e-9

    def test_linear_grid(self):
        assert sigma_grid(1.0, 3.0, 3, "linear") == (1.0, 2.0, 3.0)

    def test_validation(self):
        with pytest.raises(ParameterError):
            sigma_grid(2.0, 1.0, 10)
        with pytest.raises(ParameterError):
            sigma_grid(1.0, 2.0, 1)
        with pytest.raises(ParameterError):
            sigma_grid(1.0, 2.0, 10, "cubic")


class TestComputeSweep:
    def test_universal_kind(self):
        grid = sigma_grid(0.5, 5.0, 5)
        table = compute_sweep(SweepKind.UNIVERSAL_WINSOR, grid)
        assert table.column_labels == ("bound",)
        for (sigma, value) in table.rows:
            assert value == lower_bound_universal(sigma).bound
            assert 0.0 < value <= 1.0

    def test_ratio_kinds_stay_in_unit_interval(self):
        grid = sigma_grid(0.2, 50.0, 8)
        for kind in (SweepKind.RATIO_UNIVERSAL_OVER_FIXED, SweepKind.RATIO_TRUNC_OVER_WINSOR):
            table = compute_sweep(kind, grid, c_values=(1.0, 2.0))
            for row in table.rows:
                assert all(0.0 < value <= 1.0 + 1e-12 for value in row[1:])

    def test_requires_c_where_needed(self):
        grid = sigma_grid(0.5, 5.0, 3)
        with pytest.raises(ParameterError):
            compute_sweep(SweepKind.FIXED_C_WINSOR, grid)
        with pytest.raises(ParameterError):
            compute_sweep(SweepKind.UNIVERSAL_WINSOR, grid, c_values=(1.0,))


class TestCsvRoundTrip:
    def test_bitwise_round_trip_and_recompute(self, tmp_path):
        grid = sigma_grid(0.3, 30.0, 7)
        table = compute_sweep(SweepKind.FIXED_C_WINSOR, grid, c_values=(1.0, 2.5))
        path = str(tmp_path / "sweep.csv")
        write_csv(table, path)
        header, rows = read_csv(path)
        assert header == ("sigma", "c=1.0", "c=2.5")
        assert len(rows) == 7
        for row, original in zip(rows, table.rows):
            assert row == original  # parse is bitwise
            sigma = row[0]
            assert row[1] == lower_bound_fixed_c(BoundQuery(1.0, sigma)).bound
            assert row[2] == lower_bound_fixed_c(BoundQuery(2.5, sigma)).bound

    def test_file_format(self, tmp_path):
        grid = sigma_grid(0.5, 2.0, 3)
        table = compute_sweep(SweepKind.UNIVERSAL_WINSOR, grid)
        path = str(tmp_path / "fmt.csv")
        write_csv(table, path)
        raw = open(path, "rb").read().decode("utf-8")
        assert "\r" not in raw
        assert raw.startswith("sigma,bound\n")
        assert raw.endswith("\n") and not raw.endswith("\n\n")

    def test_no_partial_file_on_failure(self, tmp_path):
        grid = sigma_grid(0.5, 2.0, 3)
        table = compute_sweep(SweepKind.UNIVERSAL_WINSOR, grid)
        path = tmp_path / "target.csv"
        write_csv(table, str(path))
        before = open(path).read()

        # a failing write must leave the existing file untouched
        class Boom:
            def __repr__(self):
                raise RuntimeError("mid-write failure")

        broken = table.__class__(
            kind=table.kind,
            c_values=table.c_values,
            sigma_values=table.sigma_values,
            rows=tuple([(0.5, Boom())]),
        )
        with pytest.raises(RuntimeError):
            write_csv(broken, str(path))
        assert open(path).read() == before
        assert [p for p in os.listdir(tmp_path) if p.endswith(".tmp")] == []


class TestCli:
    def test_bound_universal(self, capsys):
        code = cli.main(["bound", "--kind", "universal-winsor", "--sigma", "1"])
        assert code == 0
        out = capsys.readouterr().out
        fields = dict(pair.split("=", 1) for pair in out.split())
        assert 0.878 <= float(fields["bound"]) < 0.879
        assert "c_sigma" in fields
        assert cli.main(["bound", "--kind", "universal-winsor", "--sigma", "10"]) == 0
        fields = dict(pair.split("=", 1) for pair in capsys.readouterr().out.split())
        assert 0.194 <= float(fields["bound"]) < 0.195

    def test_bound_trunc_small_branch(self, capsys):
        code = cli.main(["bound", "--kind", "trunc", "--c", "1", "--sigma", "0.5"])
        assert code == 0
        fields = dict(pair.split("=", 1) for pair in capsys.readouterr().out.split())
        assert fields["branch"] == "small-sigma"
        assert abs(float(fields["bound"]) - 0.823040626457124) < 1e-12

    def test_bound_fixed_winsor(self, capsys):
        code = cli.main(["bound", "--kind", "fixed-winsor", "--c", "1", "--sigma", "1"])
        assert code == 0
        fields = dict(pair.split("=", 1) for pair in capsys.readouterr().out.split())
        assert abs(float(fields["a"]) - 0.2196629301855436) < 1e-9

    def test_validation_exit_code(self, capsys):
        assert cli.main(["bound", "--kind", "universal-winsor", "--sigma", "-1"]) == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "sigma" in captured.err

    def test_missing_c_exit_code(self, capsys):
        assert cli.main(["bound", "--kind", "trunc", "--sigma", "1"]) == 2

    def test_sweep_writes_csv(self, tmp_path, capsys):
        out = str(tmp_path / "fig.csv")
        code = cli.main([
            "sweep", "--kind", "ratio-trunc-over-winsor", "--c", "1,2",
            "--sigma-min", "0.5", "--sigma-max", "5", "--points", "4",
            "--scale", "log", "--out", out,
        ])
        assert code == 0
        header, rows = read_csv(out)
        assert header == ("sigma", "c=1.0", "c=2.0")
        assert len(rows) == 4

    def test_sweep_bad_range_exit_code(self, tmp_path):
        out = str(tmp_path / "x.csv")
        code = cli.main([
            "sweep", "--kind", "universal-winsor",
            "--sigma-min", "5", "--sigma-max", "0.5", "--points", "4", "--out", out,
        ])
        assert code == 2
        assert not os.path.exists(out)

    def test_verify_roots_suite(self, capsys):
        assert cli.main(["verify", "--suite", "roots"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_collapse_demo(self, capsys):
        assert cli.main(["collapse-demo", "--sigma", "1", "--steps", "6"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 7  # header + 6 rows
        last = lines[-1].split()
        assert float(last[2]) < 1e-2
        assert abs(float(last[3]) - 0.8781357139504142) < 1e-10

    def test_collapse_demo_single_step(self, capsys):
        assert cli.main(["collapse-demo", "--sigma", "1", "--steps", "1"]) == 0
        assert len(capsys.readouterr().out.strip().splitlines()) == 2

    def test_collapse_demo_sigma_ten_floor(self, capsys):
        assert cli.main(["collapse-demo", "--sigma", "10", "--steps", "3"]) == 0
        last = capsys.readouterr().out.strip().splitlines()[-1].split()
        assert 0.194 <= float(last[3]) < 0.195

    def test_collapse_demo_small_sigma_stays_in_regime(self, capsys):
        # the start point must keep b = sigma^2/a at or above the cut, or
        # the truncated moment explodes instead of collapsing
        assert cli.main(["collapse-demo", "--sigma", "0.01", "--steps", "4"]) == 0
        rows = [line.split() for line in capsys.readouterr().out.strip().splitlines()[1:]]
        moments = [float(row[2]) for row in rows]
        assert all(math.isfinite(m) for m in moments)
        assert all(m2 < m1 for m1, m2 in zip(moments, moments[1:]))
        assert moments[-1] < 1e-5

    def test_constants(self, capsys):
        assert cli.main(["constants"]) == 0
        fields = dict(pair.split("=", 1) for pair in capsys.readouterr().out.split())
        assert abs(float(fields["t_star"]) - 0.20318786997997995) < 1e-12
        assert abs(float(fields["minus_ln_t_star"]) - 1.59362426004004) < 1e-12
        assert abs(float(fields["large_sigma_universal_coeff"]) - math.exp(2.0)) < 1e-15

    def test_extreme_tilt_fails_validation(self, capsys):
        # c=500 solves, but the extremal mass a/(a+b) underflows to zero
        code = cli.main(["bound", "--kind", "fixed-winsor", "--c", "500", "--sigma", "1"])
        assert code == 2
        captured = capsys.readouterr()
        assert captured.out == ""
        assert captured.err != ""

    def test_solver_failure_exit_code(self, capsys, monkeypatch):
        from winsor_bounds.errors import MaxIterationsError

        def non_convergent(*args, **kwargs):
            raise MaxIterationsError("no convergence in 200 iterations")

        monkeypatch.setattr(cli, "lower_bound_fixed_c", non_convergent)
        code = cli.main(["bound", "--kind", "fixed-winsor", "--c", "1", "--sigma", "1"])
        assert code == 3
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "iterations" in captured.err

    def test_verify_all_under_a_minute(self, capsys):
        import time

        start = time.perf_counter()
        assert cli.main(["verify", "--suite", "all"]) == 0
        assert time.perf_counter() - start < 60.0
        out = capsys.readouterr().out
        assert "32/32 checks passed" in out
