import csv
import io
import json
import math

import pytest

from sharp_constants import cli
from sharp_constants.quadrature import IntegralResult

import frozen


def run_cli(capsys, *args):
    code = cli.main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_json(out):
    payload = json.loads(out)
    for key in ("command", "inputs", "results", "err_estimate", "converged"):
        assert key in payload
    return payload


class TestMgamma:
    def test_single_gamma(self, capsys):
        code, out, _ = run_cli(capsys, "mgamma", "--gamma", "3", "--format", "json")
        assert code == 0
        payload = parse_json(out)
        row = payload["results"][0]
        assert row["m_gamma"] == pytest.approx(frozen.M_GAMMA_TABLE[3.0], abs=5e-9)
        assert payload["converged"] is True

    def test_domain_gate(self, capsys):
        code, _, err = run_cli(capsys, "mgamma", "--gamma", "2")
        assert code == 2
        assert "gamma must be > 2" in err

    def test_gamma_list_csv(self, capsys):
        code, out, _ = run_cli(capsys, "mgamma", "--gamma-list",
                               "3,4,5,6,7,8,9", "--format", "csv")
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 7
        for row in rows:
            g = float(row["gamma"])
            assert float(row["m_gamma"]) == pytest.approx(
                frozen.M_GAMMA_TABLE[g], abs=5e-9)
        assert "\r" not in out

    def test_missing_gamma(self, capsys):
        code, _, err = run_cli(capsys, "mgamma")
        assert code == 2

    def test_tol_range_enforced(self, capsys):
        code, _, err = run_cli(capsys, "mgamma", "--gamma", "3", "--tol", "1e-3")
        assert code == 2
        assert "--tol" in err


class TestBounds:
    def test_clr_value(self, capsys):
        code, out, _ = run_cli(capsys, "clr", "--d", "5", "--sigma", "1",
                               "--format", "json")
        assert code == 0
        row = parse_json(out)["results"][0]
        assert row["factor"] == pytest.approx(frozen.CLR_TABLE[5.0], abs=1e-5)
        assert row["gamma"] == 5.0

    def test_lt_value(self, capsys):
        code, out, _ = run_cli(capsys, "lt", "--d", "1", "--sigma", "1",
                               "--format", "json")
        assert code == 0
        row = parse_json(out)["results"][0]
        assert row["factor"] == pytest.approx(frozen.LT_1_1, abs=1e-5)
        assert row["gamma"] == 3.0

    def test_clr_domain_gate(self, capsys):
        code, _, err = run_cli(capsys, "clr", "--d", "4", "--sigma", "2")
        assert code == 2
        assert "d/sigma" in err

    def test_cdsigma(self, capsys):
        code, out, _ = run_cli(capsys, "cdsigma", "--d", "2", "--sigma", "1",
                               "--format", "json")
        assert code == 0
        row = parse_json(out)["results"][0]
        assert row["factor"] == pytest.approx(2 * frozen.M_GAMMA_TABLE[4.0], abs=1e-8)


class TestAsymptotic:
    def test_values_and_keys(self, capsys):
        code, out, _ = run_cli(capsys, "asymptotic", "--format", "json")
        assert code == 0
        row = parse_json(out)["results"][0]
        assert set(row) >= {"clr_limit", "lt_limit", "err_estimate"}
        assert row["clr_limit"] == pytest.approx(frozen.CLR_LIMIT, abs=5e-6)
        assert row["lt_limit"] == pytest.approx(frozen.LT_LIMIT, abs=2e-5)

    def test_looser_tolerance_still_accurate(self, capsys):
        code, out, _ = run_cli(capsys, "asymptotic", "--tol", "1e-8",
                               "--format", "json")
        assert code == 0
        row = parse_json(out)["results"][0]
        assert row["clr_limit"] == pytest.approx(frozen.CLR_LIMIT, abs=5e-6)
        assert row["err_estimate"] > 0


class TestVerifyCommand:
    def test_single_gamma_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--gamma", "3", "--format", "json")
        assert code == 0
        row = parse_json(out)["results"][0]
        assert row["pass"] is True
        assert row["el_residual_max"] < 1e-6

    def test_conditioning_warning_surfaces(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--gamma", "2.05",
                               "--format", "json")
        row = parse_json(out)["results"][0]
        assert "ConditioningWarning" in row["warnings"]


class TestProfile:
    def test_boundary_line_unimodular(self, capsys):
        code, out, _ = run_cli(capsys, "profile", "--gamma", "3", "--y", "0",
                               "--xmax", "5", "--n", "10", "--format", "json")
        assert code == 0
        rows = parse_json(out)["results"]
        assert len(rows) == 11
        for row in rows:
            assert row["abs_h"] == pytest.approx(1.0, abs=1e-8)

    def test_interior_line_decays(self, capsys):
        code, out, _ = run_cli(capsys, "profile", "--gamma", "3", "--y", "-1",
                               "--xmax", "10", "--n", "100", "--format", "json")
        assert code == 0
        rows = parse_json(out)["results"]
        mid = next(r for r in rows if r["x"] == 0.0)
        assert rows[0]["abs_h"] < mid["abs_h"]
        assert rows[-1]["abs_h"] < mid["abs_h"]

    def test_outside_strip_rejected(self, capsys):
        code, _, err = run_cli(capsys, "profile", "--gamma", "3", "--y", "-3")
        assert code == 2

    def test_pole_row_flagged(self, capsys):
        pole_y = -(2.0 - 2.0 / 3.0)
        code, out, _ = run_cli(capsys, "profile", "--gamma", "3", "--y",
                               repr(pole_y), "--xmax", "1", "--n", "2",
                               "--format", "json")
        assert code == 0
        rows = parse_json(out)["results"]
        pole_rows = [r for r in rows if r["flag"] == "pole"]
        assert len(pole_rows) == 1
        assert pole_rows[0]["x"] == 0.0
        assert pole_rows[0]["abs_h"] is None
        clean = [r for r in rows if r["flag"] != "pole"]
        assert all(r["abs_h"] is not None for r in clean)


class TestFormats:
    def test_json_csv_encode_identical_numbers(self, capsys):
        _, out_json, _ = run_cli(capsys, "mgamma", "--gamma", "3",
                                 "--format", "json")
        _, out_csv, _ = run_cli(capsys, "mgamma", "--gamma", "3",
                                "--format", "csv")
        _, out_md, _ = run_cli(capsys, "mgamma", "--gamma", "3",
                               "--format", "markdown")
        jrow = json.loads(out_json)["results"][0]
        crow = next(csv.DictReader(io.StringIO(out_csv)))
        assert float(crow["m_gamma"]) == jrow["m_gamma"]
        assert float(crow["err_estimate"]) == jrow["err_estimate"]
        assert repr(jrow["m_gamma"]) in out_md

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "table.json"
        code, out, _ = run_cli(capsys, "mgamma", "--gamma", "3", "--format",
                               "json", "--out", str(target))
        assert code == 0
        assert out == ""
        payload = json.loads(target.read_text())
        assert payload["command"] == "mgamma"

    def test_json_has_no_nan_literals(self, capsys):
        pole_y = -(2.0 - 2.0 / 3.0)
        _, out, _ = run_cli(capsys, "profile", "--gamma", "3", "--y",
                            repr(pole_y), "--xmax", "1", "--n", "2",
                            "--format", "json")
        assert "NaN" not in out and "Infinity" not in out


class TestExitCodes:
    def test_non_convergence_maps_to_three(self, capsys, monkeypatch):
        from sharp_constants import constants as consts

        def fake_m_gamma(gp, spec):
            return IntegralResult(0.1, 1.0, False, 10)

        monkeypatch.setattr(consts, "m_gamma", fake_m_gamma)
        code, out, _ = run_cli(capsys, "mgamma", "--gamma", "3",
                               "--format", "json")
        assert code == 3
        assert json.loads(out)["converged"] is False


class TestTable:
    def test_full_reproduction_at_loose_tol(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--tol", "1e-10",
                               "--format", "json")
        assert code == 0
        rows = json.loads(out)["results"]
        mg = {r["parameter"]: r["value"] for r in rows if r["table"] == "m_gamma"}
        clr = {r["parameter"]: r["value"] for r in rows if r["table"] == "clr"}
        for g, v in frozen.M_GAMMA_TABLE.items():
            assert mg[g] == pytest.approx(v, abs=5e-8)
        for g, v in frozen.CLR_TABLE.items():
            assert clr[g] == pytest.approx(v, abs=1e-4)
        assert clr[None] == pytest.approx(frozen.CLR_LIMIT, abs=1e-4)
