import json
import math
from fractions import Fraction
import subprocess
import sys
from pathlib import Path

import pytest

from simcrit.cli import main
from simcrit.problem import (
    bundled_path,
    bundled_problem_text,
    dumps,
    preset_problem_dict,
    problem_from_dict,
)
from simcrit.report import DerivationReport, build_report

HERE = Path(__file__).parent
FIX = HERE / "fixtures"
GOLDEN = HERE / "golden" / "slm_report.json"
SLM = str(bundled_path("slm.problem"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestPiDerive:
    def test_bundled_problem_text(self, capsys):
        code, out, _ = run(capsys, "pi", "derive", SLM)
        assert code == 0
        assert "basis determinant: 3" in out
        assert "π7 = M·t_c^2·T·z/V^(2/3)" in out

    def test_golden_json(self, capsys):
        code, out, _ = run(capsys, "pi", "derive", SLM, "--json", "-")
        assert code == 0
        assert out == GOLDEN.read_text(encoding="utf-8")
        data = json.loads(out)
        assert data["determinant"] == "3"
        assert [g["target"] for g in data["groups"]] == ["ρ", "E", "M"]
        assert data["groups"][0]["exponents"] == {"t_c": "-2", "V": "-1/3", "T": "-1", "z": "-1"}

    def test_json_file_and_round_trip(self, capsys, tmp_path):
        dest = tmp_path / "report.json"
        code, out, _ = run(capsys, "pi", "derive", SLM, "--json", str(dest))
        assert code == 0 and "Φ(π5; π6; π7) = 0" in out
        data = json.loads(dest.read_text(encoding="utf-8"))
        report = DerivationReport.from_dict(data)
        assert report == build_report(problem_from_dict(json.loads(bundled_problem_text())))
        assert report.to_dict() == data

    def test_fraction_fields_are_text(self, capsys):
        _, out, _ = run(capsys, "pi", "derive", SLM, "--json", "-")
        data = json.loads(out)
        for g in data["groups"]:
            assert all(isinstance(v, str) for v in g["exponents"].values())
            assert all(isinstance(v, str) for v in g["monomial"].values())

    def test_units_only_problem(self, capsys):
        code, out, _ = run(capsys, "pi", "derive", str(FIX / "pipe_flow.json"))
        assert code == 0
        assert "μ/(ρ·v·D)" in out
        assert "Δp·D/(ρ·v^2)" in out

    def test_no_audit_accepts_conflict(self, capsys):
        code, _, _ = run(capsys, "pi", "derive", str(FIX / "unit_conflict.json"), "--no-audit")
        assert code == 0


class TestExitCodes:
    def test_malformed_unknown_field(self, capsys):
        code, _, err = run(capsys, "pi", "derive", str(FIX / "unknown_field.json"))
        assert code == 2
        assert "dimz" in err

    def test_malformed_unit_conflict(self, capsys):
        code, _, err = run(capsys, "pi", "derive", str(FIX / "unit_conflict.json"))
        assert code == 2
        assert "['2', '1', '-3', '0']" in err and "['2', '0', '-3', '0']" in err

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "pi", "derive", str(tmp_path / "nope.json"))[0] == 2

    def test_invalid_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{", encoding="utf-8")
        assert run(capsys, "pi", "derive", str(bad))[0] == 2

    def test_dependent_basis(self, capsys):
        code, _, err = run(capsys, "pi", "derive", str(FIX / "dependent_basis.json"))
        assert code == 3
        assert "determinant 0" in err

    def test_check_basis_dependent(self, capsys):
        code, out, _ = run(capsys, "pi", "check-basis", str(FIX / "dependent_basis.json"))
        assert code == 3 and "determinant: 0" in out

    def test_inconsistent(self, capsys):
        assert run(capsys, "pi", "derive", str(FIX / "inconsistent.json"))[0] == 4

    def test_not_similar(self, capsys):
        code, out, _ = run(capsys, "similarity", "check", SLM, str(FIX / "case_a.json"), str(FIX / "case_doubled_power.json"))
        assert code == 5 and "not similar" in out

    def test_usage(self, capsys):
        assert run(capsys, "slm", "estimate-time", "--volume", "1", "--rate", "0")[0] == 1
        with pytest.raises(SystemExit) as info:
            main(["slm", "estimate-time", "--volume", "abc", "--rate", "1"])
        assert info.value.code == 1

    def test_non_square_check_basis(self, capsys):
        assert run(capsys, "pi", "check-basis", str(FIX / "inconsistent.json"))[0] == 1

    def test_bad_unit_expression(self, capsys):
        code, _, err = run(capsys, "unit", "parse", "кг/)")
        assert code == 2 and "byte 5" in err


class TestSimilarityCommands:
    def test_identical(self, capsys):
        case = str(FIX / "case_a.json")
        code, out, _ = run(capsys, "similarity", "check", SLM, case, case)
        assert code == 0
        assert out.count("deviation=0") == 3

    def test_transformed_pair(self, capsys, tmp_path):
        a = json.loads((FIX / "case_a.json").read_text(encoding="utf-8"))
        lam = {"L": 2.5, "M": 0.3, "T": 4.0, "Θ": 1.7}
        rows = {q["symbol"]: q["dims"] for q in preset_problem_dict()["quantities"]}
        b = {
            s: v * math.prod(lam[d] ** float(Fraction(e)) for d, e in zip("LMTΘ", rows[s]))
            for s, v in a.items()
        }
        path = tmp_path / "b.json"
        path.write_text(json.dumps(b), encoding="utf-8")
        code, out, _ = run(capsys, "similarity", "check", SLM, str(FIX / "case_a.json"), str(path))
        assert code == 0, out

    def test_tolerance_decimal_comma(self, capsys):
        code, _, _ = run(capsys, "similarity", "check", SLM, str(FIX / "case_a.json"),
                         str(FIX / "case_doubled_power.json"), "--tol", "1,5")
        assert code == 0

    def test_solve_power(self, capsys):
        code, out, _ = run(capsys, "similarity", "solve", SLM, str(FIX / "case_solve_power.json"),
                           "--group", "E", "--target-pi", "8")
        assert code == 0
        assert out.splitlines()[0] == "E = 8"

    def test_solve_two_unknowns(self, capsys):
        code, _, _ = run(capsys, "similarity", "solve", SLM, str(FIX / "case_two_unknowns.json"),
                         "--group", "E", "--target-pi", "8")
        assert code == 4

    def test_solve_unknown_group(self, capsys):
        code, _, _ = run(capsys, "similarity", "solve", SLM, str(FIX / "case_solve_power.json"),
                         "--group", "t_c", "--target-pi", "8")
        assert code == 4

    def test_case_unknown_symbol(self, capsys):
        code, _, err = run(capsys, "similarity", "solve", SLM, str(FIX / "case_unknown_symbol.json"),
                           "--group", "E", "--target-pi", "8")
        assert code == 2 and "bogus" in err

    def test_case_values_use_unit_scale(self, capsys, tmp_path):
        # micrometre volumes are converted to m³ before evaluation
        problem = {
            "system": {"dimensions": ["L", "M", "T", "Θ"]},
            "quantities": [
                {"symbol": "t_c", "unit": "с"},
                {"symbol": "V", "unit": "мкм^3"},
                {"symbol": "L", "unit": "м"},
            ],
            "basis": ["t_c", "V"],
        }
        (tmp_path / "p.json").write_text(json.dumps(problem, ensure_ascii=False), encoding="utf-8")
        # L / V^(1/3) = 1 with L = 1 m  =>  V = 1 m³ = 1e18 µm³
        (tmp_path / "c.json").write_text(json.dumps({"t_c": 1, "L": 1}), encoding="utf-8")
        code, out, _ = run(capsys, "similarity", "solve", str(tmp_path / "p.json"), str(tmp_path / "c.json"),
                           "--group", "L", "--target-pi", "1")
        assert code == 0
        assert out.splitlines()[0] == "V = 1e+18 мкм^3"


class TestSlmCommands:
    def test_estimate(self, capsys):
        code, out, err = run(capsys, "slm", "estimate-time", "--volume", "195", "--rate", "9.2857")
        assert code == 0 and out == "21.0 h\n"
        assert "warning" in err

    def test_estimate_zero(self, capsys):
        assert run(capsys, "slm", "estimate-time", "--volume", "0", "--rate", "50")[1] == "0 h\n"

    def test_estimate_decimal_comma(self, capsys):
        code, out, _ = run(capsys, "slm", "estimate-time", "--volume", "2,9", "--rate", "7,25")
        assert out == "0.4 h\n"

    def test_implied_rate(self, capsys):
        assert run(capsys, "slm", "implied-rate", "--volume", "195", "--hours", "21")[1] == "9.28571 cm³/h\n"

    def test_compare(self, capsys):
        code, out, _ = run(capsys, "slm", "compare", "--a", "1.23", "--b", "0.291", "--higher-better")
        assert code == 0 and out.splitlines()[0] == "×4.2"

    def test_compare_lower(self, capsys):
        out = run(capsys, "slm", "compare", "--a", "0,0787", "--b", "0,0472", "--lower-better",
                  "--sig-figs", "3", "--label-a", "40Х", "--label-b", "ТНМ20")[1]
        assert out.splitlines() == ["×1.67", "ТНМ20 over 40Х; raw ratio 1.66737"]

    def test_preset_emit_matches_bundled(self, capsys, tmp_path):
        dest = tmp_path / "slm.problem"
        code, out, _ = run(capsys, "slm", "preset", "--emit", str(dest))
        assert code == 0 and "basis determinant: 3" in out
        assert dest.read_text(encoding="utf-8") == bundled_problem_text()
        assert bundled_problem_text() == dumps(preset_problem_dict())

    def test_audit(self, capsys):
        out = run(capsys, "slm", "audit")[1]
        assert out.count("MISMATCH") == 2
        assert out.count(" ok") == 5

    def test_table_export(self, capsys):
        out = run(capsys, "slm", "table", "--emit", "-")[1]
        assert json.loads(out) == json.loads(bundled_path("table1.json").read_text(encoding="utf-8"))

    def test_no_color_when_piped(self, capsys, monkeypatch):
        monkeypatch.setenv("NO_COLOR", "1")
        assert "\033[" not in run(capsys, "slm", "audit")[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "simcrit", "unit", "parse", "кДж/(кг·°C)"],
                         capture_output=True, text=True, encoding="utf-8")
    assert res.returncode == 0
    assert "si_scale: 1000" in res.stdout
