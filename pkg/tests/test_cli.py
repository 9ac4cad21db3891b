#!/usr/bin/env python3
"""
End-to-end tests for the fpa command

Reports go to stdout; diagnostics and errors go to stderr. Exit statuses:
0 success, 1 validation, 2 parse or malformed flag, 3 unreadable file.
"""

import json

import pytest
from typer.testing import CliRunner

from function_points import default_matrix, render_matrix
from function_points.cli import ExitStatus, app

runner = CliRunner()

BAD_RATING = "[rcaf]\n" + "\n".join(
    f"f{n} = {9 if n == 5 else 2}" for n in range(1, 15)
) + "\n"


def invoke(*args):
    return runner.invoke(app, [str(arg) for arg in args])


class TestCompute:
    """Test fpa compute"""

    def test_object_oriented(self, oo_path):
        result = invoke("compute", oo_path)
        assert result.exit_code == ExitStatus.OK
        assert "FP = 174.64" in result.stdout
        assert "declared RCAF total" in result.stderr

    def test_structural_json(self, structural_path):
        result = invoke("compute", structural_path, "--format", "json")
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert payload["fp"] == "180.93"
        assert '"fp":"180.93"' in result.stdout
        assert payload["cfp"] == 163

    def test_csv_matches_golden(self, oo_path, golden_dir):
        result = invoke("compute", oo_path, "-f", "csv")
        assert result.exit_code == 0
        assert result.stdout == (golden_dir / "academic_oo.csv").read_text()

    def test_itemized_sheet(self, fixtures_dir):
        result = invoke("compute", fixtures_dir / "academic_structural_items.fpa")
        assert result.exit_code == 0
        assert "FP = 180.93" in result.stdout
        assert "appears under both EI and EQ" in result.stderr

    def test_missing_file(self, tmp_path):
        missing = tmp_path / "missing.fpa"
        result = invoke("compute", missing)
        assert result.exit_code == ExitStatus.IO == 3
        assert str(missing) in result.stderr
        assert result.stdout == ""

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "latin1.fpa"
        path.write_bytes(b"[meta]\nname = \xe9t\xe9\n[rcaf]\ntotal = 1\n")
        result = invoke("compute", path)
        assert result.exit_code == 3

    def test_validation_error(self, write_sheet):
        result = invoke("compute", write_sheet(BAD_RATING))
        assert result.exit_code == ExitStatus.VALIDATION
        assert result.stdout == ""

    def test_parse_error(self, write_sheet):
        result = invoke("compute", write_sheet("[rcaf]\ntotal = lots\n"))
        assert result.exit_code == ExitStatus.PARSE
        assert ":2: error: malformed integer 'lots'" in result.stderr
        assert result.stdout == ""

    def test_weights_override(self, oo_path, write_sheet):
        weights = write_sheet(
            "[weights]\ninput = 6 8 12\noutput = 8 10 14\nquery = 6 8 12\n"
            "file = 14 20 30\ninterface = 10 14 20\n",
            "weights.fpa",
        )
        result = invoke("compute", oo_path, "--weights", weights, "-f", "json")
        assert result.exit_code == 0
        assert json.loads(result.stdout)["cfp"] == 296

    def test_invalid_weights_override(self, oo_path, write_sheet):
        weights = write_sheet("[weights]\ninput = 1 1 1\n", "weights.fpa")
        result = invoke("compute", oo_path, "--weights", weights)
        assert result.exit_code == 1
        assert "partial [weights] override" in result.stderr
        assert result.stdout == ""

    def test_missing_matrix_override(self, oo_path, tmp_path):
        result = invoke("compute", oo_path, "--matrix", tmp_path / "none.fpa")
        assert result.exit_code == 3

    def test_verbose(self, oo_path):
        result = invoke("--verbose", "compute", oo_path)
        assert result.exit_code == 0
        assert "FP = 174.64" in result.stdout


class TestValidate:
    """Test fpa validate"""

    def test_valid_fixture(self, oo_path):
        result = invoke("validate", oo_path)
        assert result.exit_code == 0
        assert result.stdout == "OK\n"

    def test_rating_out_of_range(self, write_sheet):
        path = write_sheet(BAD_RATING)
        result = invoke("validate", path)
        assert result.exit_code == 1
        errors = [line for line in result.stderr.splitlines() if ": error: " in line]
        assert errors == [f"{path}:6: error: f5: rating out of range 0..5"]
        assert result.stdout == ""

    def test_malformed_header(self, write_sheet):
        result = invoke("validate", write_sheet("[rcaf\ntotal = 3\n"))
        assert result.exit_code == 2
        assert result.stdout == ""

    def test_reports_every_error(self, write_sheet):
        text = "[counts]\ninput = 1 x 1\noutput = 1\n[rcaf]\ntotal = y\n"
        result = invoke("validate", write_sheet(text))
        assert result.exit_code == 2
        assert result.stderr.count(": error: ") == 3


class TestCompare:
    """Test fpa compare"""

    def test_case_studies(self, oo_path, structural_path):
        result = invoke("compare", oo_path, structural_path)
        assert result.exit_code == 0
        assert "Delta FP = +6.29" in result.stdout

    def test_csv_matches_golden(self, oo_path, structural_path, golden_dir):
        result = invoke("compare", oo_path, structural_path, "--format", "csv")
        assert result.stdout == (golden_dir / "compare_oo_structural.csv").read_text()

    def test_one_invalid_file(self, oo_path, write_sheet):
        result = invoke("compare", oo_path, write_sheet(BAD_RATING))
        assert result.exit_code == 1
        assert result.stdout == ""

    def test_first_failure_decides(self, tmp_path, write_sheet):
        broken = write_sheet("[rcaf\n")
        result = invoke("compare", broken, tmp_path / "missing.fpa")
        assert result.exit_code == 2
        assert result.stdout == ""


class TestWhatIf:
    """Test fpa whatif"""

    def test_rcaf_point(self, oo_path):
        result = invoke("whatif", oo_path, "--rcaf", "total=+1")
        assert result.exit_code == 0
        assert "Adjusted FP = 176.12 (CFP 148, RCAF 54)" in result.stdout

    def test_add_item(self, oo_path):
        result = invoke("whatif", oo_path, "--add", "ILF:high")
        assert result.exit_code == 0
        assert "Adjusted FP = 192.34 (CFP 163, RCAF 53)" in result.stdout

    def test_csv(self, oo_path):
        result = invoke(
            "whatif", oo_path, "--rcaf", "total=+1", "--add", "ILF:high", "-f", "csv"
        )
        assert result.stdout.splitlines()[1] == "148,53,174.64,163,54,193.97,+19.33"

    def test_out_of_range_names_flag(self, oo_path):
        result = invoke("whatif", oo_path, "--rcaf", "total=+20")
        assert result.exit_code == 1
        assert "total=+20" in result.stderr
        assert result.stdout == ""

    @pytest.mark.parametrize("flag,value", [("--rcaf", "f3"), ("--add", "ILF:huge")])
    def test_malformed_flag(self, oo_path, flag, value):
        result = invoke("whatif", oo_path, flag, value)
        assert result.exit_code == 2
        assert result.stdout == ""


class TestOtherCommands:
    """Test fpa sensitivity, factors and matrix"""

    def test_sensitivity(self, oo_path):
        result = invoke("sensitivity", oo_path)
        assert result.exit_code == 0
        assert "Per RCAF point = 1.48" in result.stdout
        assert "17.70" in result.stdout

    def test_factors(self):
        result = invoke("factors")
        lines = result.stdout.splitlines()
        assert len(lines) == 14
        assert lines[0].startswith("f1")
        assert lines[-1].endswith("Level of the ease of use demand")

    def test_matrix(self):
        result = invoke("matrix")
        assert result.exit_code == 0
        assert result.stdout == render_matrix(default_matrix())

    def test_matrix_override(self, write_sheet):
        path = write_sheet(
            "[matrix.EQ]\ndet_breaks = 1 2\nref_breaks = 0 1\n"
            "grid = l l a / l a h / a h h\n",
            "matrix.fpa",
        )
        result = invoke("matrix", "--matrix", path)
        assert "[matrix.EQ]\ndet_breaks = 1 2\n" in result.stdout

    def test_no_arguments_shows_help(self):
        result = invoke()
        assert "compute" in result.output


if __name__ == "__main__":
    pytest.main([__file__])
