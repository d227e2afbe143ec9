"""Table parsing, the pipeline wrapper, sweep determinism, CLI exit codes."""

from __future__ import annotations

import csv
import json

import pytest

from linkwidth import SearchBudget
from linkwidth.cli import (
    CliError,
    TableEntry,
    detect_format,
    load_code,
    main,
    parse_table,
    run_pipeline,
    sweep,
)

from conftest import TREFOIL


class TestParseTable:
    def test_minimal(self):
        entries = parse_table("a\tgauss\tO1,U1\n")
        assert entries == [TableEntry("a", "gauss", "O1,U1")]

    def test_comments_and_blanks(self):
        text = "# heading\n\na\tgauss\tO1,U1\n  # indented comment\n"
        assert len(parse_table(text)) == 1

    def test_optional_columns(self):
        entries = parse_table("a\tdt\t4 6 2\t1\t2\n")
        assert entries[0].is_prime is True
        assert entries[0].bridge_lower == 2

    @pytest.mark.parametrize(
        "line,fragment",
        [
            ("a\tgauss\n", "expected 3 to 5"),
            ("a\tgauss\tx\ty\tz\tw\n", "expected 3 to 5"),
            ("bad name\tgauss\tO1,U1\n", "bad link name"),
            ("a\tpdf\tO1,U1\n", "unknown format"),
            ("a\tgauss\tO1,U1\na\tgauss\tO1,U1\n", "duplicate link name"),
        ],
    )
    def test_rejects(self, line, fragment):
        with pytest.raises(CliError, match=fragment):
            parse_table(line)

    def test_line_numbers_in_errors(self):
        with pytest.raises(CliError, match="table:3"):
            parse_table("# ok\na\tgauss\tO1,U1\nb\tbad\n")


class TestDetectFormat:
    def test_gauss(self):
        assert detect_format(TREFOIL) == "gauss"

    def test_dt(self):
        assert detect_format("4 6 2") == "dt"
        assert detect_format("lengths:2,2 4 2") == "dt"

    def test_load_detected(self):
        code = "4 6 2"
        assert load_code(detect_format(code), code) == load_code("dt", code)

    def test_load_rejects_unknown(self):
        with pytest.raises(CliError, match="unknown code format"):
            load_code("auto", "4 6 2")


class TestRunPipeline:
    def test_trefoil_row(self):
        row, cert, status = run_pipeline(TableEntry("t", "gauss", TREFOIL, True, 2))
        assert row.error == ""
        assert status == "exact"
        assert row.n_crossings == 3
        assert row.wirt_upper == 2
        assert row.trunk_value == 4
        assert row.trunk_status == "exact(4)[two-bridge]"
        assert row.lex_multiset == "{4,2,2}"
        assert row.sum_width == 8
        assert row.height == 1
        assert row.dbc_bound == "{1}"
        assert row.tube_3x1 is True
        assert cert is not None and cert.startswith("# link: t")

    def test_bad_code_lands_in_error_column(self):
        row, cert, status = run_pipeline(TableEntry("x", "gauss", "O1,O1"))
        assert "visited O twice" in row.error
        assert cert is None
        assert status == "error"

    def test_two_circles_row(self):
        row, cert, status = run_pipeline(TableEntry("x", "gauss", ";"))
        assert row.error == ""
        assert row.n_crossings == 0 and row.n_components == 2
        assert row.lex_multiset == "{2,2,0}"
        assert row.trunk_value == 2

    def test_unsupported_metadata_degrades_to_upper(self):
        # a bridge floor with no matching rule leaves only the witness bound
        row, _, status = run_pipeline(
            TableEntry("p", "gauss", TREFOIL, True, 9)
        )
        assert row.error == ""
        assert row.trunk_status.startswith("upper(")


class TestSweep:
    TABLE = (
        "t\tgauss\tO1,U2,O3,U1,O2,U3\t1\t2\n"
        "h\tgauss\tO1,U2;U1,O2\t1\t2\n"
        "bad\tgauss\tO1,O1\n"
    )

    def entries(self):
        return parse_table(self.TABLE)

    def test_csv_report(self, tmp_path):
        out = tmp_path / "report.csv"
        rows, summary, code = sweep(self.entries(), out)
        assert code == 0
        assert [r.name for r in rows] == ["t", "h", "bad"]
        with open(out, newline="") as fh:
            parsed = list(csv.DictReader(fh))
        assert parsed[0]["name"] == "t"
        assert parsed[0]["lex_multiset"] == "{4,2,2}"
        assert parsed[2]["error"] != ""
        assert "exact=2" in summary and "errors=1" in summary

    def test_certificates_written_and_verifiable(self, tmp_path):
        out = tmp_path / "report.csv"
        sweep(self.entries(), out)
        certs = sorted(p.name for p in tmp_path.glob("*.cert"))
        assert certs == ["h.cert", "t.cert"]
        assert main(["verify", str(tmp_path / "t.cert"), str(tmp_path / "h.cert")]) == 0

    def test_json_report(self, tmp_path):
        out = tmp_path / "report.json"
        rows, _, _ = sweep(self.entries(), out, fmt="json")
        data = json.loads(out.read_text())
        assert [r["name"] for r in data] == ["t", "h", "bad"]
        assert data[0]["trunk_value"] == 4

    def test_jobs_do_not_change_bytes(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        sweep(self.entries(), a, jobs=1)
        sweep(self.entries(), b, jobs=2)
        assert a.read_bytes() == b.read_bytes()

    def test_jobs_env_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LINKWIDTH_JOBS", "2")
        out = tmp_path / "report.csv"
        rows, _, code = sweep(self.entries(), out)
        assert code == 0 and len(rows) == 3

    def test_strict_budget_exit(self, tmp_path):
        out = tmp_path / "report.csv"
        entries = parse_table("k7\tgauss\tU1,O2,U3,O1,U4,U5,O4,U6,O5,O7,U7,O3,U2,O6\n")
        _, _, code = sweep(
            entries, out, budget=SearchBudget(max_states=2), strict=True
        )
        assert code == 3


class TestMain:
    def test_convert_gauss_to_dt(self, capsys):
        assert main(["convert", "--to", "dt", TREFOIL]) == 0
        assert capsys.readouterr().out.strip() == "4 6 2"

    def test_convert_roundtrip(self, capsys):
        assert main(["convert", "--to", "gauss", "4 6 2"]) == 0
        assert capsys.readouterr().out.strip() == TREFOIL

    def test_widths_reports_values(self, capsys):
        assert main(["widths", TREFOIL]) == 0
        out = capsys.readouterr().out
        assert "{4,2,2}" in out and "trunk" in out

    def test_widths_writes_cert(self, tmp_path, capsys):
        cert = tmp_path / "t.cert"
        assert main(["widths", "--cert", str(cert), TREFOIL]) == 0
        assert main(["verify", str(cert)]) == 0

    def test_widths_bad_code_exit(self, capsys):
        assert main(["widths", "O1,O1"]) == 2

    def test_verify_rejects_tampering(self, tmp_path, capsys):
        cert = tmp_path / "t.cert"
        main(["widths", "--cert", str(cert), TREFOIL])
        cert.write_text(cert.read_text().replace("S 1 4", "S 1 6"))
        assert main(["verify", str(cert)]) == 2

    def test_sweep_end_to_end(self, tmp_path, capsys):
        table = tmp_path / "links.tsv"
        table.write_text("t\tgauss\t" + TREFOIL + "\t1\t2\n")
        out = tmp_path / "report.csv"
        assert main(["sweep", str(table), "--out", str(out)]) == 0
        assert out.exists()

    def test_usage_error(self, capsys):
        assert main(["convert", TREFOIL]) == 1
        assert "usage error" in capsys.readouterr().err
