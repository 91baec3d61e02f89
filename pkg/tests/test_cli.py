"""Command line behavior: output shapes, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from bidouble.cli import main
from bidouble.geography import canonical_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstruct:
    def test_human_output(self, capsys):
        code, out, err = run(capsys, "construct", "20", "7")
        assert code == 0
        assert err == ""
        assert "region: Genus2General" in out
        assert "invariants: Ksq = 20, chi = 7, pg = 6, q = 0" in out
        assert "status: OK" in out

    def test_json_output_is_canonical(self, capsys):
        code, out, _ = run(capsys, "construct", "17", "5", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "construction"
        assert doc["region"] == "Genus3"
        assert out == canonical_json(doc)

    def test_not_admissible_exit_two(self, capsys):
        code, out, err = run(capsys, "construct", "0", "5")
        assert code == 2
        assert "not admissible" in err

    def test_not_covered_exit_two_names_gap(self, capsys):
        code, _, err = run(capsys, "construct", "9", "1")
        assert code == 2
        assert "not covered" in err
        assert "8chi-8 < K^2 < 9chi" in err

    def test_resolved_family_mentions_origin(self, capsys):
        _, out, _ = run(capsys, "construct", "7", "3")
        assert "resolved from:" in out
        assert "triple points p" in out


class TestDegenerate:
    def test_human_output_quarter_point(self, capsys):
        code, out, _ = run(capsys, "degenerate", "20", "7")
        assert code == 0
        assert "QuarterPoint x1 (index 2) at p" in out
        assert "gorenstein: no" in out
        assert "status: OK" in out

    def test_human_output_noether(self, capsys):
        code, out, _ = run(capsys, "degenerate", "4", "5")
        assert code == 0
        assert "NonNormalGluing x6 (index 2) along D0" in out
        assert "normalization: C1 = 0, C2 = 0, C3 = 4D0+6F (two disjoint copies)" in out

    def test_product_refuses(self, capsys):
        code, _, err = run(capsys, "degenerate", "8", "1")
        assert code == 2
        assert "product" in err

    def test_json_kind(self, capsys):
        code, out, _ = run(capsys, "degenerate", "2", "4", "--json")
        assert code == 0
        assert json.loads(out)["kind"] == "degeneration"


class TestVerify:
    def write_doc(self, capsys, tmp_path, *argv):
        _, out, _ = run(capsys, *argv)
        path = tmp_path / "cert.json"
        path.write_text(out, encoding="utf-8")
        return path

    @pytest.mark.parametrize(
        "argv",
        [
            ("construct", "20", "7", "--json"),
            ("construct", "7", "3", "--json"),
            ("construct", "24", "3", "--json"),
            ("degenerate", "4", "5", "--json"),
            ("degenerate", "17", "5", "--json"),
        ],
    )
    def test_fresh_documents_pass(self, capsys, tmp_path, argv):
        path = self.write_doc(capsys, tmp_path, *argv)
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0
        assert "verified: PASS" in out
        assert "MISMATCH" not in out

    def test_tampered_invariants_fail(self, capsys, tmp_path):
        path = self.write_doc(capsys, tmp_path, "construct", "20", "7", "--json")
        doc = json.loads(path.read_text())
        doc["invariants"]["pg"] = 7
        doc["invariants"]["q"] = 1
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 1
        assert "MISMATCH invariants" in out
        assert "verified: FAIL" in out

    def test_tampered_region_fails(self, capsys, tmp_path):
        path = self.write_doc(capsys, tmp_path, "construct", "8", "3", "--json")
        doc = json.loads(path.read_text())
        doc["region"] = "NoetherLine"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 1
        assert "MISMATCH region" in out

    def test_tampered_ampleness_fails(self, capsys, tmp_path):
        path = self.write_doc(capsys, tmp_path, "construct", "7", "3", "--json")
        doc = json.loads(path.read_text())
        doc["ampleness"] = "Ample"
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 1
        assert "MISMATCH ampleness" in out

    def test_tampered_ledger_fails(self, capsys, tmp_path):
        path = self.write_doc(capsys, tmp_path, "degenerate", "4", "5", "--json")
        doc = json.loads(path.read_text())
        doc["ledger"][0]["count"] = 5
        path.write_text(json.dumps(doc))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 1
        assert "MISMATCH ledger" in out

    def test_json_report(self, capsys, tmp_path):
        path = self.write_doc(capsys, tmp_path, "construct", "1", "2", "--json")
        code, out, _ = run(capsys, "verify", str(path), "--json")
        assert code == 0
        report = json.loads(out)
        assert report["ok"] is True
        assert {c["name"] for c in report["checks"]} >= {
            "region",
            "lineBundles",
            "invariants",
            "requestedMatch",
            "sideConditions",
            "ampleness",
        }

    def test_unreadable_file_exit_two(self, capsys, tmp_path):
        path = tmp_path / "nope.json"
        code, _, err = run(capsys, "verify", str(path))
        assert code == 2
        assert "cannot read" in err

    def test_not_json_exit_two(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("definitely not json")
        code, _, err = run(capsys, "verify", str(path))
        assert code == 2
        assert "not JSON" in err

    def test_unknown_kind_exit_two(self, capsys, tmp_path):
        path = tmp_path / "odd.json"
        path.write_text('{"kind": "mystery"}')
        code, _, err = run(capsys, "verify", str(path))
        assert code == 2
        assert "unknown certificate kind" in err

    def test_missing_field_exit_two(self, capsys, tmp_path):
        path = tmp_path / "cut.json"
        path.write_text('{"kind": "construction", "requested": {"ksq": 1, "chi": 2}}')
        code, _, err = run(capsys, "verify", str(path))
        assert code == 2
        assert "missing field" in err


class TestAtlas:
    def test_stdout_csv(self, capsys):
        code, out, _ = run(capsys, "atlas", "--chi-max", "1")
        assert code == 0
        assert out.startswith("chi,Ksq,region,")
        assert out.count("\n") == 10

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        _, out, _ = run(capsys, "atlas", "--chi-max", "2", "--format", "svg")
        path = tmp_path / "atlas.svg"
        code, out2, _ = run(
            capsys, "atlas", "--chi-max", "2", "--format", "svg", "--out", str(path)
        )
        assert code == 0
        assert out2 == ""
        assert path.read_text(encoding="utf-8") == out

    def test_repeat_runs_byte_identical(self, capsys):
        _, first, _ = run(capsys, "atlas", "--chi-max", "3", "--format", "json")
        _, second, _ = run(capsys, "atlas", "--chi-max", "3", "--format", "json")
        assert first == second


class TestCheck:
    def test_small_sweep_passes(self, capsys):
        code, out, _ = run(capsys, "check", "--chi-max", "2")
        assert code == 0
        assert "checks: 9/9 passed" in out
        assert "ok oracleSample: 10000 samples, 0 mismatches" in out


class TestSubprocess:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "bidouble", "construct", "8", "1", "--json"],
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["region"] == "ProductLine"
        assert doc["invariants"] == {
            "ksq": 8,
            "chi": 1,
            "pg": 4,
            "q": 4,
            "pgEstimated": False,
        }
