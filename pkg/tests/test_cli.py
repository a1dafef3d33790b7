from __future__ import annotations

import json

import pytest

from omcert.certificate import serialize_certificate
from omcert.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTopes:
    def test_text_lists_26_lines(self, capsys):
        code, out, _ = run_cli(
            capsys, "topes", "--family", "alternating", "--n", "6", "--rank", "4",
            "--format", "text",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 26
        assert "+-+---" in lines

    def test_json_counts(self, capsys):
        code, out, _ = run_cli(capsys, "topes", "--family", "m2", "--n", "6")
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == doc["expected_count"] == 6
        assert doc["rank"] == 2


class TestAxioms:
    def test_small_instance_passes(self, capsys):
        code, out, _ = run_cli(capsys, "axioms", "--family", "alternating", "--n", "4", "--rank", "2")
        assert code == 0
        doc = json.loads(out)
        assert doc["uniform_tope_axioms_pass"] and doc["covector_axioms_pass"]

    def test_text_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "axioms", "--family", "m2", "--n", "4", "--format", "text"
        )
        assert code == 0
        assert "covector axioms: pass" in out


class TestStrongMap:
    def test_n6_both_methods(self, capsys):
        code, out, _ = run_cli(capsys, "strongmap", "--n", "6")
        assert code == 0
        doc = json.loads(out)
        assert doc["tope_inclusion"]["holds"] and doc["tope_inclusion"]["corank"] == 2
        assert doc["covector_containment"]["holds"]
        assert doc["methods_agree"]

    def test_n8_tope_method_only(self, capsys):
        code, out, _ = run_cli(capsys, "strongmap", "--n", "8")
        assert code == 0
        doc = json.loads(out)
        assert doc["tope_inclusion"]["holds"]
        assert "covector_containment" not in doc


class TestSearchCommand:
    def test_json_certificate(self, capsys):
        code, out, _ = run_cli(capsys, "lemma6")
        assert code == 0
        doc = json.loads(out)
        assert doc["counts"]["combinations_checked"] == 184756
        assert doc["counts"]["survivor_count"] == 20

    def test_text_summary(self, capsys):
        code, out, _ = run_cli(capsys, "lemma6", "--format", "text", "--threads", "2")
        assert code == 0
        assert "combinations checked: 184756" in out
        assert "survivors: 20" in out

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "search.json"
        code, out, _ = run_cli(capsys, "lemma6", "--output", str(path))
        assert code == 0 and out == ""
        doc = json.loads(path.read_text())
        assert doc["counts"]["survivor_count"] == 20

    def test_unwritable_output(self, capsys, tmp_path):
        path = tmp_path / "missing-dir" / "search.json"
        code, _, err = run_cli(capsys, "lemma6", "--output", str(path))
        assert code == 1
        assert "cannot write" in err


class TestVerifyPipeline:
    def test_verify_from_certificate_file(self, capsys, tmp_path, search_certificate):
        path = tmp_path / "search.json"
        path.write_bytes(serialize_certificate(search_certificate))
        code, out, _ = run_cli(capsys, "verify-n8", "--certificate", str(path))
        assert code == 0
        doc = json.loads(out)
        assert doc["conclusion"]["verdict"] == "nonfactorizable"

    def test_corrupted_certificate_exits_1(self, capsys, tmp_path, search_certificate):
        doc = json.loads(serialize_certificate(search_certificate))
        doc["survivors"][0]["topes"][0] = "000000"
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        code, _, err = run_cli(capsys, "verify-n8", "--certificate", str(path))
        assert code == 1
        assert "invalid certificate" in err

    def test_missing_certificate_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "verify-n8", "--certificate", str(tmp_path / "nope.json"))
        assert code == 1
        assert "cannot load" in err

    def test_all_pipeline(self, capsys):
        code, out, _ = run_cli(capsys, "all", "--format", "text")
        assert code == 0
        assert "verdict: nonfactorizable" in out


class TestUsageErrors:
    def test_odd_n_for_m2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["topes", "--family", "m2", "--n", "5"])
        assert exc.value.code == 2

    def test_rank_override_for_m2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["topes", "--family", "m2", "--n", "6", "--rank", "3"])
        assert exc.value.code == 2

    def test_bad_threads(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["lemma6", "--threads", "0"])
        assert exc.value.code == 2

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_bad_rank_range(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["topes", "--family", "alternating", "--n", "4", "--rank", "9"])
        assert exc.value.code == 2
