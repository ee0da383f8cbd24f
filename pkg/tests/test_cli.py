import json

import pytest

from cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, main
from core.boxes import make_pr_box, write_box_file
from core.wiring import pr_to_racbox_wiring, racbox_to_pr_wiring, write_wiring_file


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBoxCommand:
    def test_pr_correlations(self, capsys):
        code, out, _ = run(capsys, "box", "pr", "check-pr", "--quiet")
        assert code == EXIT_OK
        assert out.startswith("racbox box pr check-pr: PASS")
        assert "CHSH score 1/1" in out

    def test_signalling_racbox_verdict(self, capsys):
        code, out, _ = run(capsys, "box", "sig-racbox", "check-nosig", "--quiet")
        assert code == EXIT_OK
        assert "a_to_b signalling" in out

    def test_show_prints_table(self, capsys):
        code, out, _ = run(capsys, "box", "ns-racbox", "show", "--quiet")
        assert code == EXIT_OK
        assert "box v1" in out

    def test_wrong_signature_is_usage_error(self, capsys):
        code, _, err = run(capsys, "box", "pr", "check-racbox", "--quiet")
        assert code == EXIT_USAGE
        assert err.startswith("racbox: error:")

    def test_file_needs_box_file(self, capsys):
        code, _, err = run(capsys, "box", "file", "show", "--quiet")
        assert code == EXIT_USAGE
        assert "--box-file" in err

    def test_box_from_file(self, capsys, tmp_path):
        path = tmp_path / "pr.box"
        write_box_file(path, make_pr_box())
        code, out, _ = run(capsys, "box", "file", "check-nosig", "--box-file", str(path), "--quiet")
        assert code == EXIT_OK
        assert "nonsignalling in both directions" in out

    def test_missing_box_file(self, capsys, tmp_path):
        missing = tmp_path / "absent.box"
        code, _, err = run(capsys, "box", "file", "show", "--box-file", str(missing), "--quiet")
        assert code == EXIT_USAGE
        assert err.startswith("racbox: error: cannot read box file")
        assert str(missing) in err

    def test_box_file_not_utf8(self, capsys, tmp_path):
        path = tmp_path / "latin1.box"
        path.write_bytes(b"box v1\n\xff\xfe\n")
        code, _, err = run(capsys, "box", "file", "show", "--box-file", str(path), "--quiet")
        assert code == EXIT_USAGE
        assert "cannot read box file" in err

    def test_unknown_box_name(self):
        with pytest.raises(SystemExit) as info:
            build_parser().parse_args(["box", "qr", "show"])
        assert info.value.code == 2


class TestProtocolCommand:
    @pytest.mark.parametrize("name", ["pr-to-racbox", "racbox-to-pr", "roundtrip", "signalling-racbox", "racbox-plus-cbit"])
    def test_named_protocols_pass(self, capsys, name):
        code, out, _ = run(capsys, "protocol", name, "--quiet")
        assert code == EXIT_OK, out

    @pytest.mark.parametrize("p_y1", ["0", "1/4", "1/2", "3/4", "1"])
    def test_erasure_protocol(self, capsys, p_y1):
        code, out, _ = run(capsys, "protocol", "rac-to-pr-erasure", "--p-y1", p_y1, "--quiet")
        assert code == EXIT_OK, out

    def test_invalid_p_y1(self, capsys):
        code, _, err = run(capsys, "protocol", "rac-to-pr-erasure", "--p-y1", "3/2", "--quiet")
        assert code == EXIT_USAGE
        assert "p_y1" in err

    def test_compose_files(self, capsys, tmp_path):
        box_path, wiring_path = tmp_path / "pr.box", tmp_path / "pr-to-racbox.wiring"
        write_box_file(box_path, make_pr_box())
        write_wiring_file(wiring_path, pr_to_racbox_wiring())
        code, out, _ = run(
            capsys, "protocol", "compose", "--box-file", str(box_path), "--wiring-file", str(wiring_path), "--quiet"
        )
        assert code == EXIT_OK
        assert "composed:" in out
        assert "a_to_b=False, b_to_a=False" in out

    def test_incompatible_wiring_fails(self, capsys, tmp_path):
        box_path, wiring_path = tmp_path / "pr.box", tmp_path / "racbox-to-pr.wiring"
        write_box_file(box_path, make_pr_box())
        write_wiring_file(wiring_path, racbox_to_pr_wiring())
        code, out, _ = run(
            capsys, "protocol", "compose", "--box-file", str(box_path), "--wiring-file", str(wiring_path), "--quiet"
        )
        assert code == EXIT_FAILED
        assert "[!!] composition" in out

    def test_missing_wiring_file(self, capsys, tmp_path):
        box_path = tmp_path / "pr.box"
        write_box_file(box_path, make_pr_box())
        code, _, err = run(
            capsys,
            "protocol",
            "compose",
            "--box-file",
            str(box_path),
            "--wiring-file",
            str(tmp_path / "absent.wiring"),
            "--quiet",
        )
        assert code == EXIT_USAGE
        assert "cannot read wiring file" in err

    def test_compose_needs_files(self, capsys):
        code, _, _ = run(capsys, "protocol", "compose", "--quiet")
        assert code == EXIT_USAGE


class TestVerifyCommand:
    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "lemma1", "--quiet")
        assert code == EXIT_OK
        assert "[lemma1] PASS" in out

    def test_json_is_deterministic(self, capsys):
        argv = ("verify", "lemma5", "--samples", "200", "--seed", "3", "--format", "json", "--quiet")
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first[0] == second[0] == EXIT_OK
        assert first[1] == second[1]
        data = json.loads(first[1])
        assert data["kind"] == "verify"
        assert data["config"]["seed"] == 3
        assert data["suites"][0]["counts"] == {"samples": "200", "seed": "3"}

    def test_trace_adds_terms(self, capsys):
        code, out, _ = run(capsys, "verify", "chsh", "--trace", "--quiet")
        assert code == EXIT_OK
        assert "J(a | y=0)" in out

    def test_report_dir(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, "verify", "lemma5", "--samples", "100", "--seed", "5", "--report-dir", str(tmp_path), "--quiet"
        )
        assert code == EXIT_OK
        saved = json.loads((tmp_path / "verify" / "verify-lemma5-seed5.json").read_text())
        assert saved["report"]["passed"] is True

    def test_config_file(self, capsys, tmp_path):
        path = tmp_path / "racbox.json"
        path.write_text(json.dumps({"samples": 50, "output_format": "json"}))
        code, out, _ = run(capsys, "verify", "lemma5", "--config", str(path), "--quiet")
        assert code == EXIT_OK
        assert json.loads(out)["config"]["samples"] == 50

    def test_bad_tolerance(self, capsys):
        code, _, err = run(capsys, "verify", "lemma1", "--tolerance", "-1", "--quiet")
        assert code == EXIT_USAGE
        assert "float_tolerance" in err
