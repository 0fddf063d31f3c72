from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from fpnkit.cli import main
from fpnkit.suites import ANCHORS, SUITES, ConfigError, SuiteConfig, UnknownSuiteError, run_suite


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.mark.parametrize("name", SUITES)
def test_suite_jsonl_is_deterministic(name):
    a = run("suite", name, "--format", "jsonl", "--seed", "3")
    b = run("suite", name, "--format", "jsonl", "--seed", "3")
    assert a == b
    code, text = a
    records = [json.loads(line) for line in text.splitlines()]
    assert records[-1]["summary"]["fail"] == 0 and code == 0
    for r in records[:-1]:
        assert r["anchor"] in ANCHORS and r["anchor_text"] == ANCHORS[r["anchor"]]
        assert r["status"] in ("pass", "fail", "evidence")


def test_exit_status_law_on_failure():
    # two windows cannot show strictly growing counts, so the growth claims fail
    code, text = run("suite", "example1-chain", "--windows", "2,4", "--format", "jsonl")
    records = [json.loads(line) for line in text.splitlines()]
    assert code == 1
    assert records[-1]["status"] == "fail" and records[-1]["summary"]["fail"] > 0


def test_human_report():
    code, text = run("suite", "z4-ideal")
    assert code == 0
    assert text.startswith("suite z4-ideal (seed 0, windows 2,4,8,16)")
    assert text.rstrip().endswith("PASS")


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"windows": [3, 5, 7], "seed": 9, "format": "jsonl"}))
    code, text = run("suite", "appendixA-kernel-growth", "--config", str(cfg), "--seed", "1")
    last = json.loads(text.splitlines()[-1])
    assert code == 0
    assert last["config"] == {"suite": "appendixA-kernel-growth", "windows": [3, 5, 7], "seed": 1,
                              "samples": 200, "format": "jsonl"}


def test_bad_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run("suite", "z4-ideal", "--config", str(cfg))[0] == 2
    assert run("suite", "z4-ideal", "--windows", "4,2")[0] == 2
    assert "ConfigError" in capsys.readouterr().err


def test_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("FPNKIT_OUTPUT_DIR", str(tmp_path / "out"))
    code, text = run("suite", "z4-ideal", "--format", "jsonl")
    assert (tmp_path / "out" / "z4-ideal.jsonl").read_text() == text


def test_reduce_and_member():
    code, text = run("reduce", "<(4; 1), (6; 2)>")
    assert code == 0 and text.splitlines()[0] == "(2; 1,2)"
    code, text = run("member", "<(2; 2)>", "(0; 2)")
    assert code == 0 and text.startswith("true")
    code, text = run("member", "<(2; )>", "(1; )")
    assert text == "false\n  obstruction: integer\n"


def test_parse_error_exits_2(capsys):
    assert run("reduce", "<(3; 1,1)>")[0] == 2
    assert "line 1, column 8" in capsys.readouterr().err


def test_classify_ext_tor(tmp_path):
    rx = tmp_path / "rx.txt"
    rx.write_text("presentation R/(x1)\nSQ[F2] 1 1\nx1\n")
    code, text = run("classify", str(rx), "--level", "2", "--windows", "2,4,8")
    assert code == 0 and text.splitlines()[0] == "R/(x1): SyzygyGrowth(stage 2, counts 2,4,8)"
    z2 = tmp_path / "z2.txt"
    z2.write_text("presentation Z/2\nZ 1 1\n2\n")
    assert run("ext", str(z2), str(z2))[1].splitlines()[0] == "Z/2"
    assert run("tor", str(z2), str(z2), "--degree", "2")[1] == "0\n"
    assert run("ext", str(tmp_path / "missing.txt"), str(z2))[0] == 2


def test_unknown_suite():
    with pytest.raises(SystemExit) as info:
        main(["suite", "nope"])
    assert info.value.code == 2
    with pytest.raises(UnknownSuiteError):
        run_suite("nope")
    with pytest.raises(ConfigError):
        SuiteConfig("z4-ideal", windows=())


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fpnkit.cli", "suite", "z4-ideal", "--format", "jsonl"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == run("suite", "z4-ideal", "--format", "jsonl")[1]
