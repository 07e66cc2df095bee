import json
from pathlib import Path

import pytest

from conftest import run_cli

GOLDEN = Path(__file__).parent / "golden"
TRACES = Path(__file__).parent.parent / "traces"


def test_footprint_text():
    code, out = run_cli(["footprint"])
    assert code == 0
    assert "footprint size 22" in out
    assert "X^7(14)" in out


def test_footprint_json_golden():
    code, out = run_cli(["footprint", "--format", "json"])
    assert code == 0
    assert out == GOLDEN.joinpath("footprint.json").read_text()
    data = json.loads(out)
    assert data["size"] == 22


def test_variety_csv():
    code, out = run_cli(["variety", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,y"
    assert len(lines) == 23
    assert "0,0" in lines


def test_bound_json_golden():
    code, out = run_cli(["bound", "--format", "json"])
    assert code == 0
    assert out == GOLDEN.joinpath("bound.json").read_text()
    data = json.loads(out)
    assert len(data["classes"]) == 9
    assert data["delta_map"]["Y"] == 18
    assert data["delta_map"]["X^7"] == 1


def test_bound_single_class():
    code, out = run_cli(["bound", "--lm", "X*Y"])
    assert code == 0
    assert "X*Y: bound 15" in out


def test_bound_with_trace_dir():
    code, out = run_cli(["bound", "--traces", str(TRACES), "--format", "json"])
    assert code == 0
    assert json.loads(out)["delta_map"]["Y^2"] == 13


def test_table_json_golden():
    code, out = run_cli(["table", "--format", "json"])
    assert code == 0
    assert out == GOLDEN.joinpath("table.json").read_text()
    rows = json.loads(out)["rows"]
    main_rows = [(r["k"], r["d"]) for r in rows if not r["supplementary"]]
    assert len(main_rows) == 15
    one_less = sorted(r["k"] for r in rows if r.get("comparison") == "one-less")
    assert one_less == [4, 14, 15, 18]


def test_table_measured():
    code, out = run_cli(["table", "--measure-upto", "2", "--format", "json"])
    assert code == 0
    rows = json.loads(out)["rows"]
    measured = {r["k"]: r for r in rows if "measured_d" in r}
    assert measured[1]["measured_d"] == 22 and measured[1]["exact"]
    assert measured[2]["measured_d"] == 19


def test_oracle_sound_exit_zero():
    code, out = run_cli(["oracle", "--lm", "Y", "--mode", "exhaustive",
                         "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["min_weight"] == 18 and data["sound"] and data["exact"]


def test_oracle_jobs_independent():
    _, out1 = run_cli(["oracle", "--lm", "X*Y", "--format", "json"])
    _, out3 = run_cli(["oracle", "--lm", "X*Y", "--jobs", "3", "--format", "json"])
    assert json.loads(out1)["min_weight"] == json.loads(out3)["min_weight"] == 15


def test_oracle_sample_seeded():
    _, out1 = run_cli(["oracle", "--lm", "X^2*Y^2", "--mode", "sample",
                       "--seed", "9", "--format", "json"])
    _, out2 = run_cli(["oracle", "--lm", "X^2*Y^2", "--mode", "sample",
                       "--seed", "9", "--format", "json"])
    assert out1 == out2
    assert json.loads(out1)["exact"] is False


def test_trace_verify_file():
    code, out = run_cli(["trace-verify", str(TRACES / "s34.trace"),
                         "--lm", "X^2*Y"])
    assert code == 0
    assert "verified bound 12" in out


def test_usage_error_exit_two():
    with pytest.raises(SystemExit) as exc:
        run_cli_raw = __import__("kleincode.cli", fromlist=["main"]).main
        run_cli_raw(["oracle"])  # missing required --lm
    assert exc.value.code == 2


def test_unknown_flag_exit_two():
    code, _ = run_cli(["footprint", "--bogus"])
    assert code == 2


def test_missing_trace_file_reports_error():
    code, _ = run_cli(["trace-verify", "/nonexistent.trace", "--lm", "Y"])
    assert code == 2


def test_outputs_byte_stable():
    for argv in (["footprint", "--format", "json"],
                 ["bound", "--format", "json"],
                 ["table", "--format", "json"]):
        _, a = run_cli(argv)
        _, b = run_cli(argv)
        assert a == b


def test_verify_all_quick_deterministic():
    code1, out1 = run_cli(["verify-all", "--quick", "--seed", "42"])
    assert code1 == 0
    assert "PASS" in out1
    code2, out2 = run_cli(["verify-all", "--quick", "--seed", "42"])
    assert out1 == out2


def test_config_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"generators": ["X", "Y"], "modulus_bits": 0b1011}))
    code, out = run_cli(["variety", "--config", str(cfg), "--format", "json"])
    assert code == 0
    assert json.loads(out)["points"] == [[0, 0]]
    # casebound-dependent commands refuse non-default configurations
    code, _ = run_cli(["table", "--config", str(cfg)])
    assert code == 2 or code == 1


def test_verify_all_jobs_independent():
    _, out1 = run_cli(["verify-all", "--quick", "--seed", "7"])
    _, out2 = run_cli(["verify-all", "--quick", "--seed", "7", "--jobs", "3"])
    assert out1 == out2
