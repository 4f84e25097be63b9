import json
import pathlib
import subprocess
import sys

import jsonschema
import pytest

from equivar.cli import main

DOCS = pathlib.Path(__file__).resolve().parents[1] / "docs"
PAYLOAD_SCHEMA = json.loads((DOCS / "cli_output.schema.json").read_text())
CHECK_SCHEMA = json.loads((DOCS / "verify_check.schema.json").read_text())


def run_json(capsys, argv):
    code = main(["--format", "json", *argv])
    out = capsys.readouterr().out.strip().splitlines()
    return code, [json.loads(line) for line in out]


def test_dim_command(capsys):
    code, lines = run_json(capsys, ["dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"])
    assert code == 0
    payload = lines[-1]
    jsonschema.validate(payload, PAYLOAD_SCHEMA)
    assert payload["result"] == {"dim": 12, "closed_form": 12, "match": True}


def test_dim_trivial_case(capsys):
    code, lines = run_json(capsys, ["dim", "--kind", "P", "--s", "0", "--n", "0", "--N", "4"])
    assert code == 0
    assert lines[-1]["result"]["dim"] == 1


def test_dim_p_example(capsys):
    code, lines = run_json(capsys, ["dim", "--kind", "P", "--s", "1", "--n", "1", "--N", "3"])
    assert code == 0
    assert lines[-1]["result"]["dim"] == 24


def test_dim_dump_includes_module(capsys):
    code, lines = run_json(capsys, ["dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "2", "--dump"])
    assert code == 0
    mod = lines[-1]["result"]["module"]
    assert mod["dim"] == 4 and mod["cfg"] == {"N": 2, "s": 1}


def test_hom_command_and_direction(capsys):
    code, lines = run_json(capsys, ["hom", "--src", "Q,1,2", "--dst", "Q,1,1", "--N", "4"])
    assert code == 0
    assert lines[-1]["result"]["dim_stable"] == 2
    code, lines = run_json(capsys, ["hom", "--src", "Q,1,1", "--dst", "Q,1,2", "--N", "4"])
    assert code == 0
    assert lines[-1]["result"]["dim_stable"] == 0


def test_hom_reports_all_three_dimensions(capsys):
    code, lines = run_json(capsys, ["hom", "--src", "Q,1,1", "--dst", "Q,1,1", "--N", "3"])
    assert code == 0
    result = lines[-1]["result"]
    assert set(result) == {"dim_at_N", "dim_at_N_plus_1", "dim_stable"}
    assert result["dim_stable"] <= min(result["dim_at_N"], result["dim_at_N_plus_1"])


def test_ext_stable_command(capsys):
    code, lines = run_json(capsys, ["ext", "--mode", "stable", "--s", "1", "--N", "3", "--max-i", "3"])
    assert code == 0
    assert lines[-1]["result"]["dims"] == [1, 1, 1, 1]


def test_ext_truncated_command(capsys):
    code, lines = run_json(capsys, [
        "ext", "--mode", "truncated", "--s", "1",
        "--src", "Q,1,1", "--dst", "P,1,2", "--N", "3", "--max-i", "2",
    ])
    assert code == 0
    dims = lines[-1]["result"]["dims"]
    assert dims[1] == 0 and dims[2] == 0


def test_tor_command(capsys):
    code, lines = run_json(capsys, ["tor", "--s", "1", "--r", "2", "--N", "3"])
    assert code == 0
    result = lines[-1]["result"]
    assert result["matches_Q"] is True
    assert result["dim"] == "12"


def test_kclass_commands(capsys):
    code, lines = run_json(capsys, ["kclass", "--op", "p2q", "--s", "1", "--lambda", "2"])
    assert code == 0
    assert lines[-1]["result"]["classes"] == {"Q(2)": [3, 1], "Q(1,1)": [1, 1]}
    code, lines = run_json(capsys, ["kclass", "--op", "q2p", "--s", "1", "--lambda", "1"])
    assert lines[-1]["result"]["classes"] == {"P(1)": [1, 2]}
    code, lines = run_json(capsys, ["kclass", "--op", "expand", "--s", "1", "--lambda", "1", "--kind", "Q"])
    assert lines[-1]["result"]["expansion"] == {"1": {"1": [1, 2]}}
    code, lines = run_json(capsys, ["kclass", "--op", "char", "--s", "1", "--n", "2"])
    assert lines[-1]["result"]["values"] == {"1,1": "4", "2": "2"}


def test_cas_commands(capsys):
    code, lines = run_json(capsys, ["cas", "--op", "hom", "--m", "1", "--n", "1", "--s", "1"])
    assert lines[-1]["result"]["dim"] == 2
    code, lines = run_json(capsys, ["cas", "--op", "injective", "--m", "1", "--n", "1", "--s", "1"])
    assert lines[-1]["result"] == {"dim": 2, "socle_dim": 1}
    code, lines = run_json(capsys, ["cas", "--op", "compare", "--m", "1", "--n", "1", "--s", "1"])
    assert code == 0 and lines[-1]["result"]["match"] is True


def test_bad_parameters_exit_two(capsys):
    assert main(["dim", "--kind", "Q", "--s", "1", "--n", "9", "--N", "3"]) == 2
    capsys.readouterr()
    assert main(["hom", "--src", "X,1,1", "--dst", "Q,1,1", "--N", "3"]) == 2
    capsys.readouterr()
    assert main(["kclass", "--op", "p2q", "--s", "1", "--lambda", "1,2"]) == 2
    capsys.readouterr()
    assert main(["verify", "--suite", "nosuch"]) == 2
    capsys.readouterr()


def test_cap_and_dimension_guard(capsys):
    assert main(["dim", "--kind", "P", "--s", "2", "--n", "1", "--N", "7"]) == 2
    capsys.readouterr()
    assert main(["--max-dim", "10", "dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"]) == 2
    capsys.readouterr()


def test_env_override_for_dimension_guard(capsys, monkeypatch):
    monkeypatch.setenv("EQUIVAR_MAX_DIM", "10")
    assert main(["dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"]) == 2
    capsys.readouterr()
    monkeypatch.setenv("EQUIVAR_MAX_DIM", "100000")
    assert main(["dim", "--kind", "Q", "--s", "1", "--n", "1", "--N", "3"]) == 0
    capsys.readouterr()


def test_json_output_is_deterministic(capsys):
    def payload(argv):
        code, lines = run_json(capsys, argv)
        assert code == 0
        data = lines[-1]
        data.pop("runtime_ms")
        return json.dumps(data, sort_keys=True)

    argv = ["hom", "--src", "Q,1,1", "--dst", "Q,1,0", "--N", "3"]
    assert payload(argv) == payload(argv)
    argv = ["kclass", "--op", "p2q", "--s", "2", "--lambda", "2,1"]
    assert payload(argv) == payload(argv)


def test_verify_single_suite_json_lines(capsys):
    code, lines = run_json(capsys, ["verify", "--suite", "qqmaps", "--max-N", "3"])
    assert code == 0
    *checks, summary = lines
    assert summary["result"]["failures"] == 0
    assert summary["result"]["checks"] == len(checks)
    for check in checks:
        jsonschema.validate(check, CHECK_SCHEMA)
        assert check["ok"] is True


def test_verify_parallel_jobs_match_serial(capsys):
    code1, lines1 = run_json(capsys, ["verify", "--suite", "all", "--max-N", "2", "--jobs", "1"])
    code2, lines2 = run_json(capsys, ["verify", "--suite", "all", "--max-N", "2", "--jobs", "2"])
    assert code1 == code2 == 0
    strip = lambda lines: sorted(
        json.dumps({k: v for k, v in c.items() if k != "runtime_ms"}, sort_keys=True)
        for c in lines[:-1]
    )
    assert strip(lines1) == strip(lines2)


def test_console_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "equivar.cli", "--format", "json",
         "dim", "--kind", "Q", "--s", "0", "--n", "0", "--N", "1"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout.strip().splitlines()[-1])
    assert payload["result"]["dim"] == 1
