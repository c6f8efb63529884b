import json
import shutil
import subprocess

import pytest

from thickcech.cli import ScenarioConfig, emit_report, main, run_scenario


def run(capsysbinary, *argv):
    code = main(list(argv))
    return code, capsysbinary.readouterr()


def test_rank_scenario_passes(capsysbinary):
    code, out = run(capsysbinary, "char0-rank", "--t", "2")
    assert code == 0
    report = json.loads(out.out)
    assert report["outcome"] == "pass"
    assert report["details"]["rank"] == 1


def test_log_identity_passes(capsysbinary):
    code, _ = run(capsysbinary, "log-identity", "--t", "2")
    assert code == 0


def test_json_is_byte_identical_across_runs(capsysbinary):
    _, first = run(capsysbinary, "h6-rank", "--j", "-7")
    _, second = run(capsysbinary, "h6-rank", "--j", "-7")
    assert first.out == second.out
    assert "duration" not in first.out.decode()
    assert json.loads(first.out)["details"] == {"rank": 6, "enumerated": 6}


def test_timing_is_opt_in(capsysbinary):
    _, out = run(capsysbinary, "h6-rank", "--timing")
    assert "duration_s" in json.loads(out.out)


def test_tsv_has_header_and_outcome_row(capsysbinary):
    code, out = run(capsysbinary, "char0-eta-cocycle", "--t", "2", "--format", "tsv")
    lines = out.out.decode().splitlines()
    assert lines[0] == "scenario\tcheck\titem\tresult"
    assert lines[-1] == "char0-eta-cocycle\toutcome\t-\tpass"
    assert len(lines) == 2 + 15
    assert code == 0


def test_human_report_names_literal_witness(capsysbinary):
    _, out = run(capsysbinary, "char0-eta-cocycle", "--t", "3", "--format", "human")
    text = out.out.decode()
    assert text.startswith("char0-eta-cocycle: PASS")
    assert "literal_table_cocycle: False" in text
    assert "literal_table_witness: " in text


def test_inconclusive_exit(capsysbinary):
    code, out = run(capsysbinary, "char0-rank", "--t", "2", "--cutoff", "2")
    assert code == 3
    assert json.loads(out.out)["outcome"] == "inconclusive"


def test_fail_exit_when_no_classes_exist(capsysbinary):
    # q2 exceeds q here, so the construction yields nothing
    code, out = run(capsysbinary, "charp-family", "--char", "5", "--t", "3")
    assert code == 2
    assert json.loads(out.out)["details"]["m_list"] == []


@pytest.mark.parametrize("argv", [
    ["nope"],
    ["char0-rank", "--char", "4"],
    ["char0-rank", "--char", "2"],
    ["charp-family", "--char", "0"],
    ["char0-rank", "--multidegree", "1,2"],
    ["char0-rank", "--cutoff", "4", "--max-cutoff", "3"],
    ["h6-rank", "--format", "xml"],
])
def test_usage_errors(capsysbinary, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 64


def test_out_file(tmp_path, capsysbinary):
    target = tmp_path / "report.json"
    assert main(["h6-rank", "--out", str(target)]) == 0
    assert capsysbinary.readouterr().out == b""
    assert json.loads(target.read_text())["outcome"] == "pass"


def test_report_round_trips_through_json():
    report = run_scenario(ScenarioConfig("oracle-crosscheck", t=1, degree_bound=4))
    data = json.loads(emit_report(report))
    assert data["scenario"] == "oracle-crosscheck"
    assert data["inputs"] == {"characteristic": 0, "t": 1, "degree_bound": 4}
    assert data["details"]["disagreements"] == 0


def test_unknown_format_rejected():
    report = run_scenario(ScenarioConfig("h6-rank"))
    with pytest.raises(ValueError):
        emit_report(report, "yaml")


@pytest.mark.skipif(shutil.which("verify") is None, reason="console script not installed")
def test_console_script_exit_status():
    done = subprocess.run(["verify", "h6-rank", "--j", "-6", "--format", "tsv"],
                          capture_output=True, text=True)
    assert done.returncode == 0
    assert done.stdout.splitlines()[1] == "h6-rank\th6\tj=-6\t1"
