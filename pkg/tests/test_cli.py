import json
import subprocess
import sys

import pytest

from inventory.cli import read_config, run


def cli(*args, check=None):
    proc = subprocess.run([sys.executable, "-m", "inventory", *args], capture_output=True, text=True, timeout=300)
    if check is not None:
        assert proc.returncode == check, proc.stderr
    return proc


def test_orbit_text_ends_at_self_description():
    out = cli("orbit", "1381", check=0).stdout.strip().splitlines()
    assert out[-1] == "fixed point 1112233348, read aloud 3122331418"
    assert "preperiod 6, period 1" in out


def test_orbit_json_and_repeat():
    data = json.loads(cli("orbit", "--repeat", "6{6}+7{7}", "--format", "json", check=0).stdout)
    assert (data["preperiod"], data["period"]) == (12, 3)


def test_output_is_deterministic():
    for args in (["orbit", "(12)3", "--format", "json"], ["loops", "--format", "json"],
                 ["ancestry", "112233", "--format", "dot"], ["backtrack", "222->4", "--format", "json"]):
        assert cli(*args).stdout == cli(*args).stdout


def test_loops_census():
    out = cli("loops", check=0).stdout
    assert out.strip().endswith("total 9 cycles")


@pytest.mark.parametrize("args", [
    ["loops", "--n", "7", "--format", "dot"],
    ["ancestry", "112233", "--max-depth", "2", "--format", "dot"],
    ["backtrack", "222->4", "--format", "dot"],
])
def test_dot_outputs_parse(args):
    pydot = pytest.importorskip("pydot")
    text = cli(*args, check=0).stdout
    graphs = pydot.graph_from_dot_data(text)
    assert graphs and len(graphs) == 1


def test_loops_dot_marks_two_cycles():
    text = cli("loops", "--n", "7", "--format", "dot", check=0).stdout
    assert text.count("penwidth") == 4


def test_parse_error_exit_code_and_offset():
    proc = cli("orbit", "11(3")
    assert proc.returncode == 1
    assert "offset 2" in proc.stderr


def test_budget_exit_code():
    assert cli("orbit", "--repeat", "6{6}+7{7}", "--max-iters", "3").returncode == 2
    assert cli("ancestry", "123456", "--max-depth", "3", "--budget", "5").returncode == 2


def test_empty_input_warns():
    proc = cli("orbit", "", check=0)
    assert "empty" in proc.stderr


def test_verify_sweep_exit_zero():
    data = json.loads(cli("verify", "sweep", "--max-order", "4", "--max-elem", "5", "--workers", "2",
                          "--format", "json", check=0).stdout)
    assert data["passed"] and data["result"]["starts"] == 125


def test_verify_sharp_reports_failure():
    proc = cli("verify", "sharp", "--k-max", "8", "--format", "json")
    assert proc.returncode == 1
    rows = json.loads(proc.stdout)["result"]
    assert {(r["family"], r["k"]) for r in rows if not r["ok"]} >= {("k{k+1}", 7)}


def test_verify_small_checks():
    assert cli("verify", "recurrence", "--format", "json", check=0).stdout.count("61660878524") == 1
    assert cli("verify", "bound", "1381", check=0).stdout.strip().endswith("PASS")
    assert "small-gn" in cli("verify", "predict", "--repeat", "6{6}+7{7}", check=0).stdout
    assert "2132231a" in cli("verify", "classify", "1", check=0).stdout


def test_verify_heights():
    assert cli("verify", "heights").returncode == 1
    assert cli("verify", "heights", "--amended", check=0).stdout.strip().endswith("PASS")


def test_variation_orbit():
    out = cli("variation", "--preset", "nounless10", "--seed", "digits:6210001000", check=0).stdout
    assert "preperiod 0, period 1" in out
    data = json.loads(cli("variation", "orbit", "--preset", "oeig:3", "--seed", "1381", "--format", "json",
                          check=0).stdout)
    assert data["period"] == 2
    out = cli("variation", "--preset", "stig", "--seed", "0->0, inf->0, *->1", check=0).stdout
    assert "1→∞, 2→2, 4→2, ∞→2, *→1" in out


def test_variation_no_cycle_exit_code():
    proc = cli("variation", "--preset", "floor:-1", "--seed", "{-1,0}", "--max-iters", "50")
    assert proc.returncode == 2
    assert "heuristic" in proc.stdout


def test_variation_search_json():
    data = json.loads(cli("variation", "search", "--preset", "floor:0", "--max-order", "2", "--max-elem", "2",
                          "--format", "json", check=0).stdout)
    assert data["seeds"] == data["looped"] == 9


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults\nmax-iters = 3\nformat=json\n")
    assert read_config(str(cfg)) == {"max_iters": "3", "format": "json"}
    assert cli("--config", str(cfg), "orbit", "--repeat", "6{6}+7{7}").returncode == 2
    proc = cli("--config", str(cfg), "orbit", "1381", "--max-iters", "50", check=0)
    assert json.loads(proc.stdout)["period"] == 1


def test_backtrack_with_explicit_new_values():
    out = cli("backtrack", "24->2", "--new", "4,m", check=0).stdout
    assert "nodes 92" in out
    assert cli("backtrack", "2->empty", "--new", "2,m", "--budget", "300").returncode == 2


def test_usage_errors():
    proc = cli("nope")
    assert proc.returncode == 1 and "usage:" in proc.stderr
    assert run(["backtrack", "222-4"]) == 1
    with pytest.raises(SystemExit) as exc:
        run(["iterate", "1", "--format", "dot"])
    assert exc.value.code == 1


def test_iterate(capsys):
    assert run(["iterate", "1", "--steps", "3"]) == 0
    assert capsys.readouterr().out.splitlines() == ["S_0  1", "S_1  11", "S_2  12", "S_3  1112"]
