import json
import subprocess
import sys

import pytest

from lfds_height.cli import analyze, graph_dot, main, validate_report
from lfds_height.errors import ParseError
from lfds_height.oracle import enumerate_system
from lfds_height.system import SystemSpec

from conftest import EXAMPLE_27720


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "ex15.json"
    path.write_text(json.dumps({"modulus": 27720, "matrix": EXAMPLE_27720}))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_text(capsys, example_file):
    code, out, _ = run(capsys, "analyze", "--input", example_file)
    assert code == 0
    assert "thm_b=9" in out and "2^3 * 3^2 * 5^1 * 7^1 * 11^1" in out


def test_analyze_json(capsys, example_file):
    code, out, _ = run(capsys, "analyze", "--input", example_file, "--json")
    doc = json.loads(out)
    validate_report(doc)
    assert [t["product"] for t in doc["per_prime"]] == [9, 4, 0, 1, 0]
    assert doc["bounds"] == {"thm_b": 9, "thm_a": 12, "m_omega": 32, "xu_zou": 60}
    assert doc["height"] == 9
    assert json.loads(json.dumps(doc)) == doc


def test_report_schema_rejects_garbage():
    doc = analyze(SystemSpec.from_rows([[1]], 4))
    validate_report(doc)
    broken = dict(doc)
    del broken["height"]
    with pytest.raises(ParseError):
        validate_report(broken)
    with pytest.raises(ParseError):
        validate_report({**doc, "fixed_point_system": "yes"})


def test_analyze_identity(capsys):
    code, out, _ = run(capsys, "analyze", "--system", "6 2\n1 0\n0 1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["height"] == 0 and doc["fixed_point_system"] is True


def test_malformed_json_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"modulus": 5, "matrix": [[1, 2]')
    code, _, err = run(capsys, "analyze", "--input", str(path))
    assert code == 2 and "error" in err


def test_missing_input_exit_2(capsys):
    assert run(capsys, "height")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_height_and_bounds(capsys):
    code, out, _ = run(capsys, "height", "--system", "25 3\n0 0 5\n1 0 0\n0 1 0", "--json")
    assert code == 0 and json.loads(out)["height"] == 6
    code, out, _ = run(capsys, "bounds", "--system", "25 3\n0 0 5\n1 0 0\n0 1 0", "--json")
    doc = json.loads(out)
    assert (doc["thm_b"], doc["thm_a"], doc["m_omega"], doc["xu_zou"]) == (6, 6, 6, 14)


def test_fps_test(capsys):
    swap = '{"modulus": 5, "matrix": [[0, 1], [1, 0]]}'
    assert run(capsys, "fps-test", "--system", swap)[0] == 0
    assert run(capsys, "fps-test", "--system", swap, "--strict")[0] == 1
    for bound in ("thm-b", "thm-a", "omega", "xu-zou"):
        code, out, _ = run(capsys, "fps-test", "--system", "25 3\n0 0 5\n1 0 0\n0 1 0",
                           "--bound", bound, "--strict", "--json")
        assert code == 0 and json.loads(out)["fixed_point_system"] is True


def test_graph_dot_identity(capsys):
    code, out, _ = run(capsys, "graph", "--system", "2 1\n1", "--dot")
    assert code == 0
    assert "0 -> 0;" in out and "1 -> 1;" in out and out.count("period=1") == 2


def test_graph_dot_doubling():
    out = graph_dot(enumerate_system(SystemSpec.from_rows([[2]], 4)))
    edges = {line.strip() for line in out.splitlines() if "->" in line}
    assert edges == {"0 -> 0;", "1 -> 2;", "2 -> 0;", "3 -> 2;"}
    assert 'label="(3)"' in out


def test_graph_star(capsys):
    code, out, _ = run(capsys, "graph", "--system", "3 2\n0 0\n0 0", "--dot")
    edges = [line for line in out.splitlines() if "->" in line]
    assert len(edges) == 9
    assert sum(e.strip().endswith("-> 0;") for e in edges) == 9
    assert sum(e.strip() != "0 -> 0;" for e in edges) == 8


def test_graph_capacity_exit_3(capsys):
    assert run(capsys, "graph", "--system", "101 3\n1 0 0\n0 1 0\n0 0 1")[0] == 3


def test_verify_default_passes(capsys):
    code, out, _ = run(capsys, "verify", "--count", "20")
    assert code == 0 and "fitting: 20/20" in out


def test_verify_deterministic(capsys):
    first = run(capsys, "verify", "--count", "25", "--seed", "7")
    second = run(capsys, "verify", "--count", "25", "--seed", "7")
    assert first == second


def test_verify_fault_hook(capsys):
    code, out, _ = run(capsys, "verify", "--count", "3", "--inject-fault")
    assert code == 1 and "counterexample" in out


def test_sample_csv(capsys, tmp_path):
    out_path = tmp_path / "z25.csv"
    assert run(capsys, "sample", "--preset", "z25", "--output", str(out_path))[0] == 0
    lines = out_path.read_bytes().decode().split("\n")
    assert lines[0] == "index,height,thm_b,thm_a,m_omega,xu_zou"
    assert len(lines) == 102
    code, out, _ = run(capsys, "sample", "--modulus", "12", "--dim", "2", "--count", "5")
    assert code == 0 and len(out.splitlines()) == 6


def test_sample_config_error(capsys):
    assert run(capsys, "sample", "--modulus", "12")[0] == 3
    assert run(capsys, "sample", "--modulus", "12", "--dim", "2", "--count", "0")[0] == 3


def test_module_entry_point(example_file):
    proc = subprocess.run([sys.executable, "-m", "lfds_height", "analyze", "--input",
                           example_file, "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["bounds"]["thm_b"] == 9
