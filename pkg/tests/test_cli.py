import io
import json
import subprocess
import sys

import pytest

from fockgeom.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_class_examples():
    assert run("class", "k-euler", "--I", "0:()", "--J", "1:(1)") == (0, "eps\n")
    assert run("class", "tangent", "--I", "0:(1)", "--half", "minus") == (0, "-eps\n")
    assert run("class", "gamma", "--l", "1", "--I", "0:()", "--J", "0:(1)") == (0, "eps\n")
    assert run("class", "ctnv-heis", "--I", "0:()", "--J", "0:(1)") == (0, "1\n")


def test_class_json():
    code, text = run("class", "tangent", "--I", "0:(1)", "--format", "json")
    assert code == 0
    assert json.loads(text) == {"r": 1, "terms": [{"exp": [0, 2], "coef": "-1"}]}


def test_matrix_examples():
    code, text = run("matrix", "--op", "P[1](-1)", "--source", "0;0")
    assert code == 0 and text.splitlines()[-1] == "0:(1) [ 1 ]"
    code, text = run("matrix", "--op", "Psi[1](1)", "--source", "0;0")
    assert code == 0 and text.splitlines()[-1] == "1:() [ 1 ]"
    code, text = run("matrix", "--op", "P[1](5)", "--source", "0;2")
    assert code == 0 and "empty block" in text and "target energy -3" in text


def test_matrix_json_two_colors():
    code, text = run("matrix", "--op", "Psi[2](1)", "--source", "0,0;0", "--format", "json")
    assert code == 0
    assert json.loads(text) == {"source": ["0:()|0:()"], "target": ["0:()|1:()"],
                                "entries": [{"row": 0, "col": 0, "coef": "1"}]}


@pytest.mark.parametrize("argv", [
    ["verify", "all", "--rank", "0"],
    ["verify", "bogus"],
    ["matrix", "--op", "Psi[1](x)", "--source", "0;0"],
    ["matrix", "--op", "Psi[1](1)", "--source", "0;9"],
    ["matrix", "--op", "Psi[3](1)", "--source", "0;0"],
    ["class", "k-euler", "--I", "0:()"],
    ["class", "ctnv-heis", "--I", "0:()", "--J", "1:()"],
    ["class", "tangent", "--I", "0:(1)", "--rank", "2"],
    ["verify", "clifford", "--charge-lo", "0,0", "--rank", "3"],
])
def test_usage_errors_exit_two(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv, out=io.StringIO())
    assert exc.value.code == 2


def test_verify_passes_and_is_deterministic():
    first = run("verify", "clifford", "--rank", "1", "--max-energy", "2", "--format", "json")
    second = run("verify", "clifford", "--rank", "1", "--max-energy", "2", "--format", "json")
    assert first == second
    code, text = first
    assert code == 0
    (report,) = json.loads(text)
    assert report["suite"] == "clifford" and report["failures"] == []


def test_verify_flag_form_and_rank_two():
    code, text = run("verify", "--suite", "clifford", "--rank", "2", "--max-energy", "2",
                     "--charge-lo", "-1", "--charge-hi", "1,0")
    assert code == 0 and text.startswith("PASS clifford")


def test_verify_reports_failure_with_exit_one():
    code, text = run("verify", "nonvanishing", "--max-energy", "1", "--charge-lo", "0",
                     "--charge-hi", "0")
    assert code == 1 and "n=(1,1)" in text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fockgeom", "class", "tangent", "--I", "0:(1)"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "-eps^2\n"
