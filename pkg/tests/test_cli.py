import io
import json
import subprocess
import sys

import pytest

from modecomp.cli import main

FIXTURES = {
    "B": {"p": 2, "dim": 2, "generators": [[[0, 1], [0, 0]]], "label": "local"},
    "C": {"p": 2, "dim": 2, "generators": [[[1, 0], [0, 0]]], "label": "split"},
    "D": {"p": 2, "dim": 3, "generators": [[[0, 1, 0], [0, 0, 0], [0, 0, 0]]], "label": "mixed"},
}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, doc in FIXTURES.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc))
        out[name] = str(path)
    return out


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def block(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and " " not in line)


def test_analyze(files):
    code, out, _ = run("analyze", files["C"])
    assert code == 0
    assert block(out)["udim"] == "2" and block(out)["primes"] == "2"
    code, out, _ = run("analyze", files["D"])
    assert block(out)["udim"] == "2" and block(out)["primes"] == "1"
    assert block(out)["primary"] == "yes" and block(out)["irreducible"] == "no"


def test_decompose_uniform_all_on_D(files):
    code, out, _ = run("decompose", "uniform", files["D"], "--all")
    assert code == 0
    assert "{<(0 0 1)>, <(1 0 0), (0 1 0)>}" in out
    assert "{<(0 0 1)>, <(1 0 0), (0 1 1)>}" in out
    assert int(block(out)["count"]) >= 2


def test_decompose_choice(files):
    code, out, _ = run("decompose", "uniform", files["D"], "--choice", "2")
    assert code == 0 and "[0] {<(0 0 1)>, <(1 0 0), (0 1 1)>}" in out
    code, _, err = run("decompose", "uniform", files["D"], "--choice", "2", "--all")
    assert code == 2 and "usage" in err


@pytest.mark.parametrize("kind", ["primary", "uniform"])
@pytest.mark.parametrize("name", ["B", "C", "D"])
def test_round_trip_decompose_then_check(files, tmp_path, kind, name):
    target = tmp_path / f"{name}-{kind}.json"
    code, out, _ = run("decompose", kind, files[name], "--all", "--save", str(target))
    assert code == 0
    saved = [line.split()[1] for line in out.splitlines() if line.startswith("saved ")]
    claimed = [line.split(": ", 1)[1].split() for line in out.splitlines() if line.strip().startswith("flags:")]
    assert len(saved) == len(claimed) == int(block(out)["count"])
    for path, flags in zip(saved, claimed):
        code, report, _ = run("check", path)
        assert code == 0
        b = block(report)
        assert b["intersects"] == "yes"
        for flag in flags:
            key = {"shortest": f"shortest_{kind}", "maximal": f"maximal_{kind}"}.get(flag, flag)
            assert b[key] == "yes", (path, flag)


def test_refine(files, tmp_path):
    path = tmp_path / "p.json"
    run("decompose", "primary", files["D"], "--save", str(path))
    code, out, _ = run("refine", str(path))
    assert code == 0 and block(out)["blocks"] == "1,2" and block(out)["count"] == "2"


def test_check_failure_exit_code(tmp_path):
    doc = dict(FIXTURES["D"], parts=[[[0, 0, 1]]])
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run("check", str(path))
    assert code == 1 and block(out)["intersects"] == "no"


def test_enumerate(files):
    code, out, _ = run("enumerate", "submodules", files["D"])
    assert code == 0 and block(out)["count"] == "8"


def test_verify(files):
    code, out, _ = run("verify", files["B"], "--suite", "multUV")
    assert code == 0 and block(out)["verdict"] == "pass"
    code, out, _ = run("verify", files["D"], "--suite", "clstunid", "--lattice-cap", "4")
    assert code == 3 and block(out)["verdict"] == "resource"


def test_errors(files, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"p": 4, "dim": 1, "generators": []}))
    code, _, err = run("analyze", str(bad))
    assert code == 2 and "p must be prime" in err
    full = tmp_path / "full.json"
    full.write_text(json.dumps(dict(FIXTURES["B"], N=[[0, 1]])))
    code, _, err = run("analyze", str(full))
    assert code == 2 and "N must be proper" in err
    assert run("frobnicate")[0] == 2
    assert run("decompose", "tertiary", files["D"])[0] == 2
    assert run("verify", "--suite", "nope")[0] == 2
    assert run("decompose", "primary", files["D"], "--cap", "1")[0] == 3


def test_auto_closure_is_flagged(tmp_path):
    path = tmp_path / "n.json"
    path.write_text(json.dumps(dict(FIXTURES["D"], N=[[0, 1, 0]])))
    code, out, err = run("analyze", str(path))
    assert code == 0 and "warning" in err and block(out)["autoclosed"] == "yes"


def test_output_is_byte_identical_across_processes(files):
    cmd = [sys.executable, "-m", "modecomp", "decompose", "uniform", files["D"], "--all"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
