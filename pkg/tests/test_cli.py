from __future__ import annotations

import json
import subprocess
import sys

import pytest

from robustlat.cli import main, parse_vec
from robustlat.seqspace import Q, SeqVec

KERNEL = '{"kernel": {"functional": "ones", "level": "0", "within": {"ball": {"center": {"coords": {}}, "r": "1", "p": "1"}}}}'
SPHERE = '{"sphere": {"r": "1", "p": "2"}}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_vec_forms():
    assert parse_vec("0") == SeqVec()
    assert parse_vec("e_3") == SeqVec.unit(3) == parse_vec("e3")
    assert parse_vec('["1/2", 0, 1]') == SeqVec({0: Q(1, 2), 2: 1})
    assert parse_vec('{"1": "1/3"}') == SeqVec({1: Q(1, 3)})


def test_member_examples(capsys):
    code, out, _ = run(capsys, "member", SPHERE, "0")
    assert code == 0 and json.loads(out) == {"verdict": "In", "witness": "sphere-pad"}
    code, out, _ = run(capsys, "member", KERNEL, "e_0")
    assert json.loads(out) == {"verdict": "Out", "cert": {"n": 1, "delta": "1/2", "bound": "1/2"}}


def test_member_set_from_file(capsys, tmp_path):
    f = tmp_path / "set.json"
    f.write_text(SPHERE)
    code, out, _ = run(capsys, "member", f"@{f}", "0")
    assert code == 0 and json.loads(out)["verdict"] == "In"


def test_bad_inputs_exit_two(capsys):
    code, _, err = run(capsys, "member", "{not json", "0")
    assert code == 2 and "malformed JSON" in err
    assert run(capsys, "member", '{"cube": {}}', "0")[0] == 2
    assert run(capsys, "member", SPHERE, "nonsense")[0] == 2
    assert run(capsys, "dist", "0", "e_1", "1/2")[0] == 2
    assert run(capsys, "verify", "bogus")[0] == 2
    assert run(capsys, "reach", '{"states": 2, "rel": [[0, 5]], "I": [0]}')[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2


def test_dist(capsys):
    code, out, _ = run(capsys, "dist", "e_0", "0", "star")
    assert code == 0 and json.loads(out) == {"p": "star", "value": "1/2"}
    code, out, _ = run(capsys, "dist", "[3, 4]", "0", "2")
    assert json.loads(out)["value"] == "5"


def test_closure(capsys):
    code, out, _ = run(capsys, "closure", SPHERE, "--p", "2")
    doc = json.loads(out)
    assert code == 0 and doc["inner"] == doc["outer"]


def test_reach_and_safety(capsys):
    sysj = '{"states": 3, "rel": [[0, 1], [1, 2]], "I": [0], "E": [2]}'
    code, out, _ = run(capsys, "reach", sysj)
    assert code == 0 and json.loads(out) == {"reach": [0, 1, 2]}
    code, out, _ = run(capsys, "safety", '{"states": 2, "rel": [[0, 1]], "I": [0], "E": [1]}')
    assert json.loads(out) == "bottom"
    code, out, _ = run(capsys, "safety", '{"states": 2, "transitions": [[0, 1]], "init": [1], "bad": [0]}')
    assert json.loads(out) == "top"


def test_verify_text_and_json(capsys):
    code, out, _ = run(capsys, "verify", "paper-examples")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "# seed=0" and "kernel_ell_1: pass" in lines
    code, out, _ = run(capsys, "verify", "paper-examples", "--json", "--seed", "7")
    docs = [json.loads(line) for line in out.splitlines()]
    assert all(d["status"] == "pass" and d["seed"] == 7 for d in docs)
    assert [d["case"] for d in docs] == sorted(d["case"] for d in docs)


def test_verify_is_deterministic(capsys):
    a = run(capsys, "verify", "seqspace", "--json", "--seed", "3")[1]
    b = run(capsys, "verify", "seqspace", "--json", "--seed", "3", "--threads", "2")[1]
    assert a == b


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "robustlat.cli", "dist", "e_0", "0", "star"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == '{"p": "star", "value": "1/2"}'
