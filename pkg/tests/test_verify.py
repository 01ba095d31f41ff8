from __future__ import annotations

import json

import pytest

from robustlat import verify as vf
from robustlat.verify import SUITES, Config


def test_config_validation():
    assert Config().tol == vf.sq.DEFAULT_TOL
    for bad in ({"tol": 0}, {"delta_min": "-1"}, {"n_max": 0}, {"depth": 0}, {"threads": 0}, {"seed": 2**64}):
        with pytest.raises(ValueError):
            Config(**bad)


def test_unknown_suite():
    with pytest.raises(KeyError):
        vf.run("bogus")


def test_every_suite_has_cases():
    for s in SUITES:
        assert vf.case_names(s)


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "setrep"])
def test_suite_passes(suite):
    results = vf.run(suite, Config(seed=1))
    assert [r.name for r in results] == vf.case_names(suite)
    bad = [r.to_json() for r in results if not r.ok]
    assert not bad


def test_failures_carry_counterexamples(monkeypatch):
    def broken(cfg, rng):
        vf._require(False, "always fails", {"x": rng.randint(0, 9)})

    monkeypatch.setitem(vf._CASES, "lattice", [("broken", broken)])
    a = vf.run("lattice", Config(seed=5))
    b = vf.run("lattice", Config(seed=5))
    assert not a[0].ok and a[0].counterexample == b[0].counterexample
    doc = a[0].to_json()
    assert doc["status"] == "fail" and doc["seed"] == 5 and "counterexample" in doc
    lines = vf.report_lines(a, True, 5)
    assert json.loads(lines[-1])["case"] == "broken"
    text = vf.report_lines(a, False, 5)
    assert text[0] == "# seed=5" and text[1].startswith("broken: fail (always fails")


def test_no_loss_helper_small():
    out = vf.no_loss_round_trip(5, 0, Config(), k=5)
    assert out["disagreements"] == 0 and out["unknown"] == 0 and out["points"] == 125
