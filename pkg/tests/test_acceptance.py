"""Acceptance criteria 1-10, each with its time bound.

Every test prints one ``criterion N: PASS|FAIL`` line; the lines are also
collected and repeated in the pytest terminal summary.
"""
from __future__ import annotations

import random
import shutil
import subprocess
import sys
import time
from contextlib import contextmanager

from robustlat import analysis as an
from robustlat import idempotents as idm
from robustlat import lattice as lat
from robustlat import seqspace as sq
from robustlat.verify import (
    Config, Failure, discrete_units_check, kernel_ell_1_check, no_loss_round_trip, unit_sphere_check,
)

RESULTS: list[str] = []
CFG = Config()


@contextmanager
def criterion(num: int, bound: float, title: str):
    state = {"note": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        dt = time.perf_counter() - t0
        within = dt < bound
        verdict = "PASS" if ok and within else "FAIL"
        extra = f" {state['note']}" if state["note"] else ""
        line = f"criterion {num}: {verdict} ({title}; {dt:.2f}s < {bound:g}s{'' if within else ' exceeded'}){extra}"
        RESULTS.append(line)
        print(line)
    assert within, line


def _no_failure(fn, *args):
    try:
        return fn(*args)
    except Failure as exc:
        raise AssertionError(f"{exc}: {exc.counterexample}") from exc


def test_criterion_01_kernel_slice_example():
    with criterion(1, 5, "kernel slice in l1") as st:
        out = _no_failure(kernel_ell_1_check, CFG, random.Random("acc:1"), 60)
        assert out["e0_cert"] == {"n": 1, "delta": "1/2", "bound": "1/2"}
        st["note"] = f"samples={out['samples']}"


def test_criterion_02_discrete_unit_vectors():
    with criterion(2, 1, "unit vectors accumulate at 0") as st:
        out = _no_failure(discrete_units_check, CFG)
        assert out["dstar_checked"] == 21
        st["note"] = f"cert={out['cert']}"


def test_criterion_03_unit_sphere():
    with criterion(3, 5, "sphere witness and closure") as st:
        out = _no_failure(unit_sphere_check, CFG, random.Random("acc:3"), 50)
        st["note"] = f"samples={out['samples']}"


def test_criterion_04_no_loss_round_trip():
    with criterion(4, 60, "no-loss round trip") as st:
        out = no_loss_round_trip(100, "acc:4", CFG, k=17)
        st["note"] = f"sets={out['sets']} points={out['points']} disagreements={out['disagreements']}"
        assert out["disagreements"] == 0 and out["unknown"] == 0, out["counterexample"]


def test_criterion_05_metric_inequalities():
    rng = random.Random("acc:5")

    def vec():
        return sq.SeqVec({i: sq.Q(rng.randint(-32, 32), rng.randint(1, 16)) for i in range(rng.randint(0, 8))})

    pairs = [(vec(), vec()) for _ in range(1000)]
    with criterion(5, 2, "d_* <= d_inf <= d_p") as st:
        for x, y in pairs:
            di = sq.dinf(x, y)
            assert sq.dstar(x, y).exact <= di
            for p in (sq.Q(1), sq.Q(2), sq.INF):
                assert sq.dist(x, y, p).lt(di) is False
        st["note"] = "pairs=1000"


def test_criterion_06_chain_laws():
    rng = random.Random("acc:6")
    with criterion(6, 10, "split chain laws") as st:
        naive = 0
        for _ in range(100):
            ch = idm.random_split_chain(rng, 5, 8)
            assert idm.check_chain_laws(ch) == []
            eps = idm.connecting_ep(ch)
            for n in range(len(ch) - 1):
                pairs = idm.factorizing_pairs(ch, n)
                want = ({x: eps[n].e(x) for x in ch.stage_points(n)},
                        {y: eps[n].p(y) for y in ch.stage_points(n + 1)})
                assert pairs == [want]
                try:
                    assert idm.naive_factorizing_pairs(ch, n) == pairs
                    naive += 1
                except lat.ResourceError:
                    pass
        st["note"] = f"chains=100 whole_table_checks={naive}"


def test_criterion_07_finite_topologies_trivial():
    with criterion(7, 30, "T0 topologies on posets <= 4") as st:
        total = 0
        for n in range(1, 5):
            for P in lat.all_posets(n):
                ts = lat.enumerate_T0_topologies(P)
                assert len(ts) == 1 and ts[0] == lat.alexandrov(P) == lat.tau_top(P)
                total += 1
        assert total == 1 + 2 + 5 + 16
        st["note"] = f"posets={total}"


def test_criterion_08_adjunction_oracle():
    with criterion(8, 30, "three-way adjoint oracle") as st:
        maps = 0
        ls = lat.all_lattices(4)
        for L in ls:
            for M in ls:
                for f in lat.all_monotone_maps(L.poset, M.poset):
                    g = lat.right_adjoint(f, L)
                    brute = lat.brute_force_right_adjoints(f)
                    assert (g is not None) == bool(brute) == lat.preserves_sups(f)
                    if g is not None:
                        assert brute == [g] and lat.check_adjunction(f, g)
                    maps += 1
        st["note"] = f"maps={maps}"


def test_criterion_09_box_oracle():
    rng = random.Random("acc:9")
    with criterion(9, 30, "box operator oracle") as st:
        ms = an.metrics_up_to(4)
        count = 0
        for m in ms:
            sched = an.default_schedule(m)
            fam = an.analysis_family(m, rng, 50)
            assert len(fam) >= 50
            for A in fam:
                B = an.box_analysis(A, m, sched)
                BB = an.box_analysis(B, m, sched)
                for C in m.subsets():
                    v = an.box_robust(A, C, m, sched)
                    assert v == B(C) == an.brute_box(A, C, m)
                    assert BB(C) == v
                assert an.is_robust(B, m)
                count += 1
        st["note"] = f"metrics={len(ms)} analyses={count}"


def test_criterion_10_verify_all():
    exe = shutil.which("robustlat")
    cmd = [exe] if exe else [sys.executable, "-m", "robustlat.cli"]
    with criterion(10, 180, "verify all") as st:
        out = subprocess.run(cmd + ["verify", "all"], capture_output=True, text=True, timeout=180)
        fails = [ln for ln in out.stdout.splitlines() if ": fail" in ln]
        st["note"] = f"exit={out.returncode} cases={len(out.stdout.splitlines()) - 1}"
        assert out.returncode == 0, fails or out.stderr
