"""Acceptance criteria, one test each, at the stated sizes and tolerances.

Every test prints a single ``PASS``/``FAIL`` line.  Criteria 1, 2 and 6
assert properties that do not hold for the mathematical objects involved;
those tests fail with the counterexamples in the printed detail (see
README, "Known failing criteria").

Run directly with ``python3 tests/test_acceptance.py`` for the summary only.
"""
import json
import sys
import time

from widthlab import checks
from widthlab.cli import main

SEED = 0


def report(capsys, number, title, ok, elapsed, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}) {elapsed:.1f}s {json.dumps(detail, sort_keys=True, default=str)}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return ok


def crit1(capsys=None):
    t0 = time.perf_counter()
    res = checks.check_theorem_guard(SEED, budget=300)
    d = res.detail
    assert d["configurations"] >= 50
    ok = report(capsys, 1, "theorem guard", res.passed, time.perf_counter() - t0, d)
    assert time.perf_counter() - t0 < 120
    return ok


def crit2(capsys=None):
    t0 = time.perf_counter()
    res = checks.check_claims_chain(SEED, instances=1000, max_family=32)
    ok = report(capsys, 2, "claims chain", res.passed, time.perf_counter() - t0, res.detail)
    assert time.perf_counter() - t0 < 60
    return ok


def crit3(capsys=None):
    t0 = time.perf_counter()
    res = checks.check_width_identity(SEED, pairs=10_000)
    assert res.detail["pairs"] >= 10_000
    return report(capsys, 3, "width identity", res.passed, time.perf_counter() - t0, res.detail)


def crit4(capsys=None):
    t0 = time.perf_counter()
    res = checks.check_oracle_equivalence(SEED, count=200)
    assert res.detail["instances"] >= 200
    assert max(len(i.points) for i in checks.oracle_instances(SEED, 200)) <= 8
    return report(capsys, 4, "oracle equivalence", res.passed, time.perf_counter() - t0, res.detail)


def crit5(capsys=None):
    t0 = time.perf_counter()
    res = checks.check_vc_sauer(max_n=12, max_K=3)
    return report(capsys, 5, "VC and Sauer", res.passed, time.perf_counter() - t0, res.detail)


def crit6(capsys=None):
    t0 = time.perf_counter()
    res = checks.check_run_count(SEED, count=200)
    return report(capsys, 6, "run count", res.passed, time.perf_counter() - t0, res.detail)


def crit7(capsys=None):
    t0 = time.perf_counter()
    res = checks.check_remark(rel_slack=1e-9)
    assert res.detail["configurations"] > 0
    return report(capsys, 7, "remark consistency", res.passed, time.perf_counter() - t0, res.detail)


def crit8(capsys=None, tmp_path=None):
    import tempfile
    from pathlib import Path

    t0 = time.perf_counter()
    base = Path(tmp_path or tempfile.mkdtemp())
    same = {}
    runs = {
        "verify": ["verify", "--seed", "7"],
        "growth": ["growth", "--mode", "random", "--ell", "2", "--m", "3:6", "--budget", "200", "--seed", "7"],
    }
    for name, argv in runs.items():
        outs = []
        for k in range(2):
            path = base / f"{name}{k}.out"
            main(argv + ["--out", str(path)])
            outs.append(path.read_bytes())
        same[name] = outs[0] == outs[1] and len(outs[0]) > 0
    return report(capsys, 8, "determinism", all(same.values()), time.perf_counter() - t0, same)


def test_criterion_1_theorem_guard(capsys):
    assert crit1(capsys)


def test_criterion_2_claims_chain(capsys):
    assert crit2(capsys)


def test_criterion_3_width_identity(capsys):
    assert crit3(capsys)


def test_criterion_4_oracle_equivalence(capsys):
    assert crit4(capsys)


def test_criterion_5_vc_sauer(capsys):
    assert crit5(capsys)


def test_criterion_6_run_count(capsys):
    assert crit6(capsys)


def test_criterion_7_remark(capsys):
    assert crit7(capsys)


def test_criterion_8_determinism(capsys, tmp_path):
    assert crit8(capsys, tmp_path)


if __name__ == "__main__":
    results = [c() for c in (crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8)]
    sys.exit(0 if all(results) else 1)
