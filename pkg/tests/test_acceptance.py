"""Acceptance criteria 1-11, each at its time budget.

Every criterion records one PASS/FAIL line (printed in the pytest terminal
summary, or directly when this file is run as a script).  Criteria that do
not hold as literally stated are recorded as FAIL and their literal tests are
strict xfails; the parts that do hold are tested separately.
"""
import time
from fractions import Fraction

import pytest

from freefield.realizations import build_generators
from freefield.suites import primary_weights, run_suite
from freefield.vertexops import general_mode

RESULTS = {}


def record(n, ok, detail, elapsed, budget):
    line = f"criterion {n:>2}: {'PASS' if ok and elapsed < budget else 'FAIL'} ({elapsed:.1f}s / {budget}s) {detail}"
    RESULTS[n] = line
    print(line)
    return ok and elapsed < budget


def _suite(name, **kw):
    rep = run_suite(name, **kw)
    fails = [c for c in rep.checks if c.status == "fail"]
    return rep, fails


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


# -- 1 ----------------------------------------------------------------------------


def test_criterion_1_conformal():
    (rep, _), dt = _timed(lambda: _suite("conformal"))
    conf = [c for c in rep.checks if c.id.startswith("conformal.")]
    ok = len(conf) == 9 and all(c.status == "pass" for c in conf)
    p2 = [c.lhs for c in conf if c.id == "conformal.deformed.p=2"]
    assert record(1, ok, f"{len(conf)} conformal vectors exact, deformed p=2 {p2}", dt, 60)


# -- 2 ----------------------------------------------------------------------------


def test_criterion_2_primary_weights():
    def go():
        checks = primary_weights(2)
        for p in range(3, 6):
            checks += [c for c in primary_weights(p) if c.id.startswith("weight.e^-alpha")]
        return checks

    checks, dt = _timed(go)
    ok = all(c.status == "pass" for c in checks)
    assert record(2, ok, "; ".join(f"{c.id}: {c.lhs}" for c in checks[:5]), dt, 60)


# -- 3 ----------------------------------------------------------------------------


def test_criterion_3_screening():
    (rep, fails), dt = _timed(lambda: _suite("screening", max_degree=6))
    assert record(3, not fails, f"{len(rep.checks)} checks at degree <= 6 for p = 2..5, {len(fails)} fail", dt, 300)


# -- 4 ----------------------------------------------------------------------------


def _literal_negative_modes():
    g = build_generators(2, "deformed")
    return [n for n in (-3, -2, -1) if general_mode(g["aminus"], n, g["aplus"])]


@pytest.fixture(scope="module")
def sf_run():
    (rep, fails), dt = _timed(lambda: _suite("sf-relations", max_degree=6))
    return rep, fails, dt


def test_criterion_4_sf_attainable_part(sf_run):
    rep, fails, dt = sf_run
    sign = [c.lhs for c in rep.checks if c.id == "sf.global_sign"]
    assert not fails and sign in (["1"], ["-1"])
    assert dt < 300


@pytest.mark.xfail(strict=True, reason="a-_n a+ is a nonzero descendant for n = -3..-1")
def test_criterion_4_symplectic_fermions(sf_run):
    rep, fails, dt = sf_run
    sign = [c.lhs for c in rep.checks if c.id == "sf.global_sign"][0]
    bad_n, dt2 = _timed(_literal_negative_modes)
    ok = not fails and not bad_n
    detail = (
        f"anticommutators and n >= 0 products exact at degree <= 6, global sign {sign}; "
        f"a-_n a+ != 0 for n in {bad_n} (descendants), so the literal -3 <= n <= 3 range does not hold"
    )
    assert record(4, ok, detail, dt + dt2, 300)


# -- 5 ----------------------------------------------------------------------------


def test_criterion_5_action_table():
    (rep, fails), dt = _timed(lambda: _suite("action-table"))
    assert record(5, not fails, f"{len(rep.checks)} checks, symbolic r, Jordan block at r = 1", dt, 120)


# -- 6 ----------------------------------------------------------------------------


def test_criterion_6_zhu():
    (rep, fails), dt = _timed(lambda: _suite("zhu-constraints"))
    dims = [c for c in rep.checks if c.id.startswith("zhu.dim_bound")]
    ok = not fails and len(dims) >= 5
    assert record(6, ok, f"quartic, cubic, p | gcd; dimension <= 2 at {len(dims)} samples", dt, 600)


# -- 7 ----------------------------------------------------------------------------


def test_criterion_7_fusion_decide():
    (rep, fails), dt = _timed(lambda: _suite("fusion-decide"))
    assert record(7, not fails, "; ".join(f"{c.id} = {c.lhs}" for c in rep.checks), dt, 120)


# -- 8 ----------------------------------------------------------------------------


@pytest.fixture(scope="module")
def fusion_run():
    return _timed(lambda: _suite("fusion-p2", max_degree=4))


def test_criterion_8_attainable_part(fusion_run):
    (rep, fails), dt = fusion_run
    assert {c.id.split(").", 1)[1] for c in fails} <= {"fusion.hw_multiplicity"}
    ids = {c.id: c.status for c in rep.checks}
    for a, b in ((Fraction(1, 2), Fraction(1, 3)), (Fraction(2, 5), Fraction(-3, 7))):
        for k in ("w_in_span", "w_decomposition", "v+_in_span", "v-_in_span", "v+_weights", "v-_weights", "hw_bottom", "hw_types"):
            assert ids[f"({a},{b}).fusion.{k}"] == "pass", k
    assert dt < 600


@pytest.mark.xfail(strict=True, reason="singular vectors orthogonal to alpha repeat each target three times")
def test_criterion_8_fusion(fusion_run):
    (rep, fails), dt = fusion_run
    mult = [c.lhs for c in rep.checks if c.id.endswith("hw_multiplicity")]
    detail = (
        "v+, v-, w and the decomposition of w verified at both pairs; "
        f"but the degree <= 4 span holds singular vectors with multiplicities {mult}, not exactly two"
    )
    assert record(8, not fails, detail, dt, 600)


# -- 9 ----------------------------------------------------------------------------


def test_criterion_9_orbifold():
    (rep, fails), dt = _timed(lambda: _suite("orbifold"))
    vac = [c.id for c in rep.checks if c.lhs == "vacuous hypotheses"]
    ok = not fails and vac == ["orbifold.m=1", "orbifold.m=2"]
    assert record(9, ok, f"m=3 table, symmetry and congruence; vacuous: {vac}", dt, 60)


# -- 10 ---------------------------------------------------------------------------


def test_criterion_10_properties():
    (rep, fails), dt = _timed(lambda: _suite("properties"))
    assert record(10, not fails, ", ".join(c.id for c in rep.checks), dt, 900)


# -- 11 ---------------------------------------------------------------------------


def test_criterion_11_lem1():
    (rep, fails), dt = _timed(lambda: _suite("lem1-crosscheck"))
    ok = not fails and rep.checks and all(c.status == "info" for c in rep.checks)
    diff = ", ".join(f"{c.id}: {c.lhs}" for c in rep.checks)
    assert record(11, ok, f"info diff emitted ({diff})", dt, 300)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
