"""Acceptance suite: one test per certified criterion, each printing a
pass/fail line.  Criteria 1-10 run the library checks of
:mod:`curvkit.selftest` at their pinned tolerances; criterion 11 exercises the
command-line interface end to end (exit codes, schema, determinism)."""

import json
import subprocess
import sys
import time

from curvkit import selftest


def _report(result, elapsed):
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] criterion {result.ident}: {result.name} ({result.detail}) [{elapsed:.2f}s]")
    assert result.passed, f"criterion {result.ident} failed: {result.detail}"


def _run_check(fn, budget):
    start = time.monotonic()
    result = fn(seed=0) if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount] else fn()
    elapsed = time.monotonic() - start
    _report(result, elapsed)
    assert elapsed <= budget, f"criterion {result.ident} exceeded {budget}s budget ({elapsed:.1f}s)"


def test_criterion_01_round_trip():
    _run_check(selftest.check_roundtrip, budget=10.0)


def test_criterion_02_chart_invariance():
    _run_check(selftest.check_chart_invariance, budget=10.0)


def test_criterion_03_graph_metric_model():
    _run_check(selftest.check_theta_model, budget=30.0)


def test_criterion_04_local_sharpness():
    _run_check(selftest.check_local_sharpness, budget=5.0)


def test_criterion_05_sharp_quadric_family():
    _run_check(selftest.check_sharp_family, budget=5.0)


def test_criterion_06_kernel_intersection():
    _run_check(selftest.check_kernel_corollaries, budget=20.0)


def test_criterion_07_isotropic_bound():
    _run_check(selftest.check_isotropic_bound, budget=20.0)


def test_criterion_08_scalar_sign():
    _run_check(selftest.check_scalar_sign, budget=5.0)


def test_criterion_09_kernel_propagation():
    _run_check(selftest.check_kernel_propagation, budget=10.0)


def test_criterion_10_bound_formulas():
    _run_check(selftest.check_bound_formulas, budget=1.0)


def _cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "curvkit", *argv],
        capture_output=True,
        text=True,
        timeout=300,
    )


def test_criterion_11_cli_determinism_and_schema():
    start = time.monotonic()
    first = _cli("selftest", "--seed", "0")
    second = _cli("selftest", "--seed", "0")
    elapsed = time.monotonic() - start
    ok = first.returncode == 0 and second.returncode == 0
    doc = json.loads(first.stdout) if ok else {}
    ok = ok and doc.get("all_passed") is True and len(doc.get("results", [])) == 10
    ok = ok and first.stdout == second.stdout
    gen_a = _cli("gen", "theta", "--n", "6", "--rank", "4", "--seed", "31")
    gen_b = _cli("gen", "theta", "--n", "6", "--rank", "4", "--seed", "31")
    ok = ok and gen_a.returncode == 0 and gen_a.stdout == gen_b.stdout
    bound_a = _cli("bound", "--gen", "local-sharp", "--n", "8", "--N", "3", "--seed", "5")
    bound_b = _cli("bound", "--gen", "local-sharp", "--n", "8", "--N", "3", "--seed", "5")
    ok = ok and bound_a.returncode == 0 and bound_a.stdout == bound_b.stdout
    status = "PASS" if ok else "FAIL"
    print(f"[{status}] criterion 11: CLI determinism and schema [{elapsed:.2f}s]")
    assert first.returncode == 0, first.stderr
    assert doc.get("all_passed") is True
    assert first.stdout == second.stdout, "selftest output not byte-identical"
    assert gen_a.stdout == gen_b.stdout, "generator output not byte-identical"
    assert bound_a.stdout == bound_b.stdout, "bound report not byte-identical"
    assert elapsed <= 120.0
