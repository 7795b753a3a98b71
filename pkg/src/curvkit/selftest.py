"""Built-in verification suite.

Each check exercises one certified property of the toolkit at a pinned
tolerance and returns a :class:`CheckResult`; :func:`run_all` drives the full
suite.  The CLI `selftest` command and the acceptance tests both call into
this module, so the shipped binary and the test suite verify the same
properties.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import curvature as cv
from . import hermform as hf
from . import quadric as qd
from . import zeroset as zs
from .rng import Rng

__all__ = ["CheckResult", "run_all", "ALL_CHECKS"]


@dataclass(frozen=True)
class CheckResult:
    ident: str
    name: str
    passed: bool
    detail: str


def check_roundtrip(seed: int = 0) -> CheckResult:
    """decompose -> recover reproduces random tensors (rel. Frobenius 1e-8),
    including a pass through the JSON interchange layer."""
    from . import serialize as io

    worst = 0.0
    stream = 0
    for n in range(2, 6):
        for trial in range(100):
            rng = Rng(seed, stream=stream)
            stream += 1
            curv = cv.random_kahler(n, rng)
            dec = hf.decompose(cv.hsc_numerator_form(curv))
            if trial < 5:  # exercise the serialized route as well
                curv = io.tensor_from_dict(io.tensor_to_dict(curv))
                dec = io.decomposition_from_dict(io.decomposition_to_dict(dec))
            back = cv.recover(dec)
            err = np.linalg.norm(back.tensor - curv.tensor) / np.linalg.norm(curv.tensor)
            worst = max(worst, err)
    return CheckResult(
        "1", "round-trip", bool(worst <= 1e-8), f"max rel error {worst:.3e} over 400 tensors"
    )


def check_chart_invariance(seed: int = 0) -> CheckResult:
    """Signature (hence decomposition length) is chart invariant."""
    bad = 0
    for trial in range(100):
        rng = Rng(seed, stream=1000 + trial)
        n = 2 + trial % 4
        form = cv.hsc_numerator_form(cv.random_kahler(n, rng))
        chart = rng.complex_normal((n, n))
        while np.linalg.cond(chart) > 1e6:
            chart = rng.complex_normal((n, n))
        if hf.signature(form) != hf.signature(hf.pullback(form, chart)):
            bad += 1
    return CheckResult(
        "2", "chart invariance", bad == 0, f"{bad} signature changes in 100 trials"
    )


def check_theta_model(seed: int = 0) -> CheckResult:
    """Full-rank graph-metric models: eta = floor(n/2) exactly and the point
    value meets the first bound with equality."""
    failures = []
    for trial in range(50):
        rng = Rng(seed, stream=2000 + trial)
        n = 2 + trial % 7
        f = qd.random_symmetric_with_rank(n, n, rng)
        curv = cv.graph_curvature([f.matrix], -1)
        rep = zs.verify_point(curv, trials=8, seed=seed + trial)
        ok = (
            rep.eta.exact
            and rep.eta.lower == n // 2
            and rep.r_point == (n + 1) // 2
            and rep.r_point == zs.bound_main1(n, 1)
            and rep.pass_main1 is True
        )
        if not ok:
            failures.append((trial, n, rep.eta.lower, rep.eta.upper))
    return CheckResult(
        "3",
        "graph-metric model",
        not failures,
        f"{len(failures)} failures in 50 instances" + (f": {failures[:3]}" if failures else ""),
    )


def check_local_sharpness(seed: int = 0) -> CheckResult:
    """Sum-of-squares sharp models: Ricci definite (a positive multiple of the
    identity for the single-square cases, the multiple recorded in the
    detail) and the bound attained exactly."""
    problems = []
    multiples = []
    for n, big_n in ((4, 1), (6, 1), (3, 2), (8, 3)):
        dec, _ = zs.local_sharp_example(n, big_n)
        curv = cv.recover(dec)
        ric = cv.ricci(curv)
        diag = np.real(np.diagonal(ric))
        mean = float(diag.mean())
        off = ric - np.diag(np.diagonal(ric))
        if big_n == 1:
            if np.max(np.abs(off)) > 1e-10 * mean or (diag.max() - diag.min()) > 1e-10 * mean:
                problems.append((n, big_n, "not a multiple of the identity"))
            if mean <= 0:
                problems.append((n, big_n, "multiple not positive"))
            multiples.append(mean)
        eig = np.linalg.eigvalsh(ric)
        if eig[0] <= 0:
            problems.append((n, big_n, "Ricci not positive definite"))
        rep = zs.verify_point(curv, trials=200, seed=seed)
        if not (rep.eta.exact and rep.r_point == zs.bound_main1(n, big_n)):
            problems.append((n, big_n, f"bound not attained: {rep.eta}"))
        if not rep.ricci_definite or rep.pass_main1 is not True or rep.pass_main2 is not True:
            problems.append((n, big_n, "report flags"))
    detail = (
        f"4 models certified; identity multiples {sorted(set(multiples))}"
        if not problems
        else f"problems: {problems}"
    )
    return CheckResult("4", "local sharpness", not problems, detail)


def check_sharp_family() -> CheckResult:
    """Shared-subspace quadric families vanish on L and have trivial common
    kernel across 2 <= n <= 10, 1 <= N <= 4."""
    problems = []
    for n in range(2, 11):
        for big_n in range(1, 5):
            if (big_n * n) // (big_n + 1) < 1:
                continue
            quads, shared, _ = qd.sharp_family(n, big_n)
            for q in quads:
                if not qd.vanishes_on(q, shared, tol=1e-10):
                    problems.append((n, big_n, "does not vanish on L"))
            active = [q for q in quads if not q.is_zero(1e-12)]
            if qd.common_kernel(active).dim != 0:
                problems.append((n, big_n, "common kernel nontrivial"))
    return CheckResult(
        "5",
        "sharp quadric family",
        not problems,
        "36 families checked" if not problems else f"problems: {problems}",
    )


def check_kernel_corollaries(seed: int = 0) -> CheckResult:
    """Quadrics sharing a large enough subspace have intersecting kernels:
    dim >= 1 at the threshold dimension, dim >= k+1 at the k-shifted one."""
    bad = []
    for trial in range(200):
        rng = Rng(seed, stream=3000 + trial)
        n = 2 + int(rng.uniform(1)[0] * 7)
        big_n = 1 + int(rng.uniform(1)[0] * 4)
        dim_l = (big_n * n) // (big_n + 1) + 1
        sub = qd.Subspace(rng.orthonormal(n, dim_l))
        quads = qd.random_quadrics_on(sub, big_n, seed=seed + 7919 * trial)
        if qd.common_kernel(quads).dim < 1:
            bad.append(("threshold", trial, n, big_n))
    for trial in range(200):
        rng = Rng(seed, stream=4000 + trial)
        n = 2 + int(rng.uniform(1)[0] * 7)
        big_n = 1 + int(rng.uniform(1)[0] * 4)
        k = int(rng.uniform(1)[0] * 3) % min(3, n)
        dim_l = (big_n * n + k) // (big_n + 1) + 1
        sub = qd.Subspace(rng.orthonormal(n, dim_l))
        quads = qd.random_quadrics_on(sub, big_n, seed=seed + 104729 * trial)
        if qd.common_kernel(quads).dim < k + 1:
            bad.append(("shifted", trial, n, big_n, k))
    return CheckResult(
        "6",
        "kernel intersection",
        not bad,
        "400 randomized trials" if not bad else f"failures: {bad[:3]}",
    )


def check_isotropic_bound(seed: int = 0) -> CheckResult:
    """Constructed isotropic subspaces attain (n-r)+floor(r/2) exactly, and no
    subspace of larger dimension fits inside a full-rank quadric."""
    problems = []
    for trial in range(200):
        rng = Rng(seed, stream=5000 + trial)
        n = 2 + trial % 7
        r = int(rng.uniform(1)[0] * (n + 1))
        q = qd.random_symmetric_with_rank(n, r, rng)
        witness = qd.max_isotropic(q)
        if witness.dim != qd.isotropic_bound(n, r):
            problems.append(("dim", trial, n, r, witness.dim))
        elif not qd.vanishes_on(q, witness, tol=1e-9):
            problems.append(("residual", trial, n, r))
    for trial in range(500):
        rng = Rng(seed, stream=6000 + trial)
        n = 2 + trial % 7
        q = qd.random_symmetric_with_rank(n, n, rng)
        sub = qd.Subspace(rng.orthonormal(n, n // 2 + 1))
        if qd.vanishes_on(q, sub, tol=1e-9):
            problems.append(("over-isotropy", trial, n))
    return CheckResult(
        "7",
        "isotropic dimension",
        not problems,
        "700 quadric trials" if not problems else f"failures: {problems[:3]}",
    )


def check_scalar_sign(seed: int = 0) -> CheckResult:
    """One-sided decompositions give scalar curvature of the matching sign,
    equal to +-sum of squared Frobenius norms (1e-10 relative)."""
    problems = []
    for trial in range(100):
        rng = Rng(seed, stream=7000 + trial)
        n = 2 + trial % 5
        count = 1 + trial % 4
        forms = tuple(hf.QuadraticForm(rng.symmetric(n)) for _ in range(count))
        negative = trial % 2 == 0
        dec = (
            hf.SquareDecomposition(n, neg=forms)
            if negative
            else hf.SquareDecomposition(n, pos=forms)
        )
        s = cv.scalar(cv.recover(dec))
        expected = sum(q.norm() ** 2 for q in forms) * (-1.0 if negative else 1.0)
        if abs(s - expected) > 1e-10 * abs(expected):
            problems.append((trial, s, expected))
        if negative and s > 0 or (not negative and s < 0):
            problems.append((trial, "sign"))
    return CheckResult(
        "8",
        "scalar-curvature sign",
        not problems,
        "100 decompositions" if not problems else f"failures: {problems[:3]}",
    )


def check_kernel_propagation(seed: int = 0) -> CheckResult:
    """On semi-definite tensors, curvature-kernel directions annihilate the
    tensor in a single slot as well: max |R(.,.,.,vbar)| <= 1e-8 max|R|."""
    problems = []
    for trial in range(100):
        rng = Rng(seed, stream=8000 + trial)
        n = 3 + trial % 4
        kdim = 1 + trial % (n - 1)
        sub = qd.Subspace(rng.orthonormal(n, kdim))
        comp = qd.nullspace(sub.basis.conj().T)
        count = 1 + trial % 3
        forms = tuple(
            hf.QuadraticForm(comp.conj() @ rng.symmetric(n - kdim) @ comp.conj().T)
            for _ in range(count)
        )
        negative = trial % 2 == 0
        dec = (
            hf.SquareDecomposition(n, neg=forms)
            if negative
            else hf.SquareDecomposition(n, pos=forms)
        )
        curv = cv.recover(dec)
        kernel = cv.curvature_kernel(curv)
        if kernel.dim < kdim:
            problems.append((trial, "kernel too small"))
            continue
        scale = curv.max_abs()
        for col in range(kernel.dim):
            report = cv.kernel_propagation_check(curv, kernel.basis[:, col])
            if report.residual_v > 1e-8 * scale or not report.hypothesis_met:
                problems.append((trial, col, report.residual_v))
    return CheckResult(
        "9",
        "kernel propagation",
        not problems,
        "100 kernels propagated" if not problems else f"failures: {problems[:3]}",
    )


def check_bound_formulas() -> CheckResult:
    """Exhaustive integer check of both bound formulas on 1 <= n <= 12,
    1 <= N <= 6, 0 <= n_R <= n, including the vacuous n_R = 0 case."""
    problems = []
    for n in range(1, 13):
        for big_n in range(1, 7):
            expect1 = n - (Fraction(big_n * n, big_n + 1)).__floor__()
            if zs.bound_main1(n, big_n) != expect1:
                problems.append(("main1", n, big_n))
            for n_r in range(0, n + 1):
                expect2 = n - (Fraction(big_n * n + (n - n_r), big_n + 1)).__floor__()
                if zs.bound_main2(n, big_n, n_r) != expect2:
                    problems.append(("main2", n, big_n, n_r))
            if zs.bound_main2(n, big_n, n) != zs.bound_main1(n, big_n):
                problems.append(("reduce", n, big_n))
            if zs.bound_main2(n, big_n, 0) != 0:
                problems.append(("vacuous", n, big_n))
    return CheckResult(
        "10",
        "bound formulas",
        not problems,
        "exhaustive grid verified" if not problems else f"failures: {problems[:5]}",
    )


ALL_CHECKS = (
    check_roundtrip,
    check_chart_invariance,
    check_theta_model,
    check_local_sharpness,
    check_sharp_family,
    check_kernel_corollaries,
    check_isotropic_bound,
    check_scalar_sign,
    check_kernel_propagation,
    check_bound_formulas,
)


def run_all(seed: int = 0):
    """Run every check; seedless checks ignore the argument."""
    results = []
    for fn in ALL_CHECKS:
        if "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            results.append(fn(seed=seed))
        else:
            results.append(fn())
    return results
