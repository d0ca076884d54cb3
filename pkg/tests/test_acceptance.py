"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line (visible with ``pytest -s`` or in the
captured output on failure).  Random instances are drawn from fixed seeds so
reruns are reproducible.
"""

import math
import time

import numpy as np

import cellmat as cm
from cellmat import CubicSpectrumTarget, GroupedSpec

import reference_data as ref
from helpers import (
    distinct_values,
    random_group_shape,
    random_grouped_vector,
    random_positive_vector,
)


def _report(num: int, ok: bool, desc: str) -> None:
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'} - {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def test_criterion_1_cubic_regression():
    target = CubicSpectrumTarget(3.0, -2.0, -1.0)
    cm.solve_cubic_iep(target)  # warm path before timing
    t0 = time.perf_counter()
    solution = cm.solve_cubic_iep(target)
    spectrum = cm.eig_symmetric(cm.construct_cell_matrix(solution.x).entries)
    elapsed = time.perf_counter() - t0

    expected_x = (math.sqrt(3.0) - 0.5, 0.5, 0.5)
    x_ok = all(abs(a - b) <= 1e-12 for a, b in zip(solution.x, expected_x))
    s_ok = spectrum.matches([3.0, -2.0, -1.0], tol=1e-9)
    time_ok = elapsed < 0.010
    _report(
        1,
        x_ok and s_ok and time_ok,
        f"3x3 solver: x within 1e-12, spectrum within 1e-9, {elapsed * 1e3:.2f} ms",
    )


def test_criterion_2_two_group_regression():
    cm.solve_two_group(-2.0, -4.0, 5, 6)  # warm path before timing
    t0 = time.perf_counter()
    solution = cm.solve_two_group(-2.0, -4.0, 5, 6)
    built = cm.construct_cell_matrix(solution.x).entries
    elapsed = time.perf_counter() - t0

    lam1, lam2 = solution.head_values
    head_ok = (
        abs(lam1 - (14.0 + math.sqrt(306.0))) <= 1e-10
        and abs(lam2 - (14.0 - math.sqrt(306.0))) <= 1e-10
    )
    spectrum_ok = solution.full_spectrum.matches(ref.SPECTRUM_11, tol=1e-8)
    matrix_ok = np.array_equal(built, np.array(ref.MATRIX_11, dtype=float))
    time_ok = elapsed < 0.100
    _report(
        2,
        head_ok and spectrum_ok and matrix_ok and time_ok,
        f"11x11 two-group solver: radicals 1e-10, spectrum 1e-8, exact matrix, "
        f"{elapsed * 1e3:.2f} ms",
    )


def test_criterion_3_grouped_regression():
    spec = GroupedSpec((-2.0, -3.0, -5.0), (4, 4, 5))
    cm.solve_grouped(spec)  # warm path before timing
    t0 = time.perf_counter()
    solution = cm.solve_grouped(spec)
    built = cm.construct_cell_matrix(solution.x).entries
    elapsed = time.perf_counter() - t0

    head_ok = cm.multisets_close(solution.head_values, ref.HEAD_13, 1e-9)
    matrix_ok = np.array_equal(built, np.array(ref.MATRIX_13, dtype=float))
    time_ok = elapsed < 0.100
    _report(
        3,
        head_ok and matrix_ok and time_ok,
        f"13x13 grouped solver: head within 1e-9, exact matrix, {elapsed * 1e3:.2f} ms",
    )


def test_criterion_4_oracle_equivalence():
    rng = np.random.default_rng(20240804)
    t0 = time.perf_counter()
    all_match = True
    for _ in range(200):
        x = random_grouped_vector(rng, k_max=5, n_max=50, lo=0.1, hi=10.0)
        via_reduction = cm.spectrum_via_reduction(x)
        via_jacobi = cm.eig_symmetric(cm.construct_cell_matrix(x).entries)
        all_match = all_match and via_jacobi.matches(via_reduction, tol=1e-8)
    elapsed = time.perf_counter() - t0
    _report(
        4,
        all_match and elapsed < 30.0,
        f"200 random grouped vectors: reduction route == Jacobi within 1e-8, "
        f"{elapsed:.1f} s",
    )


def test_criterion_5_structural_spectrum_properties():
    rng = np.random.default_rng(20240805)
    ok = True
    for _ in range(200):
        n = int(rng.integers(2, 51))
        x = random_positive_vector(rng, n=n)
        a = cm.construct_cell_matrix(x).entries
        values = np.array(cm.eig_symmetric(a).values)
        one_positive = int((values > 0).sum()) == 1
        zero_sum = abs(values.sum()) <= 1e-10 * n * float(np.abs(values).max())
        fro2 = float((a * a).sum())
        frobenius = abs(float((values**2).sum()) - fro2) <= 1e-8 * max(1.0, fro2)
        ok = ok and one_positive and zero_sum and frobenius
    _report(5, ok, "200 random vectors: one positive eigenvalue, zero trace, "
                   "Frobenius identity")


def test_criterion_6_determinant_formula():
    rng = np.random.default_rng(20240806)
    ok = True
    for _ in range(100):
        n = int(rng.integers(1, 11))
        x = random_positive_vector(rng, n=n)
        a = cm.construct_cell_matrix(x).entries
        for i in range(1, n + 1):
            formula = cm.principal_subdeterminant(x, i)
            pivoted = cm.numeric_determinant(a[:i, :i])
            ok = ok and abs(formula - pivoted) <= 1e-8 * max(1.0, abs(formula), abs(pivoted))
    _report(6, ok, "100 random vectors: determinant formula == pivoted elimination "
                   "within 1e-8 at every order")


def test_criterion_7_reduction_audit():
    # values are drawn on a binary grid so the elementary arithmetic is exact
    # and the 1e-12 absolute gates are meaningful at any magnitude
    rng = np.random.default_rng(20240807)
    ok = True
    for _ in range(50):
        x = random_grouped_vector(rng, k_max=5, n_max=50, dyadic=True)
        result = cm.reduce_grouped(x)
        a = cm.construct_cell_matrix(x).as_array()
        for op in result.ops_applied:
            a = cm.apply_similarity(a, op)
        k = result.k
        trailing = a[k:, :].copy()
        np.fill_diagonal(trailing[:, k:], 0.0)
        zeros_ok = float(np.abs(trailing).max()) <= 1e-12 if trailing.size else True
        core_ok = float(
            np.abs(a[:k, :k] - cm.build_dk(cm.group_vector(x))).max()
        ) <= 1e-12
        ok = ok and zeros_ok and core_ok
    _report(7, ok, "50 random grouped vectors: replayed op trace gives forced zeros "
                   "and the closed-form core within 1e-12")


def test_criterion_8_permutation_invariance():
    rng = np.random.default_rng(20240808)
    swaps_ok = True
    for _ in range(20):
        n = int(rng.integers(2, 9))
        x = random_positive_vector(rng, n=n)
        for l in range(1, n + 1):
            for k in range(l + 1, n + 1):
                swaps_ok = swaps_ok and cm.transposition_similarity_check(x, l, k)

    invariance_ok = True
    for _ in range(100):
        n = int(rng.integers(2, 21))
        x = random_positive_vector(rng, n=n)
        pi = cm.Permutation(tuple(int(v) for v in rng.permutation(n)))
        invariance_ok = invariance_ok and cm.spectrum_invariance_check(x, pi, tol=1e-8).ok

    pi7 = cm.Permutation.from_cycles(ref.CYCLES_7, 7)
    fixed_ok = (
        np.array_equal(
            cm.construct_cell_matrix(ref.VECTOR_7).entries,
            np.array(ref.MATRIX_7, dtype=float),
        )
        and np.array_equal(
            cm.construct_cell_matrix(cm.permute_vector(ref.VECTOR_7, pi7)).entries,
            np.array(ref.MATRIX_7_PERMUTED, dtype=float),
        )
        and cm.spectrum_invariance_check(ref.VECTOR_7, pi7).ok
    )
    _report(
        8,
        swaps_ok and invariance_ok and fixed_ok,
        "transposition similarity exact on all pairs (n <= 8, 20 vectors); "
        "100 random permutations within 1e-8; 7x7 pair reproduced exactly",
    )


def test_criterion_9_solver_cross_consistency():
    rng = np.random.default_rng(20240809)
    uniform_ok = True
    for _ in range(25):
        n = int(rng.integers(2, 41))
        lam = float(rng.uniform(0.1, 10.0))
        a = cm.solve_uniform(n, lam)
        b = cm.solve_grouped(GroupedSpec((-lam,), (n,)))
        uniform_ok = uniform_ok and (
            a.x.entries == b.x.entries
            and a.head_values == b.head_values
            and a.full_spectrum.values == b.full_spectrum.values
        )

    two_group_ok = True
    for _ in range(50):
        _, mults = random_group_shape(rng, k_max=2, n_max=50)
        if len(mults) == 1:
            mults = (mults[0] // 2 + mults[0] % 2, mults[0] // 2) if mults[0] >= 4 else (2, 2)
        l1, l2 = mults
        t3, t4 = (-2.0 * v for v in distinct_values(rng, 2))
        direct = cm.solve_two_group(t3, t4, l1, l2)
        grouped = cm.solve_grouped(GroupedSpec((t3, t4), (l1, l2)))
        two_group_ok = two_group_ok and (
            direct.x.entries == grouped.x.entries
            and cm.multisets_close(direct.head_values, grouped.head_values, 1e-10)
            and direct.full_spectrum.matches(grouped.full_spectrum, 1e-10)
        )
    _report(
        9,
        uniform_ok and two_group_ok,
        "uniform == grouped exactly (k=1); two-group == grouped within 1e-10 "
        "on 50 random instances",
    )
