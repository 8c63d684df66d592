"""Acceptance gate: every criterion at full scale and stated tolerance.

Each test runs one criterion through the shared verification battery and
prints a single pass/fail line (visible with `pytest -s`); the two
criteria with runtime budgets also enforce them.
"""

import time

import numpy as np
import pytest

from thetalab import suite
from thetalab.thetanum import reset_convention


@pytest.fixture(autouse=True)
def _fresh_convention():
    reset_convention()
    yield


def _run(criterion: str, fn, budget: float | None = None) -> list[dict]:
    rng = np.random.default_rng(0)
    start = time.perf_counter()
    checks = fn("full", rng)
    elapsed = time.perf_counter() - start
    ok = all(c["pass"] for c in checks)
    worst = max((c["residual"] for c in checks), default=0.0)
    budget_note = f", {elapsed:.1f}s" + (f" (budget {budget:.0f}s)" if budget else "")
    print(
        f"[{'PASS' if ok else 'FAIL'}] {criterion}: "
        f"{len(checks)} checks, worst residual {worst:.3e}{budget_note}"
    )
    for c in checks:
        assert c["pass"], c
    if budget is not None:
        assert elapsed < budget, f"{criterion} took {elapsed:.1f}s, budget {budget}s"
    return checks


def test_criterion_1_transformation_law():
    """50 random words of length <= 12, m in {2,4,6}, three probe points, 1e-9."""
    checks = _run(
        "criterion 1: transformation law", suite.check_transformation_law, budget=30.0
    )
    assert all("direct" in c["observed"] for c in checks)


def test_criterion_2_discriminant_cross_validation():
    """Exact mu_4 agreement with the functional-equation character, |entries| <= 20."""
    checks = _run(
        "criterion 2: discriminant cross-validation",
        suite.check_discriminant_oracle,
        budget=60.0,
    )
    counts = [c for c in checks if c["check_id"] == "discriminant_solution_count"]
    assert len(counts) == 2 and all(c["observed"] == 1 for c in counts)


def test_criterion_3_stabilizer_theorems():
    """Factor triviality iff congruence membership, exhaustive |entries| <= 40."""
    checks = _run("criterion 3: stabilizer theorems", suite.check_stabilizer_sweeps)
    assert len(checks) == 4  # both directions for m = 2 and m = 4


def test_criterion_4_descended_theta_characteristic():
    _run(
        "criterion 4: descended theta characteristic", suite.check_descended_char
    )


def test_criterion_5_stone_von_neumann():
    checks = _run("criterion 5: Stone-von Neumann suite", suite.check_stone_von_neumann)
    assert {tuple(c["params"]["type"]) for c in checks} == {(2,), (4,), (2, 2)}


def test_criterion_6_descent_combinatorics():
    checks = _run(
        "criterion 6: descent combinatorics", suite.check_descent_combinatorics
    )
    counts = {
        tuple(c["params"]["type"]): c["observed"]
        for c in checks
        if c["check_id"] == "splitting_count"
    }
    assert counts == {(2,): 2, (4,): 2, (2, 2): 4, (4, 4): 4}
    orbit = [c for c in checks if c["check_id"] == "orbit_stabilizer"]
    assert {tuple(c["params"]["type"]) for c in orbit} == {(2,), (2, 2)}


def test_criterion_7_metaplectic_structure():
    _run("criterion 7: metaplectic structure", suite.check_metaplectic_weil)


def test_criterion_8_cocycle_identities():
    checks = _run("criterion 8: cocycle identities", suite.check_cocycle_identities)
    kinds = {c["check_id"] for c in checks}
    assert kinds == {"halfform_cocycle", "shimura_cocycle", "jacobi_cocycle"}
    assert {c["params"].get("k") for c in checks if c["check_id"] == "shimura_cocycle"} == {
        0,
        1,
        3,
    }


def test_criterion_9_index_computations():
    _run("criterion 9: index computations", suite.check_subgroup_indices)
