import os
import subprocess
import sys

import numpy as np
import pytest

from thetalab import _kernels


def test_backend_is_reported():
    assert _kernels.BACKEND in ("numba", "numpy")


def test_active_backend_matches_numpy_reference():
    """The selected backend agrees with the pure-numpy reference kernels."""
    tau = 0.21 + 0.73j
    for m, radius in ((2, 50), (6, 123), (8, 7)):
        got = _kernels.theta_class_sums(m, tau, radius)
        ref = _kernels._theta_class_sums_np(m, tau, radius)
        assert np.max(np.abs(got - ref)) < 1e-13
    for radius in (10, 200):
        got = _kernels.riemann_theta_sum(tau, radius)
        ref = _kernels._riemann_theta_sum_np(tau, radius)
        assert abs(got - ref) < 1e-13

    rng = np.random.default_rng(0)
    mats = rng.integers(0, 4, size=(37, 4, 4), dtype=np.uint8)
    gens = rng.integers(0, 4, size=(5, 4, 4), dtype=np.uint8)
    assert np.array_equal(
        _kernels.mod4_products(mats, gens), _kernels._mod4_products_np(mats, gens)
    )
    assert np.array_equal(
        _kernels.pack_mod4(mats), _kernels._pack_mod4_np(mats)
    )


def test_pack_keys_are_injective():
    rng = np.random.default_rng(1)
    mats = rng.integers(0, 4, size=(5000, 4, 4), dtype=np.uint8)
    keys = _kernels.pack_mod4(mats)
    flat = {tuple(m.reshape(-1)) for m in mats}
    assert len(set(keys.tolist())) == len(flat)


def test_summation_is_deterministic():
    tau = 0.3 + 1.1j
    a = _kernels.theta_class_sums(4, tau, 300)
    b = _kernels.theta_class_sums(4, tau, 300)
    assert np.array_equal(a, b)


@pytest.mark.parametrize("backend", ("numpy", "numba"))
def test_backend_env_selection(backend):
    """THETA_LAB_BACKEND forces the named backend in a fresh interpreter."""
    code = (
        "from thetalab import _kernels; "
        "print(_kernels.BACKEND); "
        "print(_kernels.riemann_theta_sum(0.3+1.1j, 40))"
    )
    env = dict(os.environ, THETA_LAB_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    lines = out.stdout.strip().splitlines()
    assert lines[0] == backend
    got = complex(lines[1].strip("()"))
    assert abs(got - _kernels.riemann_theta_sum(0.3 + 1.1j, 40)) < 1e-12


def test_bad_backend_rejected():
    code = "import thetalab._kernels"
    env = dict(os.environ, THETA_LAB_BACKEND="fortran")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode != 0
