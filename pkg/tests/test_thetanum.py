import cmath
import math

import numpy as np
import pytest

from thetalab import _kernels
from thetalab.congruence import (
    Gamma0,
    SL2Matrix,
    SL2_I,
    SL2_S,
    NotMember,
    member,
    THETA12,
    sl2_with_entry_bound,
)
from thetalab.cyclo import NoSnap, ONE, RootOfUnity, ZETA4
from thetalab.metaplectic import MP_I, MP_S, MP_T, MP_Z, MpElement, mp_from_word, mp_mul
from thetalab.symplectic4 import discriminant
from thetalab.thetanum import (
    ConventionFlip,
    TauTooLow,
    _CONVENTION,
    functional_eq_lambda,
    get_convention,
    halfform_cocycle,
    jacobi_action,
    jacobi_cocycle,
    jacobi_compose,
    reset_convention,
    riemann_theta,
    shimura_cocycle,
    theta_constants,
    truncation_radius,
    verify_transformation,
    _tail_bound,
)


@pytest.fixture(autouse=True)
def _fresh_convention():
    reset_convention()
    yield
    reset_convention()


def brute_riemann_theta(tau: complex, radius: int = 400) -> complex:
    """Independent summation oracle (plain Python, no kernel)."""
    return sum(cmath.exp(1j * cmath.pi * n * n * tau) for n in range(-radius, radius + 1))


def brute_theta_vector(m: int, tau: complex, radius: int = 400) -> np.ndarray:
    out = np.zeros(m, dtype=complex)
    for r in range(-radius, radius + 1):
        out[r % m] += cmath.exp(1j * cmath.pi * tau * r * r / m)
    return out


def test_truncation_radius_monotone_in_im():
    radii = [truncation_radius(2, y, 1e-12) for y in (0.1, 0.5, 1.0, 2.0, 5.0)]
    assert radii == sorted(radii, reverse=True)


def test_truncation_radius_scaling_in_m():
    for y in (0.3, 1.0):
        r1 = truncation_radius(2, y, 1e-12)
        r2 = truncation_radius(4, y, 1e-12)
        assert r2 <= r1 * math.sqrt(2) + 1


def test_truncation_radius_certifies_tail():
    m, y, tol = 2, 1.0, 1e-12
    radius = truncation_radius(m, y, tol)
    assert _tail_bound(m, y, radius) < tol
    # oversummation oracle: the actual dropped tail is below the bound
    tail = sum(
        2 * math.exp(-math.pi * y * r * r / m) for r in range(radius, 4 * radius)
    )
    assert tail < _tail_bound(m, y, radius) < tol


def test_truncation_radius_contract():
    with pytest.raises(TauTooLow):
        truncation_radius(2, 0.05, 1e-12)
    with pytest.raises(ValueError):
        truncation_radius(3, 1.0, 1e-12)


def test_riemann_theta_value():
    # theta(i) = pi^{1/4} / Gamma(3/4); the 10-digit reference value
    val = riemann_theta(1j, 1e-12)
    assert abs(val - 1.0864348113) < 1e-9
    assert abs(val - brute_riemann_theta(1j)) < 1e-13
    assert val != 0


def test_riemann_theta_periodicity():
    tau = 0.3 + 1.1j
    assert abs(riemann_theta(tau + 2) - riemann_theta(tau)) < 1e-12


def test_riemann_theta_functional_equation():
    tau = 2j
    lhs = riemann_theta(-1 / tau) ** 2
    rhs = -1j * tau * riemann_theta(tau) ** 2
    assert abs(lhs - rhs) < 1e-10


def test_tau_floor():
    with pytest.raises(TauTooLow):
        riemann_theta(0.5 + 0.05j)
    with pytest.raises(TauTooLow):
        theta_constants(2, 0.09j)


def test_theta_constants_match_brute_force():
    for m in (2, 4, 6):
        for tau in (0.3 + 1.1j, -0.4 + 0.8j, 2j):
            vec = theta_constants(m, tau, 1e-12)
            assert np.max(np.abs(vec.values - brute_theta_vector(m, tau))) < 1e-12
            assert vec.err_bound <= 1e-12


def test_theta_constants_level_two_is_rescaled_riemann():
    tau = 0.3 + 1.1j
    vec = theta_constants(2, tau, 1e-12)
    assert abs(vec.values[0] - riemann_theta(2 * tau)) < 1e-12


def test_theta_constants_symmetry():
    vec = theta_constants(6, 0.2 + 0.9j, 1e-12)
    for nu in range(6):
        assert abs(vec.values[nu] - vec.values[(6 - nu) % 6]) < 1e-12


def test_theta_constants_t_shift():
    for m in (2, 4, 6):
        tau = 0.1 + 0.9j
        shifted = theta_constants(m, tau + 1, 1e-12).values
        base = theta_constants(m, tau, 1e-12).values
        for nu in range(m):
            factor = cmath.exp(1j * cmath.pi * nu * nu / m)
            assert abs(shifted[nu] - factor * base[nu]) < 1e-12


def test_err_bound_certifies_resummation():
    for m, tau in ((2, 0.3 + 1.1j), (6, 2j)):
        vec = theta_constants(m, tau, 1e-10)
        radius = truncation_radius(m, tau.imag, 1e-10)
        doubled = _kernels.theta_class_sums(m, complex(tau), 2 * radius)
        assert np.max(np.abs(doubled - vec.values)) < vec.err_bound


def test_functional_eq_lambda_examples():
    assert functional_eq_lambda(SL2_I) == ONE
    assert functional_eq_lambda(SL2_S) == ZETA4
    with pytest.raises(NotMember):
        functional_eq_lambda(SL2Matrix(1, 1, 0, 1))


def test_functional_eq_matches_discriminant_bound20():
    for gamma in sl2_with_entry_bound(20):
        if not member(gamma, THETA12):
            continue
        lam = functional_eq_lambda(gamma)
        disc = discriminant([[gamma.a, gamma.b], [gamma.c, gamma.d]], "even")
        assert lam == disc, gamma


def test_halfform_cocycle_identity_and_square():
    rng = np.random.default_rng(0)
    tau = 0.1 + 1.3j
    pool = [g for g in sl2_with_entry_bound(10) if member(g, THETA12)]
    assert abs(halfform_cocycle(SL2_I, tau) - 1) < 1e-14
    checked = 0
    while checked < 200:
        g1 = pool[int(rng.integers(0, len(pool)))]
        g2 = pool[int(rng.integers(0, len(pool)))]
        if g2.moebius(tau).imag < 0.1:
            continue
        checked += 1
        lhs = halfform_cocycle(g1 * g2, tau)
        rhs = halfform_cocycle(g1, g2.moebius(tau)) * halfform_cocycle(g2, tau)
        assert abs(lhs - rhs) < 1e-9
    # square of the half-form cocycle against the mu_4 character
    for g in pool[:60]:
        j = halfform_cocycle(g, tau)
        lam = functional_eq_lambda(g)
        target = lam.inverse().value * (g.c * tau + g.d)
        assert abs(j * j - target) < 1e-9


def test_shimura_cocycle_identity():
    rng = np.random.default_rng(1)
    tau = 0.1 + 1.3j
    pool = [g for g in sl2_with_entry_bound(10) if member(g, Gamma0(4))]
    assert shimura_cocycle(pool[0], 0, tau) == 1
    for k in (1, 3):
        checked = 0
        while checked < 100:
            g1 = pool[int(rng.integers(0, len(pool)))]
            g2 = pool[int(rng.integers(0, len(pool)))]
            if g2.moebius(tau).imag < 0.1:
                continue
            checked += 1
            lhs = shimura_cocycle(g1 * g2, k, tau)
            rhs = shimura_cocycle(g1, k, g2.moebius(tau)) * shimura_cocycle(g2, k, tau)
            assert abs(lhs - rhs) < 1e-8
    with pytest.raises(NotMember):
        shimura_cocycle(SL2_S, 1, tau)


def test_jacobi_cocycle_trivial_cases():
    tau, z = 0.2 + 1.0j, 0.3 + 0.1j
    assert jacobi_cocycle(SL2_I, 0, 0, 2, tau, z) == 1
    assert abs(jacobi_cocycle(SL2_I, 0, 1, 2, tau, z) - 1) < 1e-14


def test_jacobi_cocycle_identity():
    rng = np.random.default_rng(2)
    pool = list(sl2_with_entry_bound(5))
    worst = 0.0
    accepted = 0
    while accepted < 100:
        g1 = pool[int(rng.integers(0, len(pool)))]
        g2 = pool[int(rng.integers(0, len(pool)))]
        lam1 = (int(rng.integers(-1, 2)), int(rng.integers(-1, 2)))
        lam2 = (int(rng.integers(-1, 2)), int(rng.integers(-1, 2)))
        z = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
        tau = complex(rng.uniform(-0.3, 0.3), rng.uniform(0.9, 1.4))
        e1, e2 = (g1, lam1), (g2, lam2)
        prod = jacobi_compose(e1, e2)
        lhs = jacobi_cocycle(prod[0], prod[1][0], prod[1][1], 2, tau, z)
        moved = jacobi_action(e2, (z, tau))
        rhs = jacobi_cocycle(g1, lam1[0], lam1[1], 2, moved[1], moved[0]) * jacobi_cocycle(
            g2, lam2[0], lam2[1], 2, tau, z
        )
        if not (1e-200 < abs(lhs) < 1e200 and 1e-200 < abs(rhs) < 1e200):
            continue
        accepted += 1
        worst = max(worst, abs(lhs / rhs - 1))
    assert worst < 1e-8


def test_verify_transformation_generators():
    for m in (2, 4, 6):
        for tau in (0.3 + 1.1j, 2j):
            check = verify_transformation(m, MP_T, tau, 1e-9)
            assert check.passed and check.residual < 1e-12
            check = verify_transformation(m, MP_Z, tau, 1e-9)
            assert check.passed
            check = verify_transformation(m, MP_S, tau, 1e-9)
            assert check.passed and check.convention == "direct"
    assert get_convention() == "direct"


def test_verify_transformation_random_words():
    rng = np.random.default_rng(3)
    taus = (0.3 + 1.1j, -0.4 + 0.8j, 2j)
    count = 0
    while count < 50:
        word = [
            [("S", 1), ("T", 1), ("T", -1)][int(rng.integers(0, 3))]
            for _ in range(int(rng.integers(0, 12)))
        ]
        p = mp_from_word(word)
        if rng.integers(0, 2):
            p = mp_mul(p, MP_Z)
        if any(p.gamma.moebius(t).imag < 0.1 for t in taus):
            continue
        count += 1
        for m in (2, 4, 6):
            for tau in taus:
                check = verify_transformation(m, p, tau, 1e-9)
                assert check.passed, (p, m, tau, check)
    assert get_convention() == "direct"


def test_verify_transformation_preconditions():
    with pytest.raises(TauTooLow):
        verify_transformation(2, MP_T, 0.3 + 0.3j, 1e-9)
    # a matrix pushing tau below the evaluation floor
    p = mp_from_word([("S", 1), ("T", 30), ("S", 1)])
    with pytest.raises(TauTooLow):
        verify_transformation(2, p, 2j, 1e-9)


def test_convention_flip_is_detected():
    reset_convention()
    _CONVENTION.observe("direct")
    with pytest.raises(ConventionFlip):
        _CONVENTION.observe("conjugate")
    reset_convention()
    assert get_convention() is None


def test_probe_independence_of_functional_eq():
    for tau in (2j, 0.3 + 1.1j, 0.5 + 2.5j):
        assert functional_eq_lambda(SL2_S, tau) == ZETA4
