"""Certified numerical theta series and the analytic verification battery.

Evaluation: the one-variable theta series and the vector of level-m theta
constants

    theta_{m,nu}(tau) = sum_{r = nu mod m} e^{2 pi i tau r^2 / (2m)},

truncated at a radius whose tail is certified by an explicit geometric
bound; every returned vector carries its error bound.  Verification: the
mu_4 character read off the classical functional equation, the half-form
and level-2 cocycles, the elliptic automorphy cocycle for the semidirect
product with the lattice, and the central transformation-law check

    theta(gamma tau) = phi(tau) . rho_m(gamma, phi) . theta(tau),

which is tested against the composed unitary matrix and its entrywise
conjugate.  Which of the two conventions holds is measured, not asserted;
it must be the same for every decisive query in a run, and a flip raises
an error.  The summation order is fixed (r ascending), so results are
reproducible bit for bit run to run.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .congruence import (
    Gamma0,
    SL2Matrix,
    THETA12,
    NotMember,
    member,
)
from .cyclo import RootOfUnity, ru_snap
from .metaplectic import MpElement, phi_eval
from .weilrep import weil_rep

__all__ = [
    "TauTooLow",
    "ConventionFlip",
    "ThetaVector",
    "TransformCheck",
    "MIN_IM_EVAL",
    "MIN_IM_VERIFY",
    "PROBE_POINTS",
    "truncation_radius",
    "riemann_theta",
    "theta_constants",
    "functional_eq_lambda",
    "halfform_cocycle",
    "shimura_cocycle",
    "jacobi_cocycle",
    "jacobi_compose",
    "jacobi_action",
    "verify_transformation",
    "get_convention",
    "reset_convention",
]

MIN_IM_EVAL = 0.1
MIN_IM_VERIFY = 0.5
PROBE_POINTS = (2j, 0.3 + 1.1j)


class TauTooLow(ValueError):
    """Im(tau) is below the precision contract of the operation."""


class ConventionFlip(RuntimeError):
    """Two decisive verification queries in one run disagreed on the convention."""


@dataclass(frozen=True, slots=True)
class ThetaVector:
    """Theta constants at tau with a certified truncation error bound."""

    m: int
    tau: complex
    values: np.ndarray
    err_bound: float


@dataclass(frozen=True, slots=True)
class TransformCheck:
    residual: float
    convention: str  # "direct" | "conjugate"
    passed: bool
    residual_direct: float
    residual_conjugate: float


def _tail_bound(m: int, im_tau: float, radius: int) -> float:
    """Certified bound on 2 sum_{r >= radius} e^{-pi im_tau r^2 / m}.

    The term ratio is at most q = e^{-pi im_tau (2 radius + 1)/m} < 1, so the
    tail is dominated by the geometric series term(radius) / (1 - q).
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    x = math.pi * im_tau / m
    q = math.exp(-x * (2 * radius + 1))
    return 2.0 * math.exp(-x * radius * radius) / (1.0 - q)


def _radius_unchecked(m: int, im_tau: float, tol: float) -> int:
    if im_tau <= 0:
        raise ValueError("im_tau must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    radius = 1
    while _tail_bound(m, im_tau, radius) >= tol:
        radius += 1
    return radius


def truncation_radius(m: int, im_tau: float, tol: float) -> int:
    """Smallest radius whose certified tail bound is below tol."""
    if m <= 0 or m % 2 != 0:
        raise ValueError(f"m must be even positive, got {m}")
    if im_tau < MIN_IM_EVAL:
        raise TauTooLow(f"im_tau={im_tau} is below the contract floor {MIN_IM_EVAL}")
    return _radius_unchecked(m, im_tau, tol)


def _riemann_theta_unchecked(tau: complex, tol: float) -> complex:
    radius = _radius_unchecked(1, tau.imag, tol)
    return _kernels.riemann_theta_sum(complex(tau), radius)


def riemann_theta(tau: complex, tol: float = 1e-12) -> complex:
    """theta(tau) = sum_n e^{pi i n^2 tau}, within tol; non-vanishing on the half-plane."""
    if tau.imag < MIN_IM_EVAL:
        raise TauTooLow(f"Im(tau)={tau.imag} is below the contract floor {MIN_IM_EVAL}")
    return _riemann_theta_unchecked(tau, tol)


def _theta_vector_unchecked(m: int, tau: complex, tol: float) -> tuple[np.ndarray, float]:
    radius = _radius_unchecked(m, tau.imag, tol)
    values = _kernels.theta_class_sums(m, complex(tau), radius)
    return values, _tail_bound(m, tau.imag, radius + 1)


def theta_constants(m: int, tau: complex, tol: float = 1e-12) -> ThetaVector:
    """All m theta constants at tau, with a shared certified error bound."""
    if m <= 0 or m % 2 != 0:
        raise ValueError(f"m must be even positive, got {m}")
    if tau.imag < MIN_IM_EVAL:
        raise TauTooLow(f"Im(tau)={tau.imag} is below the contract floor {MIN_IM_EVAL}")
    values, err = _theta_vector_unchecked(m, tau, tol)
    return ThetaVector(m, tau, values, err)


def functional_eq_lambda(
    gamma: SL2Matrix, tau: complex = 2j, snap_tol: float = 1e-6
) -> RootOfUnity:
    """The mu_4 value of (c tau + d) theta(tau)^2 / theta(gamma tau)^2.

    This is the character by which the squared theta series transforms on
    the theta group; the value is snapped into mu_4 at the given tau and
    cross-checked at a second probe point.
    """
    if not member(gamma, THETA12):
        raise NotMember(f"{gamma} is not in the theta group")
    if tau.imag < MIN_IM_VERIFY:
        raise TauTooLow(f"Im(tau)={tau.imag} is below {MIN_IM_VERIFY}")
    second = PROBE_POINTS[1] if abs(tau - PROBE_POINTS[0]) < 1e-12 else PROBE_POINTS[0]
    values = []
    for t in (tau, second):
        gt = gamma.moebius(t)
        th = _riemann_theta_unchecked(t, 1e-13)
        th_g = _riemann_theta_unchecked(gt, 1e-13)
        val = (gamma.c * t + gamma.d) * th * th / (th_g * th_g)
        values.append(ru_snap(val, 4, snap_tol))
    if values[0] != values[1]:
        raise ArithmeticError(
            f"probe points disagree: {values[0]} vs {values[1]}; convention failure"
        )
    return values[0]


def halfform_cocycle(gamma: SL2Matrix, tau: complex) -> complex:
    """theta(gamma tau) / theta(tau) on the theta group."""
    if not member(gamma, THETA12):
        raise NotMember(f"{gamma} is not in the theta group")
    if tau.imag < MIN_IM_EVAL:
        raise TauTooLow(f"Im(tau)={tau.imag} is below {MIN_IM_EVAL}")
    return _riemann_theta_unchecked(gamma.moebius(tau), 1e-13) / _riemann_theta_unchecked(
        tau, 1e-13
    )


def shimura_cocycle(gamma: SL2Matrix, k: int, tau: complex) -> complex:
    """(theta(2 gamma tau) / theta(2 tau))^k on Gamma0(4)."""
    if not member(gamma, Gamma0(4)):
        raise NotMember(f"{gamma} is not in Gamma0(4)")
    if tau.imag < MIN_IM_EVAL:
        raise TauTooLow(f"Im(tau)={tau.imag} is below {MIN_IM_EVAL}")
    base = _riemann_theta_unchecked(
        2 * gamma.moebius(tau), 1e-13
    ) / _riemann_theta_unchecked(2 * tau, 1e-13)
    return base**k


def jacobi_cocycle(
    gamma: SL2Matrix, lam1: int, lam2: int, m: int, tau: complex, z: complex
) -> complex:
    """Automorphy factor of the index-m/2 line bundle on the universal elliptic curve.

    e^{2 pi i m (lam1^2 tau + 2 lam1 z - c (z + lam1 tau + lam2)^2 / (c tau + d))}
    for the semidirect action of (lam1, lam2; gamma) on (z, tau).
    """
    if m <= 0 or m % 2 != 0:
        raise ValueError(f"m must be even positive, got {m}")
    if tau.imag <= 0:
        raise ValueError("tau must be in the upper half-plane")
    c, d = gamma.c, gamma.d
    w = z + lam1 * tau + lam2
    expo = lam1 * lam1 * tau + 2 * lam1 * z - c * w * w / (c * tau + d)
    return np.exp(2j * np.pi * m * expo)


def jacobi_compose(
    g1: tuple[SL2Matrix, tuple[int, int]], g2: tuple[SL2Matrix, tuple[int, int]]
) -> tuple[SL2Matrix, tuple[int, int]]:
    """Semidirect product: (gamma, lam)(gamma', lam') = (gamma gamma', lam gamma' + lam')."""
    gamma1, (l1, l2) = g1
    gamma2, (m1, m2) = g2
    a, b, c, d = gamma2.entries()
    return (gamma1 * gamma2, (l1 * a + l2 * c + m1, l1 * b + l2 * d + m2))


def jacobi_action(
    g: tuple[SL2Matrix, tuple[int, int]], point: tuple[complex, complex]
) -> tuple[complex, complex]:
    """(z, tau) -> ((z + lam1 tau + lam2)/(c tau + d), gamma tau)."""
    gamma, (l1, l2) = g
    z, tau = point
    return ((z + l1 * tau + l2) / (gamma.c * tau + gamma.d), gamma.moebius(tau))


# --- the transformation-law check -------------------------------------------------

class _ConventionState:
    def __init__(self):
        self._lock = threading.Lock()
        self._value: str | None = None

    def observe(self, convention: str) -> None:
        with self._lock:
            if self._value is None:
                self._value = convention
            elif self._value != convention:
                raise ConventionFlip(
                    f"convention flipped from {self._value} to {convention}"
                )

    def get(self) -> str | None:
        with self._lock:
            return self._value

    def reset(self) -> None:
        with self._lock:
            self._value = None


_CONVENTION = _ConventionState()


def get_convention() -> str | None:
    """The run-global convention fixed so far, if any."""
    return _CONVENTION.get()


def reset_convention() -> None:
    """Forget the run-global convention (test isolation hook)."""
    _CONVENTION.reset()


def verify_transformation(
    m: int, p: MpElement, tau: complex, tol: float = 1e-9
) -> TransformCheck:
    """Check theta(gamma tau) = phi(tau) . rho_m(p) . theta(tau) at tau.

    Both the composed matrix and its entrywise conjugate are tried; the
    residual is the smaller max-norm deviation and the convention records
    which side achieved it.  A query is decisive when exactly one side is
    below tol; all decisive queries in a run must agree, otherwise
    ConventionFlip is raised.
    """
    if m <= 0 or m % 2 != 0:
        raise ValueError(f"m must be even positive, got {m}")
    if tau.imag < MIN_IM_VERIFY:
        raise TauTooLow(f"Im(tau)={tau.imag} is below {MIN_IM_VERIFY}")
    gt = p.gamma.moebius(tau)
    if gt.imag < MIN_IM_EVAL:
        raise TauTooLow(f"Im(gamma tau)={gt.imag} is below {MIN_IM_EVAL}")
    eval_tol = min(tol * 1e-3, 1e-12)
    theta_here, _ = _theta_vector_unchecked(m, tau, eval_tol)
    theta_moved, _ = _theta_vector_unchecked(m, gt, eval_tol)
    phi = phi_eval(p, tau)
    mat = weil_rep(m, p)
    r_direct = float(np.max(np.abs(theta_moved - phi * (mat @ theta_here))))
    r_conj = float(np.max(np.abs(theta_moved - phi * (mat.conj() @ theta_here))))
    if r_direct <= r_conj:
        residual, convention = r_direct, "direct"
    else:
        residual, convention = r_conj, "conjugate"
    decisive = residual < tol <= max(r_direct, r_conj)
    if decisive:
        _CONVENTION.observe(convention)
    return TransformCheck(
        residual=residual,
        convention=convention,
        passed=residual < tol,
        residual_direct=r_direct,
        residual_conjugate=r_conj,
    )
