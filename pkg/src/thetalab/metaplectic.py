"""Exact arithmetic in the metaplectic double cover of SL2(Z).

An element is a pair (gamma, phi) with phi a holomorphic square root of
c tau + d on the upper half-plane; we store phi by its sign relative to the
principal branch (argument in (-pi, pi], so sqrt(-1) = i).  Products track
the branch by evaluating phi_1(gamma_2 tau) phi_2(tau) at a probe point and
snapping the quotient against the principal branch to +-1; the cocycle is
locally constant in tau, so one generic probe determines it, and a failed
snap signals a precision bug rather than a mathematical ambiguity.

Also provided: factorization of SL2(Z) matrices into the standard
generators S and T by a continued-fraction reduction, lifting of words to
the double cover, and the mu_8-valued character on the theta group that
measures the square-root-of-tau cocycle against the classical theta
function (computed from its defining relation at two probe points, never
from a closed form).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .congruence import SL2Matrix, SL2_I, SL2_S, SL2_T, THETA12, NotMember, member
from .cyclo import RootOfUnity, ru_snap

__all__ = [
    "BranchResolutionFailure",
    "MpElement",
    "MP_I",
    "MP_S",
    "MP_T",
    "MP_Z",
    "phi_eval",
    "mp_mul",
    "mp_inv",
    "mp_pow",
    "st_factor",
    "word_to_matrix",
    "mp_lift_word",
    "mp_from_word",
    "tilde_lambda",
]

PROBE = 2j
SECOND_PROBE = 0.3 + 1.1j
_SIGN_TOL = 1e-6


class BranchResolutionFailure(ArithmeticError):
    """Numeric branch-sign determination was not within tolerance of +-1."""


@dataclass(frozen=True, slots=True)
class MpElement:
    """(gamma, eps): the square root phi(tau) = eps * principal sqrt(c tau + d)."""

    gamma: SL2Matrix
    eps: int = 1

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +-1, got {self.eps}")

    def as_string(self) -> str:
        sign = "+" if self.eps == 1 else "-"
        a, b, c, d = self.gamma.entries()
        return f"{a},{b},{c},{d}:{sign}"

    @classmethod
    def from_string(cls, text: str) -> "MpElement":
        body, _, sign = text.partition(":")
        if sign not in ("+", "-"):
            raise ValueError(f"branch must be '+' or '-': {text!r}")
        nums = [int(t) for t in body.split(",")]
        if len(nums) != 4:
            raise ValueError(f"need four entries: {text!r}")
        return cls(SL2Matrix(*nums), 1 if sign == "+" else -1)

    def __repr__(self) -> str:
        return f"MpElement({self.as_string()!r})"


MP_I = MpElement(SL2_I, 1)
MP_S = MpElement(SL2_S, 1)
MP_T = MpElement(SL2_T, 1)
MP_Z = MpElement(SL2_I, -1)  # the nontrivial central element


def phi_eval(p: MpElement, tau: complex) -> complex:
    """phi(tau) = eps * principal sqrt(c tau + d); squares to c tau + d."""
    if tau.imag <= 0:
        raise ValueError(f"tau must be in the upper half-plane, got {tau}")
    return p.eps * cmath.sqrt(p.gamma.c * tau + p.gamma.d)


def mp_mul(p: MpElement, q: MpElement) -> MpElement:
    """(gamma1, phi1)(gamma2, phi2) = (gamma1 gamma2, phi1(gamma2 tau) phi2(tau))."""
    gamma = p.gamma * q.gamma
    value = phi_eval(p, q.gamma.moebius(PROBE)) * phi_eval(q, PROBE)
    reference = cmath.sqrt(gamma.c * PROBE + gamma.d)
    ratio = value / reference
    if abs(ratio - 1) < _SIGN_TOL:
        eps = 1
    elif abs(ratio + 1) < _SIGN_TOL:
        eps = -1
    else:
        raise BranchResolutionFailure(
            f"branch ratio {ratio} is not within {_SIGN_TOL} of +-1"
        )
    return MpElement(gamma, eps)


def mp_inv(p: MpElement) -> MpElement:
    candidate = MpElement(p.gamma.inverse(), 1)
    if mp_mul(p, candidate) == MP_I:
        return candidate
    return MpElement(p.gamma.inverse(), -1)


def mp_pow(p: MpElement, n: int) -> MpElement:
    if n < 0:
        return mp_pow(mp_inv(p), -n)
    out = MP_I
    for _ in range(n):
        out = mp_mul(out, p)
    return out


def st_factor(gamma: SL2Matrix) -> list[tuple[str, int]]:
    """Factor gamma as a product of S and T powers, tokens [("T", k), ("S", 1), ...].

    Continued-fraction reduction on the left: peeling T^k makes |a| at most
    |c|/2, peeling S swaps the rows, so the bottom-left entry Euclid-shrinks
    and the token count is logarithmic in the entries.
    """
    tokens: list[tuple[str, int]] = []
    w = gamma
    s_inv = SL2_S.inverse()
    while w.c != 0:
        k = _nearest_quotient(w.a, w.c)
        if k != 0:
            tokens.append(("T", k))
            w = SL2Matrix(w.a - k * w.c, w.b - k * w.d, w.c, w.d)
        tokens.append(("S", 1))
        w = s_inv * w
    if w.a == -1:
        tokens.append(("S", 1))
        tokens.append(("S", 1))
        w = -w
    if w.b != 0:
        tokens.append(("T", w.b))
        w = SL2Matrix(1, 0, 0, 1)
    return tokens


def _nearest_quotient(a: int, c: int) -> int:
    """Integer k minimizing |a - k c| (exact, no floats)."""
    q = a // c
    return q if abs(a - q * c) <= abs(a - (q + 1) * c) else q + 1


def word_to_matrix(tokens: list[tuple[str, int]]) -> SL2Matrix:
    out = SL2_I
    for name, k in tokens:
        if name == "T":
            out = out * SL2Matrix(1, k, 0, 1)
        elif name == "S":
            for _ in range(k):
                out = out * SL2_S
        else:
            raise ValueError(f"unknown token {name!r}")
    return out


def mp_lift_word(gamma: SL2Matrix, eps: int = 1) -> list[tuple[str, int]]:
    """Word over (S,+), (T,+) and the central (I,-) multiplying to (gamma, eps).

    At most one trailing central token ("Z", 1) is emitted, exactly when the
    all-principal lift of the S/T word lands on the opposite branch.
    """
    tokens = st_factor(gamma)
    lifted = mp_from_word(tokens)
    if lifted.gamma != gamma:
        raise ArithmeticError("factorization does not multiply back to gamma")
    if lifted.eps != eps:
        tokens = tokens + [("Z", 1)]
    return tokens


def mp_from_word(tokens: list[tuple[str, int]]) -> MpElement:
    """Multiply out a token word in the double cover."""
    out = MP_I
    for name, k in tokens:
        if name == "T":
            out = mp_mul(out, MpElement(SL2Matrix(1, k, 0, 1), 1))
        elif name == "S":
            for _ in range(k):
                out = mp_mul(out, MP_S)
        elif name == "Z":
            for _ in range(k):
                out = mp_mul(out, MP_Z)
        else:
            raise ValueError(f"unknown token {name!r}")
    return out


def tilde_lambda(p: MpElement, snap_tol: float = 1e-6) -> RootOfUnity:
    """The mu_8 character on the metaplectic theta group.

    Defined by lambda~(p) = phi(tau) theta(tau) / theta(gamma tau), which the
    functional equation of the theta series makes independent of tau; the
    value is computed at a probe point with Im tau = 2, snapped into mu_8,
    and cross-checked at a second probe point.
    """
    if not member(p.gamma, THETA12):
        raise NotMember(f"{p.gamma} is not in the theta group")
    from .thetanum import _riemann_theta_unchecked  # local to avoid an import cycle

    values = []
    for tau in (PROBE, SECOND_PROBE):
        gt = p.gamma.moebius(tau)
        num = phi_eval(p, tau) * _riemann_theta_unchecked(tau, 1e-13)
        den = _riemann_theta_unchecked(gt, 1e-13)
        values.append(ru_snap(num / den, 8, snap_tol))
    if values[0] != values[1]:
        raise ArithmeticError(
            f"probe points disagree: {values[0]} vs {values[1]}; convention failure"
        )
    return values[0]
