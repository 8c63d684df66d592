"""The m-dimensional unitary representation of the metaplectic group.

On the group ring of Z/m (m even) the two generators act by

    T  |->  diag(e^{pi i k^2 / m})
    S  |->  (prefactor / sqrt(m)) (e^{-2 pi i k l / m})_{k,l}

with the prefactor an eighth root of unity.  Its sign is *measured*, not
assumed: of the two candidates e^{+- i pi/4} exactly one makes the defining
relations (S T)^3 = S^2 and S^8 = 1 hold as matrices, and the constructor
selects that one at runtime (it is e^{-i pi/4}, the square root of -i, for
every even m; an error is raised if the relation check ever fails to single
out one candidate).  General elements are then word-composed along the
continued-fraction factorization from the metaplectic module, with the
central element acting as S^4 = -1.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclo import RootOfUnity, ru_snap
from .metaplectic import MpElement, mp_lift_word

__all__ = [
    "BadIndex",
    "WEIL_DIM_BOUND",
    "weil_generator",
    "weil_rep",
    "det_character",
    "det_character_order",
    "det_character_square_order",
]

WEIL_DIM_BOUND = 512


class BadIndex(ValueError):
    """m is not an even positive integer within the supported bound."""


def _check_m(m: int) -> None:
    if m <= 0 or m % 2 != 0 or m > WEIL_DIM_BOUND:
        raise BadIndex(f"m must be even with 0 < m <= {WEIL_DIM_BOUND}, got {m}")


@lru_cache(maxsize=None)
def _generators(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(T, S, S^4) matrices with the relation-consistent S prefactor."""
    _check_m(m)
    k = np.arange(m)
    t = np.diag(np.exp(1j * np.pi * (k * k) / m))
    base = np.exp(-2j * np.pi * np.outer(k, k) / m) / np.sqrt(m)
    consistent = []
    for pref in (cmath.exp(-1j * np.pi / 4), cmath.exp(1j * np.pi / 4)):
        s = pref * base
        st = s @ t
        braid = np.linalg.norm(st @ st @ st - s @ s, ord=np.inf)
        s4 = s @ s @ s @ s
        octic = np.linalg.norm(s4 @ s4 - np.eye(m), ord=np.inf)
        if braid < 1e-9 and octic < 1e-9:
            consistent.append((pref, s, s4))
    if len(consistent) != 1:
        raise ArithmeticError(
            f"relation check selected {len(consistent)} prefactors for m={m}"
        )
    _, s, s4 = consistent[0]
    for a in (t, s, s4):
        a.setflags(write=False)
    return t, s, s4


def weil_generator(m: int, which: str) -> np.ndarray:
    """Generator matrix: 'T', 'S', or 'Zminus' (the central element, S^4 = -1)."""
    t, s, s4 = _generators(m)
    table = {"T": t, "S": s, "Zminus": s4}
    if which not in table:
        raise ValueError(f"which must be 'T', 'S' or 'Zminus', got {which!r}")
    return table[which].copy()


def _t_power(m: int, k: int) -> np.ndarray:
    """T^k directly as a diagonal (avoids k matrix products for large shifts)."""
    j = np.arange(m)
    return np.diag(np.exp(1j * np.pi * (j * j) * (k % (2 * m)) / m))


def weil_rep(m: int, p: MpElement) -> np.ndarray:
    """Matrix of an arbitrary metaplectic element, composed along its word.

    The word comes from the continued-fraction factorization of gamma into
    S and T with an optional trailing central correction; because the
    generator matrices satisfy the defining relations, the result does not
    depend on the word chosen, and the representation is a homomorphism.
    """
    _check_m(m)
    _, s, s4 = _generators(m)
    out = np.eye(m, dtype=np.complex128)
    for name, k in mp_lift_word(p.gamma, p.eps):
        if name == "T":
            out = out @ _t_power(m, k)
        elif name == "S":
            for _ in range(k):
                out = out @ s
        elif name == "Z":
            for _ in range(k):
                out = out @ (-np.eye(m))
        else:
            raise ValueError(f"unknown token {name!r}")
    return out


def det_character(m: int, p: MpElement) -> complex:
    """Determinant of the representation at p."""
    return complex(np.linalg.det(weil_rep(m, p)))


def _det_exponents(m: int) -> tuple[Fraction, Fraction]:
    """Exact exponents in Q/Z of det(T) and det(S).

    det(T) is exact from the diagonal; det(S) is computed numerically and
    snapped into mu_24, which is safe because the determinant character of
    the double cover has order dividing 24.
    """
    _check_m(m)
    q_t = Fraction(sum(k * k for k in range(m)), 2 * m) % 1
    det_s = complex(np.linalg.det(weil_generator(m, "S")))
    q_s = ru_snap(det_s, 24, 1e-6).exponent
    return q_t, q_s


def det_character_order(m: int) -> int:
    """Order of the determinant character: least n killing both generator dets."""
    q_t, q_s = _det_exponents(m)
    order = np.lcm(q_t.denominator, q_s.denominator)
    for n in range(1, int(order) + 1):  # brute-force cross-check of the lcm
        if (q_t * n) % 1 == 0 and (q_s * n) % 1 == 0:
            if n != order:
                raise ArithmeticError("lcm disagrees with brute-force order")
            break
    return int(order)


def det_character_square_order(m: int) -> int:
    """Order of the squared determinant character."""
    q_t, q_s = _det_exponents(m)
    return int(np.lcm(((2 * q_t) % 1).denominator, ((2 * q_s) % 1).denominator))
