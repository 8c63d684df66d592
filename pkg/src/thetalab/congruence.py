"""Congruence subgroups of SL2(Z) and the finite level data they stabilize.

Membership predicates for Gamma(N), Gamma0(N), Gamma(m,2m) and the theta
group Gamma(1,2); the descent homomorphism Gamma0(2m) -> Gamma(1,2) and the
halving map Gamma0(2) -> SL2(Z); the exact exponential factors by which a
matrix moves a distinguished theta structure or splitting (triviality of
those factors characterizes the stabilizer subgroups); and subgroup indices
computed by coset counting in SL2(Z/L).

Everything here is exact integer / rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .cyclo import RootOfUnity

__all__ = [
    "NotUnimodular",
    "NotMember",
    "SL2Matrix",
    "SL2_I",
    "SL2_S",
    "SL2_T",
    "Group",
    "Gamma",
    "Gamma0",
    "GammaM2M",
    "THETA12",
    "member",
    "des_hom",
    "v_hom",
    "theta_action_factor",
    "splitting_action_factor",
    "descended_theta_char",
    "subgroup_index",
    "relative_index",
    "sl2_with_entry_bound",
]


class NotUnimodular(ValueError):
    """Matrix does not have determinant one."""


class NotMember(ValueError):
    """Matrix is outside the congruence subgroup required by the operation."""


@dataclass(frozen=True, slots=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise NotUnimodular(f"det {self.entries()} != 1")

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "SL2Matrix":
        return SL2Matrix(-self.a, -self.b, -self.c, -self.d)

    def mod(self, n: int) -> tuple[int, int, int, int]:
        return (self.a % n, self.b % n, self.c % n, self.d % n)

    def moebius(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def __repr__(self) -> str:
        return f"SL2Matrix({self.a}, {self.b}, {self.c}, {self.d})"


SL2_I = SL2Matrix(1, 0, 0, 1)
SL2_S = SL2Matrix(0, -1, 1, 0)
SL2_T = SL2Matrix(1, 1, 0, 1)


@dataclass(frozen=True, slots=True)
class Group:
    """Descriptor for one of the supported congruence subgroup families."""

    kind: str  # "gamma" | "gamma0" | "gamma_m_2m" | "theta12"
    level: int = 1

    def __str__(self) -> str:
        if self.kind == "gamma":
            return f"Gamma({self.level})"
        if self.kind == "gamma0":
            return f"Gamma0({self.level})"
        if self.kind == "gamma_m_2m":
            return f"Gamma({self.level},{2 * self.level})"
        return "Gamma(1,2)"

    @property
    def modulus(self) -> int:
        """Smallest even L with Gamma(L) contained in the group."""
        if self.kind == "gamma_m_2m":
            return 2 * self.level
        if self.kind == "theta12":
            return 2
        return self.level if self.level % 2 == 0 else 2 * self.level


def Gamma(n: int) -> Group:
    return Group("gamma", n)


def Gamma0(n: int) -> Group:
    return Group("gamma0", n)


def GammaM2M(m: int) -> Group:
    if m % 2 != 0:
        raise ValueError(f"Gamma(m,2m) is only used for even m, got {m}")
    return Group("gamma_m_2m", m)


THETA12 = Group("theta12")


def member(g: SL2Matrix, group: Group) -> bool:
    """Exact congruence membership test."""
    a, b, c, d = g.entries()
    n = group.level
    if group.kind == "gamma":
        return (a - 1) % n == 0 and (d - 1) % n == 0 and b % n == 0 and c % n == 0
    if group.kind == "gamma0":
        return c % n == 0
    if group.kind == "gamma_m_2m":
        return (
            (a - 1) % n == 0
            and (d - 1) % n == 0
            and b % (2 * n) == 0
            and c % (2 * n) == 0
        )
    if group.kind == "theta12":
        return (a * b) % 2 == 0 and (c * d) % 2 == 0
    raise ValueError(f"unknown group kind {group.kind!r}")


def des_hom(g: SL2Matrix, m: int) -> SL2Matrix:
    """Descent homomorphism Gamma0(2m) -> Gamma(1,2), (a b; c d) -> (a bm; c/m d)."""
    if m % 2 != 0 or m <= 0:
        raise ValueError(f"m must be even positive, got {m}")
    if not member(g, Gamma0(2 * m)):
        raise NotMember(f"{g} is not in Gamma0({2 * m})")
    return SL2Matrix(g.a, g.b * m, g.c // m, g.d)


def v_hom(g: SL2Matrix) -> SL2Matrix:
    """Halving map Gamma0(2) -> SL2(Z), (a b; c d) -> (a 2b; c/2 d)."""
    if not member(g, Gamma0(2)):
        raise NotMember(f"{g} is not in Gamma0(2)")
    return SL2Matrix(g.a, 2 * g.b, g.c // 2, g.d)


def theta_action_factor(g: SL2Matrix, m: int, u1: int, u2: int) -> RootOfUnity:
    """Relative factor by which g in Gamma(m) moves the distinguished theta structure.

    The value at the 2m-torsion point indexed by (u1, u2) is
    e^{-2 pi i (a b u1^2 + (a d + b c - 1) u1 u2 + c d u2^2) / (2m)}; it is
    trivial for every (u1, u2) exactly when g stabilizes the structure, i.e.
    when g lies in Gamma(m, 2m).
    """
    if m % 2 != 0 or m <= 0:
        raise ValueError(f"m must be even positive, got {m}")
    if not member(g, Gamma(m)):
        raise NotMember(f"{g} is not in Gamma({m})")
    a, b, c, d = g.entries()
    e = a * b * u1 * u1 + (a * d + b * c - 1) * u1 * u2 + c * d * u2 * u2
    return RootOfUnity(Fraction(-e, 2 * m))


def splitting_action_factor(g: SL2Matrix, m: int, u: int) -> RootOfUnity:
    """Factor by which g in Gamma0(m) moves the distinguished splitting.

    Equal to e^{-2 pi i c d u^2 / (2m)}; trivial for every u exactly when
    g lies in Gamma0(2m).
    """
    if m % 2 != 0 or m <= 0:
        raise ValueError(f"m must be even positive, got {m}")
    if not member(g, Gamma0(m)):
        raise NotMember(f"{g} is not in Gamma0({m})")
    e = g.c * g.d * u * u
    return RootOfUnity(Fraction(-e, 2 * m))


def descended_theta_char(m: int, u1: int, u2: int) -> RootOfUnity:
    """Theta characteristic of the degree-one descended bundle at a 2-torsion point.

    Evaluated via the finite formula e^{-2 pi i * 2m * w1 w2} at
    w1 = u1/2, w2 = u2/(2m); the result (-1)^{u1 u2} is the standard even
    quadratic form, independently of (even) m.
    """
    if m % 2 != 0 or m <= 0:
        raise ValueError(f"m must be even positive, got {m}")
    w1 = Fraction(u1, 2)
    w2 = Fraction(u2, 2 * m)
    return RootOfUnity(-2 * m * w1 * w2)


# --- finite SL2(Z/L) machinery -------------------------------------------------

def _sl2_mod(L: int) -> list[tuple[int, int, int, int]]:
    """All of SL2(Z/L), generated from S and T by closure."""
    s = (0, (-1) % L, 1, 0)
    t = (1, 1, 0, 1)

    def mul(x, y):
        return (
            (x[0] * y[0] + x[1] * y[2]) % L,
            (x[0] * y[1] + x[1] * y[3]) % L,
            (x[2] * y[0] + x[3] * y[2]) % L,
            (x[2] * y[1] + x[3] * y[3]) % L,
        )

    seen = {(1 % L, 0, 0, 1 % L)}
    frontier = [(1 % L, 0, 0, 1 % L)]
    while frontier:
        nxt = []
        for x in frontier:
            for gen in (s, t):
                y = mul(x, gen)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return list(seen)


def _member_mod(x: tuple[int, int, int, int], group: Group, L: int) -> bool:
    """Membership of a residue matrix; valid because the group has level dividing L."""
    a, b, c, d = x
    n = group.level
    if group.kind == "gamma":
        return a % n == 1 % n and d % n == 1 % n and b % n == 0 and c % n == 0
    if group.kind == "gamma0":
        return c % n == 0
    if group.kind == "gamma_m_2m":
        return (
            a % n == 1 % n and d % n == 1 % n and b % (2 * n) == 0 and c % (2 * n) == 0
        )
    if group.kind == "theta12":
        return (a * b) % 2 == 0 and (c * d) % 2 == 0
    raise ValueError(group.kind)


def subgroup_index(group: Group, modulus: int | None = None) -> int:
    """Index in SL2(Z), by counting cosets of the image inside SL2(Z/L).

    The reduction is faithful for index purposes because each supported
    family contains the principal congruence subgroup of its level; any
    multiple of `group.modulus` may be passed as `modulus` to cross-check.
    """
    L = group.modulus if modulus is None else modulus
    if L % group.modulus != 0:
        raise ValueError(f"modulus {L} is not a multiple of the level {group.modulus}")
    elements = _sl2_mod(L)
    image = sum(1 for x in elements if _member_mod(x, group, L))
    if len(elements) % image != 0:
        raise ArithmeticError("image size does not divide group order")
    return len(elements) // image


def relative_index(sub: Group, sup: Group, modulus: int) -> int:
    """Index [sup : sub] for nested congruence groups, at a common modulus."""
    if modulus % sub.modulus or modulus % sup.modulus:
        raise ValueError("modulus must be a multiple of both levels")
    elements = _sl2_mod(modulus)
    n_sub = 0
    n_sup = 0
    for x in elements:
        in_sub = _member_mod(x, sub, modulus)
        in_sup = _member_mod(x, sup, modulus)
        if in_sub and not in_sup:
            raise ArithmeticError(f"{sub} is not contained in {sup}")
        n_sub += in_sub
        n_sup += in_sup
    if n_sup % n_sub != 0:
        raise ArithmeticError("subgroup size does not divide supergroup size")
    return n_sup // n_sub


def sl2_with_entry_bound(bound: int) -> Iterator[SL2Matrix]:
    """All SL2(Z) matrices with |a|,|b|,|c|,|d| <= bound.

    For each coprime bottom row (c, d) the solutions of a*d - b*c = 1 form
    the line (a0 + t*c, b0 + t*d); the admissible range of t is cut out by
    the entry bound.
    """
    for c in range(-bound, bound + 1):
        for d in range(-bound, bound + 1):
            if math.gcd(c, d) != 1:
                continue
            g, x, y = _xgcd(d, -c)
            a0, b0 = x * g, y * g  # g = +-1, so (a0, b0) solves a*d - b*c = 1
            # recenter the line (a0 + t c, b0 + t d) so the base point is small
            if c != 0:
                shift = -round(a0 / c)
            else:
                shift = -round(b0 / d)
            a0, b0 = a0 + shift * c, b0 + shift * d
            # after recentering |t| <= bound + 1 covers every admissible entry
            span = bound + 1
            for t in range(-span, span + 1):
                a, b = a0 + t * c, b0 + t * d
                if abs(a) <= bound and abs(b) <= bound:
                    yield SL2Matrix(a, b, c, d)


def _xgcd(x: int, y: int) -> tuple[int, int, int]:
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t
