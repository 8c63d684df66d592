"""Finite Heisenberg groups of a given type and their splitting combinatorics.

For a divisor chain delta = (d_1 | ... | d_g) the group G(delta) is the
central extension of K(delta) = H(delta) x H(delta) by roots of unity with
multiplication

    (l1, x1, y1) (l2, x2, y2) = (l1 l2 <x1, y2>, x1 + x2, y1 + y2),

whose commutator is the standard symplectic pairing on K(delta).  This
module implements the group law exactly (scalars are rational exponents),
the inversion and inner automorphisms, the doubling map
G(2 delta) -> G(delta), symmetric splittings of H(delta) x {0} and their
pushforward under doubling, and exhaustive enumeration of the symmetric
automorphism group together with the stabilizer of the canonical splitting.

Semicharacters are never constructed from a closed form: candidate values
on generators are solved from the order relations and then every candidate
is verified against the defining relation on all pairs, so the enumerations
are self-checking.  The intended regimes are small types like (2), (4),
(2,2), (4,4); a hard bound |K(delta)| <= 2^12 is enforced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm, prod
from typing import Iterator, Sequence

import numpy as np

from .cyclo import ONE, RootOfUnity

__all__ = [
    "TypeMismatch",
    "OddType",
    "TooLarge",
    "ThetaType",
    "KVector",
    "HeisenbergElement",
    "SymmetricSplitting",
    "HeisenbergAutomorphism",
    "k_zero",
    "k_basis",
    "k_elements",
    "pairing",
    "hmul",
    "hinv",
    "h_identity",
    "d_minus_one",
    "inner_auto",
    "inner_automorphism",
    "h2_map",
    "canonical_splitting",
    "enumerate_symmetric_splittings",
    "h2_pushforward_splitting",
    "enumerate_automorphisms",
    "enumerate_sym_automorphisms",
    "stabilizer_u0sym",
    "maximal_isotropic_subgroups",
    "symmetric_splittings_over",
]

ENUMERATION_BOUND = 2**12


class TypeMismatch(ValueError):
    """Operands have incompatible types."""


class OddType(ValueError):
    """Operation requires an even type (all divisors even)."""


class TooLarge(ValueError):
    """Enumeration exceeds the supported size bound."""


@dataclass(frozen=True, slots=True)
class ThetaType:
    """A divisor chain (d_1 | d_2 | ... | d_g) of positive integers."""

    divisors: tuple[int, ...]

    def __post_init__(self):
        ds = tuple(int(d) for d in self.divisors)
        object.__setattr__(self, "divisors", ds)
        if not ds:
            raise ValueError("type must have at least one divisor")
        if any(d <= 0 for d in ds):
            raise ValueError(f"divisors must be positive: {ds}")
        for small, big in zip(ds, ds[1:]):
            if big % small != 0:
                raise ValueError(f"divisor chain violated: {small} does not divide {big}")

    @property
    def g(self) -> int:
        return len(self.divisors)

    @property
    def degree(self) -> int:
        return prod(self.divisors)

    @property
    def is_even(self) -> bool:
        return all(d % 2 == 0 for d in self.divisors)

    @property
    def k_order(self) -> int:
        return self.degree**2

    @property
    def scalar_modulus(self) -> int:
        """Common denominator for all scalar exponents: 4 * lcm(d_i)."""
        return 4 * lcm(*self.divisors)

    def double(self) -> "ThetaType":
        return ThetaType(tuple(2 * d for d in self.divisors))

    def half(self) -> "ThetaType":
        if any(d % 2 for d in self.divisors):
            raise TypeMismatch(f"type {self.divisors} is not divisible by 2")
        return ThetaType(tuple(d // 2 for d in self.divisors))

    def __repr__(self) -> str:
        return f"ThetaType({self.divisors})"


@dataclass(frozen=True, slots=True)
class KVector:
    """Element z = (x, y) of K(delta) = H(delta) x H(delta), reduced componentwise."""

    type: ThetaType
    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        ds = self.type.divisors
        if len(self.x) != len(ds) or len(self.y) != len(ds):
            raise TypeMismatch(f"coordinate length does not match type {ds}")
        object.__setattr__(self, "x", tuple(c % d for c, d in zip(self.x, ds)))
        object.__setattr__(self, "y", tuple(c % d for c, d in zip(self.y, ds)))

    def __add__(self, other: "KVector") -> "KVector":
        _same_type(self, other)
        return KVector(
            self.type,
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.y, other.y)),
        )

    def __neg__(self) -> "KVector":
        return KVector(self.type, tuple(-c for c in self.x), tuple(-c for c in self.y))

    def scale(self, k: int) -> "KVector":
        return KVector(self.type, tuple(k * c for c in self.x), tuple(k * c for c in self.y))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.x) and all(c == 0 for c in self.y)

    @property
    def coords(self) -> tuple[int, ...]:
        return self.x + self.y

    def order(self) -> int:
        return lcm(*(d // gcd(c, d) for c, d in zip(self.coords, self.type.divisors * 2)))

    def __repr__(self) -> str:
        return f"KVector({self.x}, {self.y})"


def _same_type(a, b) -> None:
    if a.type != b.type:
        raise TypeMismatch(f"types differ: {a.type} vs {b.type}")


def k_zero(typ: ThetaType) -> KVector:
    return KVector(typ, (0,) * typ.g, (0,) * typ.g)


def k_basis(typ: ThetaType) -> list[KVector]:
    """Standard basis e_1..e_g (x-part), e_{g+1}..e_{2g} (y-part)."""
    g = typ.g
    out = []
    for i in range(2 * g):
        coords = [0] * (2 * g)
        coords[i] = 1
        out.append(KVector(typ, tuple(coords[:g]), tuple(coords[g:])))
    return out


def k_elements(typ: ThetaType) -> list[KVector]:
    """All of K(delta), in lexicographic coordinate order."""
    g = typ.g
    ranges = [range(d) for d in typ.divisors] * 2
    return [
        KVector(typ, coords[:g], coords[g:]) for coords in itertools.product(*ranges)
    ]


def pairing(z1: KVector, z2: KVector) -> RootOfUnity:
    """Standard symplectic pairing: <e_nu, e_{g+nu}> = zeta_{d_nu}^{-1}."""
    _same_type(z1, z2)
    q = Fraction(0)
    for y1, x2, x1, y2, d in zip(z1.y, z2.x, z1.x, z2.y, z1.type.divisors):
        q += Fraction(y1 * x2 - x1 * y2, d)
    return RootOfUnity(q)


def _xy_exponent(x: Sequence[int], y: Sequence[int], typ: ThetaType) -> Fraction:
    """Exponent of the group-law scalar <x, y> = prod zeta_{d_nu}^{-x_nu y_nu}."""
    return Fraction(sum(Fraction(-a * b, d) for a, b, d in zip(x, y, typ.divisors)))


@dataclass(frozen=True, slots=True)
class HeisenbergElement:
    """Triple (lambda, x, y) in the Heisenberg group of z.type."""

    scalar: RootOfUnity
    z: KVector

    @property
    def type(self) -> ThetaType:
        return self.z.type

    def __repr__(self) -> str:
        return f"HeisenbergElement({self.scalar!r}, {self.z!r})"


def h_identity(typ: ThetaType) -> HeisenbergElement:
    return HeisenbergElement(ONE, k_zero(typ))


def hmul(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    _same_type(a.z, b.z)
    scalar = a.scalar * b.scalar * RootOfUnity(_xy_exponent(a.z.x, b.z.y, a.type))
    return HeisenbergElement(scalar, a.z + b.z)


def hinv(a: HeisenbergElement) -> HeisenbergElement:
    """Inverse, solved from the group law: hmul(a, hinv(a)) is the identity."""
    scalar = a.scalar.inverse() * RootOfUnity(_xy_exponent(a.z.x, a.z.y, a.type))
    return HeisenbergElement(scalar, -a.z)


def d_minus_one(a: HeisenbergElement) -> HeisenbergElement:
    """Inversion automorphism (lambda, z) -> (lambda, -z)."""
    return HeisenbergElement(a.scalar, -a.z)


def inner_auto(z: KVector, a: HeisenbergElement) -> HeisenbergElement:
    """The inner automorphism i(z): (lambda, z') -> (lambda <z, z'>, z')."""
    _same_type(z, a.z)
    return HeisenbergElement(a.scalar * pairing(z, a.z), a.z)


def h2_map(a: HeisenbergElement) -> HeisenbergElement:
    """Doubling homomorphism G(2 delta) -> G(delta): (lambda, z) -> (lambda^2, 2z).

    2z lands in 2.(Z/2d), which is canonically Z/d, so coordinates carry over
    unchanged into the half type.  The input type must be 2 delta for an even
    delta.
    """
    if any(d % 4 for d in a.type.divisors):
        raise TypeMismatch(f"type {a.type.divisors} is not the double of an even type")
    half = a.type.half()
    return HeisenbergElement(a.scalar**2, KVector(half, a.z.x, a.z.y))


# --- index tables -----------------------------------------------------------------
#
# The enumerations below work on integer tables indexed by the lexicographic
# rank of K(delta) elements: coordinate matrix, pairwise sum ranks, and the
# group-law pairing exponent over the scalar modulus.

class _KTable:
    def __init__(self, typ: ThetaType):
        self.type = typ
        self.elements = k_elements(typ)
        self.index = {z: i for i, z in enumerate(self.elements)}
        self.n = len(self.elements)
        self.divisors = np.array(typ.divisors * 2, dtype=np.int64)
        self.coords = np.array([z.coords for z in self.elements], dtype=np.int64)
        # mixed-radix place values for ranking a coordinate vector
        place = np.ones(2 * typ.g, dtype=np.int64)
        for i in range(2 * typ.g - 2, -1, -1):
            place[i] = place[i + 1] * self.divisors[i + 1]
        self.place = place
        sums = (self.coords[:, None, :] + self.coords[None, :, :]) % self.divisors
        self.sum_index = sums @ place
        self.neg_index = self.rank((-self.coords) % self.divisors)
        m = typ.scalar_modulus
        g = typ.g
        pair = np.zeros((self.n, self.n), dtype=np.int64)
        for nu in range(g):
            weight = -(m // typ.divisors[nu])
            pair += weight * np.outer(self.coords[:, nu], self.coords[:, g + nu])
        self.xy_exponent = pair % m  # M * exponent of the group-law scalar <x, y>

    def rank(self, coords: np.ndarray) -> np.ndarray:
        return (coords % self.divisors) @ self.place


@lru_cache(maxsize=None)
def _ktable(typ: ThetaType) -> _KTable:
    if typ.k_order > ENUMERATION_BOUND:
        raise TooLarge(f"|K| = {typ.k_order} exceeds {ENUMERATION_BOUND}")
    return _KTable(typ)


def _solve_twisted_characters(
    coords: np.ndarray,
    gen_positions: list[int],
    gen_orders: list[int],
    sum_index: np.ndarray,
    beta: np.ndarray,
    modulus: int,
) -> list[np.ndarray]:
    """All integer maps s (mod `modulus`) with s(a+b) = s(a) + s(b) + beta(a, b).

    The group is given by tables over its elements 0..n-1: `coords` holds the
    exponents of each element with respect to a generating tuple realizing
    the group as a direct product of cyclic groups of the given orders, the
    generators themselves sitting at `gen_positions`.  Candidate generator
    values come from the order relations; all candidates are then verified on
    every pair, so no structure beyond the tables is assumed.
    """
    n = coords.shape[0]
    zero = int(np.flatnonzero((coords == 0).all(axis=1))[0])

    value_options: list[list[int]] = []
    for pos, o in zip(gen_positions, gen_orders):
        c = 0
        acc = pos
        for _ in range(o - 1):
            c = (c + int(beta[acc, pos])) % modulus
            acc = int(sum_index[acc, pos])
        if acc != zero:
            raise ValueError("generator order table is inconsistent")
        if c % o != 0:
            return []
        step = modulus // o
        base = (-(c // o)) % step
        value_options.append([(base + t * step) % modulus for t in range(o)])

    # chain correction: cost of assembling each element generator by generator
    chain = np.zeros(n, dtype=np.int64)
    acc_idx = np.full(n, zero, dtype=np.int64)
    for j, pos in enumerate(gen_positions):
        max_mult = int(coords[:, j].max()) if n else 0
        for k in range(max_mult):
            active = coords[:, j] > k
            chain[active] = (chain[active] + beta[acc_idx[active], pos]) % modulus
            acc_idx[active] = sum_index[acc_idx[active], pos]

    results = []
    for choice in itertools.product(*value_options):
        values = (coords @ np.array(choice, dtype=np.int64) + chain) % modulus
        rhs = (values[:, None] + values[None, :] + beta) % modulus
        if np.array_equal(values[sum_index], rhs):
            results.append(values)
    return results


# --- symmetric splittings ----------------------------------------------------------

@dataclass(frozen=True, slots=True)
class SymmetricSplitting:
    """A symmetric lift of H(delta) x {0}: sigma(h) = (sigma_*(h), h, 0).

    sigma_* is a homomorphism H(delta) -> mu_2, stored by its signs on the g
    standard generators.
    """

    type: ThetaType
    star_signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.star_signs) != self.type.g:
            raise TypeMismatch("need one sign per generator")
        if any(s not in (1, -1) for s in self.star_signs):
            raise ValueError(f"signs must be +-1: {self.star_signs}")
        for s, d in zip(self.star_signs, self.type.divisors):
            if s == -1 and d % 2 != 0:
                raise OddType(f"no sign character on Z/{d}")

    def sigma_star(self, h: Sequence[int]) -> RootOfUnity:
        e = sum(hi for hi, s in zip(h, self.star_signs) if s == -1)
        return RootOfUnity(Fraction(e, 2))

    def sigma(self, h: Sequence[int]) -> HeisenbergElement:
        z = KVector(self.type, tuple(h), (0,) * self.type.g)
        return HeisenbergElement(self.sigma_star(h), z)

    def is_canonical(self) -> bool:
        return all(s == 1 for s in self.star_signs)

    def to_json(self) -> dict:
        return {"type": list(self.type.divisors), "signs": list(self.star_signs)}


def canonical_splitting(typ: ThetaType) -> SymmetricSplitting:
    """The canonical splitting sigma(h) = (1, h, 0)."""
    return SymmetricSplitting(typ, (1,) * typ.g)


def enumerate_symmetric_splittings(typ: ThetaType) -> list[SymmetricSplitting]:
    """All homomorphisms H(delta) -> mu_2, i.e. all 2^g symmetric lifts of H(delta)."""
    if not typ.is_even:
        raise OddType(f"type {typ.divisors} is not even")
    return [
        SymmetricSplitting(typ, signs)
        for signs in itertools.product((1, -1), repeat=typ.g)
    ]


def h2_pushforward_splitting(sigma: SymmetricSplitting) -> SymmetricSplitting:
    """Push a symmetric splitting of type 2 delta down to type delta.

    Computed by applying the doubling map to the lifted generators; the
    squared signs force the canonical splitting, whatever sigma was.
    """
    half = sigma.type.half()  # raises TypeMismatch when not a doubled type
    if not half.is_even:
        raise TypeMismatch(f"half type {half.divisors} is not even")
    signs = []
    for i in range(sigma.type.g):
        gen = tuple(1 if j == i else 0 for j in range(sigma.type.g))
        image = h2_map(sigma.sigma(gen))
        if image.scalar != ONE:
            raise ArithmeticError(f"pushforward scalar {image.scalar} is not trivial")
        signs.append(1)
    return SymmetricSplitting(half, tuple(signs))


# --- automorphisms ------------------------------------------------------------------

@dataclass(frozen=True)
class HeisenbergAutomorphism:
    """An automorphism (lambda, z) -> (lambda chi(z), eta z) fixing the center.

    eta is stored by the images of the 2g standard basis vectors; chi by its
    exponent table over the type's scalar modulus M, in the lexicographic
    element order: chi(z_i) = e^{2 pi i chi_exponents[i] / M}.
    """

    type: ThetaType
    eta_images: tuple[KVector, ...]
    chi_exponents: tuple[int, ...]

    def eta(self, z: KVector) -> KVector:
        out = k_zero(self.type)
        for c, img in zip(z.coords, self.eta_images):
            out = out + img.scale(c)
        return out

    def chi(self, z: KVector) -> RootOfUnity:
        table = _ktable(self.type)
        return RootOfUnity(
            Fraction(self.chi_exponents[table.index[z]], self.type.scalar_modulus)
        )

    def apply(self, a: HeisenbergElement) -> HeisenbergElement:
        return HeisenbergElement(a.scalar * self.chi(a.z), self.eta(a.z))

    def compose(self, other: "HeisenbergAutomorphism") -> "HeisenbergAutomorphism":
        """self after other."""
        table = _ktable(self.type)
        other_perm = _eta_permutation(other, table)
        self_exp = np.array(self.chi_exponents, dtype=np.int64)
        other_exp = np.array(other.chi_exponents, dtype=np.int64)
        exps = (other_exp + self_exp[other_perm]) % self.type.scalar_modulus
        images = tuple(self.eta(img) for img in other.eta_images)
        return HeisenbergAutomorphism(self.type, images, tuple(int(e) for e in exps))

    def is_identity(self) -> bool:
        return self == identity_automorphism(self.type)

    def is_symmetric(self) -> bool:
        table = _ktable(self.type)
        exps = np.array(self.chi_exponents, dtype=np.int64)
        return bool(np.array_equal(exps[table.neg_index], exps))

    def sort_key(self) -> tuple:
        return (tuple(img.coords for img in self.eta_images), self.chi_exponents)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeisenbergAutomorphism):
            return NotImplemented
        return self.type == other.type and self.sort_key() == other.sort_key()

    def __hash__(self) -> int:
        return hash((self.type, self.sort_key()))

    def __repr__(self) -> str:
        return f"HeisenbergAutomorphism(eta={[i.coords for i in self.eta_images]})"

    def to_json(self) -> dict:
        return {
            "type": list(self.type.divisors),
            "eta": [list(img.coords) for img in self.eta_images],
            "chi_exponents": list(self.chi_exponents),
            "chi_modulus": self.type.scalar_modulus,
        }


def _eta_permutation(u: HeisenbergAutomorphism, table: _KTable) -> np.ndarray:
    img = np.array([v.coords for v in u.eta_images], dtype=np.int64)
    return table.rank(table.coords @ img)


def identity_automorphism(typ: ThetaType) -> HeisenbergAutomorphism:
    table = _ktable(typ)
    return HeisenbergAutomorphism(typ, tuple(k_basis(typ)), (0,) * table.n)


def inner_automorphism(z: KVector) -> HeisenbergAutomorphism:
    """i(z) as a HeisenbergAutomorphism: eta = id, chi = <z, .>."""
    typ = z.type
    table = _ktable(typ)
    m = typ.scalar_modulus
    exps = tuple(int(pairing(z, w).exponent * m) % m for w in table.elements)
    return HeisenbergAutomorphism(typ, tuple(k_basis(typ)), exps)


def _symplectic_images(typ: ThetaType) -> Iterator[tuple[KVector, ...]]:
    """All pairing-preserving automorphisms of K(delta), by basis images.

    Backtracks over images f_j of the standard basis subject to the order
    conditions d_j f_j = 0 and the pairing conditions <f_j, f_k> = <e_j, e_k>;
    any such map is bijective because the pairing is non-degenerate.
    """
    table = _ktable(typ)
    basis = k_basis(typ)
    orders = list(typ.divisors) * 2
    m = typ.scalar_modulus
    g = typ.g

    # full symplectic pairing exponent over M, from the group-law table
    full_pair = (table.xy_exponent.T - table.xy_exponent) % m
    basis_idx = [table.index[b] for b in basis]
    candidates = [
        [i for i, z in enumerate(table.elements) if z.scale(o).is_zero()]
        for o in orders
    ]
    target = {
        (j, k): full_pair[basis_idx[j], basis_idx[k]]
        for j in range(2 * g)
        for k in range(j)
    }

    images: list[int] = []

    def backtrack(j: int):
        if j == 2 * g:
            yield tuple(table.elements[i] for i in images)
            return
        for f in candidates[j]:
            if all(full_pair[f, images[k]] == target[(j, k)] for k in range(j)):
                images.append(f)
                yield from backtrack(j + 1)
                images.pop()

    yield from backtrack(0)


def enumerate_automorphisms(
    typ: ThetaType, symmetric: bool = True
) -> list[HeisenbergAutomorphism]:
    """All center-fixing automorphisms of G(delta); the symmetric ones by default.

    An automorphism is a pair (eta, chi) with eta symplectic on K(delta) and
    chi an eta-semicharacter, i.e. a solution of

        chi(z1 + z2) = chi(z1) chi(z2) <x(eta z1), y(eta z2)> <x(z1), y(z2)>^{-1}.

    The symmetric ones are those commuting with the inversion automorphism,
    which amounts to chi(-z) = chi(z).
    """
    table = _ktable(typ)
    m = typ.scalar_modulus
    gen_positions = [table.index[b] for b in k_basis(typ)]
    orders = list(typ.divisors) * 2

    out = []
    for images in _symplectic_images(typ):
        img = np.array([v.coords for v in images], dtype=np.int64)
        perm = table.rank(table.coords @ img)
        beta = (table.xy_exponent[np.ix_(perm, perm)] - table.xy_exponent) % m
        for values in _solve_twisted_characters(
            table.coords, gen_positions, orders, table.sum_index, beta, m
        ):
            if symmetric and not np.array_equal(values[table.neg_index], values):
                continue
            out.append(
                HeisenbergAutomorphism(typ, images, tuple(int(v) for v in values))
            )
    out.sort(key=lambda u: u.sort_key())
    return out


def enumerate_sym_automorphisms(typ: ThetaType) -> list[HeisenbergAutomorphism]:
    """The symmetric automorphism group of G(delta), exhaustively."""
    return enumerate_automorphisms(typ, symmetric=True)


def stabilizer_u0sym(
    typ: ThetaType,
    automorphisms: list[HeisenbergAutomorphism] | None = None,
    pointwise: bool = False,
) -> list[HeisenbergAutomorphism]:
    """Stabilizer of the canonical splitting inside the symmetric automorphisms.

    The defining condition u . sigma_can(H) <= sigma_can(H) is read setwise:
    u must send each lift (1, h, 0) to some lift (1, h', 0).  The strictly
    stronger pointwise reading (h' = h) is available for comparison; the two
    differ in general and tests report both cardinalities.
    """
    if automorphisms is None:
        automorphisms = enumerate_sym_automorphisms(typ)
    can = canonical_splitting(typ)
    h_range = list(itertools.product(*(range(d) for d in typ.divisors)))
    out = []
    for u in automorphisms:
        ok = True
        for h in h_range:
            image = u.apply(can.sigma(h))
            if not image.scalar.is_one() or any(c != 0 for c in image.z.y):
                ok = False
                break
            if pointwise and image.z.x != can.sigma(h).z.x:
                ok = False
                break
        if ok:
            out.append(u)
    return out


# --- splitting pairs over arbitrary maximal isotropic subgroups --------------------

def maximal_isotropic_subgroups(typ: ThetaType) -> list[tuple[KVector, ...]]:
    """Subgroups of K(delta) isomorphic to H(delta) with H-perp = H.

    Each subgroup is returned once, as a generating tuple realizing it as
    prod Z/d_i.
    """
    table = _ktable(typ)
    m = typ.scalar_modulus
    full_pair = (table.xy_exponent.T - table.xy_exponent) % m
    elements = table.elements
    d = typ.degree
    seen: dict[frozenset, tuple[KVector, ...]] = {}
    order_ok = [
        [z for z in elements if z.scale(o).is_zero()] for o in typ.divisors
    ]
    for gens in itertools.product(*order_ok):
        span = _span(gens, typ)
        if len(span) != d:
            continue
        key = frozenset(span)
        if key in seen:
            continue
        idx = [table.index[z] for z in span]
        if np.any(full_pair[np.ix_(idx, idx)]):
            continue
        perp_count = int(np.sum(~np.any(full_pair[:, idx], axis=1)))
        if perp_count != d:
            continue
        seen[key] = gens
    return sorted(seen.values(), key=lambda gs: tuple(g_.coords for g_ in gs))


def _span(gens: Sequence[KVector], typ: ThetaType) -> list[KVector]:
    out = {k_zero(typ)}
    frontier = [k_zero(typ)]
    while frontier:
        nxt = []
        for z in frontier:
            for g_ in gens:
                w = z + g_
                if w not in out:
                    out.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(out, key=lambda z: z.coords)


def symmetric_splittings_over(
    gens: tuple[KVector, ...], typ: ThetaType
) -> list[dict[KVector, RootOfUnity]]:
    """All symmetric lifts of the subgroup generated by `gens` to G(delta).

    A lift sigma(h) = (s(h), h) is a homomorphism exactly when s satisfies the
    group-law cocycle relation s(h1 + h2) = s(h1) s(h2) <x(h1), y(h2)>, and is
    symmetric when s(-h) = s(h).  Returns the scalar maps s.
    """
    table = _ktable(typ)
    m = typ.scalar_modulus
    span = _span(gens, typ)
    orders = [_element_order(g_) for g_ in gens]
    if prod(orders) != len(span):
        raise ValueError("generators do not realize the subgroup as a direct product")

    idx = np.array([table.index[z] for z in span], dtype=np.int64)
    local = {int(i): j for j, i in enumerate(idx)}
    coords = np.array(
        [c for c in itertools.product(*(range(o) for o in orders))], dtype=np.int64
    )
    # element at local coordinates c is sum c_j gens_j: build the local tables
    elems = []
    for c in coords:
        acc = k_zero(typ)
        for k, g_ in zip(c, gens):
            acc = acc + g_.scale(int(k))
        elems.append(acc)
    n = len(elems)
    lidx = {z: i for i, z in enumerate(elems)}
    sum_index = np.array(
        [[lidx[a + b] for b in elems] for a in elems], dtype=np.int64
    )
    gidx = np.array([table.index[z] for z in elems], dtype=np.int64)
    beta = table.xy_exponent[np.ix_(gidx, gidx)] % m
    gen_positions = [
        lidx[g_] for g_ in gens
    ]
    neg_index = np.array([lidx[-z] for z in elems], dtype=np.int64)

    out = []
    for values in _solve_twisted_characters(
        coords, gen_positions, orders, sum_index, beta, m
    ):
        if not np.array_equal(values[neg_index], values):
            continue
        out.append(
            {z: RootOfUnity(Fraction(int(v), m)) for z, v in zip(elems, values)}
        )
    return out


def _element_order(z: KVector) -> int:
    o = 1
    acc = z
    while not acc.is_zero():
        acc = acc + z
        o += 1
    return o
