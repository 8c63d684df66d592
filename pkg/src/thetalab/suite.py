"""The batch verification suite behind `thetalab verify suite` and the acceptance tests.

Nine check groups, each returning report entries
{check_id, params, expected, observed, residual, pass}; `run_suite` executes
them in a fixed order at one of two levels ("quick" shrinks sample counts
and sweep bounds, "full" runs the complete battery).  Randomized sweeps draw
from a seeded generator (THETA_LAB_SEED in the CLI), and rejection sampling
enforces the Im(gamma tau) floor required by the verifier's precision
contract.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import congruence as cg
from . import heisenberg as hb
from . import metaplectic as mp
from . import schrodinger as sc
from . import symplectic4 as s4
from . import thetanum as tn
from . import weilrep as wr
from .cyclo import ONE, mu_group

__all__ = ["CHECK_ORDER", "run_suite", "entry"]

TRANSFORM_TAUS = (0.3 + 1.1j, -0.4 + 0.8j, 2j)


def entry(check_id: str, params, expected, observed, residual: float, ok: bool) -> dict:
    return {
        "check_id": check_id,
        "params": params,
        "expected": expected,
        "observed": observed,
        "residual": float(residual),
        "pass": bool(ok),
    }


def _random_word(rng: np.random.Generator, max_len: int) -> list[tuple[str, int]]:
    length = int(rng.integers(0, max_len + 1))
    letters = []
    for _ in range(length):
        letters.append([("S", 1), ("T", 1), ("T", -1)][int(rng.integers(0, 3))])
    return letters


def _sample_mp_words(
    rng: np.random.Generator, count: int, max_len: int, taus=TRANSFORM_TAUS
) -> list[mp.MpElement]:
    """Random metaplectic words whose gamma keeps Im(gamma tau) above the eval floor.

    Words violating the floor at any probe tau are redrawn, so every sampled
    element satisfies the verifier's precision contract at all probes.
    """
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 500 * count:
            raise RuntimeError("rejection sampling failed to find enough words")
        word = _random_word(rng, max_len)
        p = mp.mp_from_word(word)
        if int(rng.integers(0, 2)):
            p = mp.mp_mul(p, mp.MP_Z)
        if all(p.gamma.moebius(t).imag >= tn.MIN_IM_EVAL for t in taus):
            out.append(p)
    return out


# --- 1. transformation law ---------------------------------------------------------

def check_transformation_law(level: str, rng: np.random.Generator) -> list[dict]:
    words_per_m = 50 if level == "full" else 6
    tol = 1e-9
    results = []
    for m in (2, 4, 6):
        words = _sample_mp_words(rng, words_per_m, 12)
        worst = 0.0
        ok = True
        for p in words:
            for tau in TRANSFORM_TAUS:
                check = tn.verify_transformation(m, p, tau, tol)
                worst = max(worst, check.residual)
                ok = ok and check.passed
        results.append(
            entry(
                "transformation_law",
                {"m": m, "words": words_per_m, "taus": len(TRANSFORM_TAUS)},
                f"max residual < {tol}",
                f"max residual {worst:.3e}, convention {tn.get_convention()}",
                worst,
                ok and worst < tol,
            )
        )
    return results


# --- 2. discriminant vs functional equation ----------------------------------------

def check_discriminant_oracle(level: str, rng: np.random.Generator) -> list[dict]:
    bound = 20 if level == "full" else 6
    results = []
    for parity in ("even", "odd"):
        count = s4.character_solution_count(1, parity)
        results.append(
            entry(
                "discriminant_solution_count",
                {"g": 1, "parity": parity},
                1,
                count,
                abs(count - 1),
                count == 1,
            )
        )
    mismatches = 0
    total = 0
    for gamma in cg.sl2_with_entry_bound(bound):
        if not cg.member(gamma, cg.THETA12):
            continue
        total += 1
        oracle = tn.functional_eq_lambda(gamma)
        disc = s4.discriminant(
            [[gamma.a, gamma.b], [gamma.c, gamma.d]], "even"
        )
        if oracle != disc:
            mismatches += 1
    results.append(
        entry(
            "discriminant_oracle",
            {"entry_bound": bound, "matrices": total},
            "0 mismatches",
            f"{mismatches} mismatches",
            float(mismatches),
            mismatches == 0,
        )
    )
    return results


# --- 3. stabilizer sweeps -----------------------------------------------------------

def check_stabilizer_sweeps(level: str, rng: np.random.Generator) -> list[dict]:
    bound = 40 if level == "full" else 10
    results = []
    for m in (2, 4):
        theta_bad = 0
        theta_total = 0
        split_bad = 0
        split_total = 0
        for gamma in cg.sl2_with_entry_bound(bound):
            if cg.member(gamma, cg.Gamma(m)):
                theta_total += 1
                trivial = all(
                    cg.theta_action_factor(gamma, m, u1, u2).is_one()
                    for u1 in range(m)
                    for u2 in range(m)
                )
                if trivial != cg.member(gamma, cg.GammaM2M(m)):
                    theta_bad += 1
            if cg.member(gamma, cg.Gamma0(m)):
                split_total += 1
                trivial = all(
                    cg.splitting_action_factor(gamma, m, u).is_one() for u in range(m)
                )
                if trivial != cg.member(gamma, cg.Gamma0(2 * m)):
                    split_bad += 1
        results.append(
            entry(
                "theta_structure_stabilizer",
                {"m": m, "entry_bound": bound, "matrices": theta_total},
                "triviality iff membership",
                f"{theta_bad} exceptions",
                float(theta_bad),
                theta_bad == 0,
            )
        )
        results.append(
            entry(
                "splitting_stabilizer",
                {"m": m, "entry_bound": bound, "matrices": split_total},
                "triviality iff membership",
                f"{split_bad} exceptions",
                float(split_bad),
                split_bad == 0,
            )
        )
    return results


# --- 4. descended theta characteristic ----------------------------------------------

def check_descended_char(level: str, rng: np.random.Generator) -> list[dict]:
    bad = 0
    for m in (2, 4, 6, 8):
        for u1, u2 in itertools.product((0, 1), repeat=2):
            got = cg.descended_theta_char(m, u1, u2)
            want_exp = s4.quad_form_value([u1, u2], "even")
            if got.exponent * 2 != want_exp:
                bad += 1
    return [
        entry(
            "descended_theta_characteristic",
            {"ms": [2, 4, 6, 8], "points": 4},
            "equals the standard even form",
            f"{bad} deviations",
            float(bad),
            bad == 0,
        )
    ]


# --- 5. Stone-von Neumann suite ------------------------------------------------------

def check_stone_von_neumann(level: str, rng: np.random.Generator) -> list[dict]:
    types = ((2,), (4,), (2, 2)) if level == "full" else ((2,),)
    results = []
    for divisors in types:
        typ = hb.ThetaType(divisors)
        d = typ.degree
        elems = [
            hb.HeisenbergElement(lam, z)
            for lam in mu_group(d)
            for z in hb.k_elements(typ)
        ]
        mats = {e: sc.rho(e) for e in elems}
        hom_bad = sum(
            1
            for e1 in elems
            for e2 in elems
            if mats[hb.hmul(e1, e2)] != mats[e1] @ mats[e2]
        )
        group = [hb.HeisenbergElement(ONE, z) for z in hb.k_elements(typ)]
        image = [sc.rho(e).to_numpy() for e in group]
        commutant = len(sc.intertwiner_space(image, image))
        inv_can = sc.invariant_subspace(hb.canonical_splitting(typ))
        can_ok = len(inv_can) == 1 and bool(
            np.allclose(np.abs(inv_can[0]), np.eye(d)[0])
        )
        split_dims = [
            len(sc.invariant_subspace(s))
            for s in hb.enumerate_symmetric_splittings(typ)
        ]
        ok = (
            hom_bad == 0
            and commutant == 1
            and can_ok
            and all(dim == 1 for dim in split_dims)
        )
        results.append(
            entry(
                "stone_von_neumann",
                {"type": list(divisors)},
                "exact homomorphism, commutant 1, invariants delta_0, line per splitting",
                f"hom violations {hom_bad}, commutant {commutant}, "
                f"canonical {'delta_0' if can_ok else 'WRONG'}, dims {split_dims}",
                float(hom_bad),
                ok,
            )
        )
    return results


# --- 6. descent combinatorics --------------------------------------------------------

def check_descent_combinatorics(level: str, rng: np.random.Generator) -> list[dict]:
    results = []
    for divisors in ((2,), (4,), (2, 2), (4, 4)):
        typ = hb.ThetaType(divisors)
        n = len(hb.enumerate_symmetric_splittings(typ))
        results.append(
            entry(
                "splitting_count",
                {"type": list(divisors)},
                2**typ.g,
                n,
                abs(n - 2**typ.g),
                n == 2**typ.g,
            )
        )
    for doubled in ((4,), (4, 4)):
        typ = hb.ThetaType(doubled)
        images = {
            hb.h2_pushforward_splitting(s).star_signs
            for s in hb.enumerate_symmetric_splittings(typ)
        }
        ok = images == {(1,) * typ.g}
        results.append(
            entry(
                "pushforward_constant",
                {"type": list(doubled)},
                "always the canonical splitting",
                f"images {sorted(images)}",
                0.0 if ok else 1.0,
                ok,
            )
        )
    orbit_types = ((2,), (2, 2)) if level == "full" else ((2,),)
    for divisors in orbit_types:
        typ = hb.ThetaType(divisors)
        auts = hb.enumerate_sym_automorphisms(typ)
        stab = hb.stabilizer_u0sym(typ, auts)
        index = len(auts) // len(stab)
        pairs = sum(
            len(hb.symmetric_splittings_over(gens, typ))
            for gens in hb.maximal_isotropic_subgroups(typ)
        )
        results.append(
            entry(
                "orbit_stabilizer",
                {"type": list(divisors), "aut": len(auts), "stab": len(stab)},
                "index equals number of splitting pairs",
                f"index {index}, pairs {pairs}",
                float(abs(index - pairs)),
                index == pairs,
            )
        )
    return results


# --- 7. metaplectic and unitary structure --------------------------------------------

def check_metaplectic_weil(level: str, rng: np.random.Generator) -> list[dict]:
    results = []
    s4th = mp.mp_pow(mp.MP_S, 4)
    ok_s4 = s4th == mp.MP_Z and mp.mp_pow(mp.MP_S, 8) == mp.MP_I
    results.append(
        entry(
            "central_element",
            {},
            "S^4 = (I,-) and S^8 = (I,+)",
            f"S^4 = {s4th.as_string()}",
            0.0 if ok_s4 else 1.0,
            ok_s4,
        )
    )
    worst_center = 0.0
    for m in (2, 4, 6, 8):
        z = wr.weil_rep(m, mp.MP_Z)
        worst_center = max(worst_center, float(np.max(np.abs(z + np.eye(m)))))
    results.append(
        entry(
            "genuine_center",
            {"ms": [2, 4, 6, 8]},
            "rho(I,-) = -identity",
            f"max deviation {worst_center:.3e}",
            worst_center,
            worst_center < 1e-12,
        )
    )
    triples = 1000 if level == "full" else 100
    worst_assoc = 0.0
    for _ in range(triples):
        ps = [mp.mp_from_word(_random_word(rng, 10)) for _ in range(3)]
        left = mp.mp_mul(mp.mp_mul(ps[0], ps[1]), ps[2])
        right = mp.mp_mul(ps[0], mp.mp_mul(ps[1], ps[2]))
        diff = abs(mp.phi_eval(left, 2j) - mp.phi_eval(right, 2j))
        worst_assoc = max(worst_assoc, diff)
    results.append(
        entry(
            "mp_associativity",
            {"triples": triples},
            "residual < 1e-9",
            f"max residual {worst_assoc:.3e}",
            worst_assoc,
            worst_assoc < 1e-9,
        )
    )
    pairs_per_m = 50 if level == "full" else 8
    worst_unitary = 0.0
    worst_mult = 0.0
    for m in (2, 4, 6, 8):
        for _ in range(pairs_per_m):
            p = mp.mp_from_word(_random_word(rng, 15))
            q = mp.mp_from_word(_random_word(rng, 15))
            mat_p = wr.weil_rep(m, p)
            mat_q = wr.weil_rep(m, q)
            worst_unitary = max(
                worst_unitary,
                float(np.max(np.abs(mat_p @ mat_p.conj().T - np.eye(m)))),
            )
            prod = wr.weil_rep(m, mp.mp_mul(p, q))
            worst_mult = max(
                worst_mult, float(np.max(np.abs(prod - mat_p @ mat_q)))
            )
    results.append(
        entry(
            "weil_unitarity",
            {"ms": [2, 4, 6, 8], "pairs_per_m": pairs_per_m},
            "unitary within 1e-10",
            f"max deviation {worst_unitary:.3e}",
            worst_unitary,
            worst_unitary < 1e-10,
        )
    )
    results.append(
        entry(
            "weil_multiplicativity",
            {"ms": [2, 4, 6, 8], "pairs_per_m": pairs_per_m},
            "multiplicative within 1e-9",
            f"max deviation {worst_mult:.3e}",
            worst_mult,
            worst_mult < 1e-9,
        )
    )
    return results


# --- 8. cocycle identities -----------------------------------------------------------

def _sample_members(
    rng: np.random.Generator, group: cg.Group, count: int, pool: list[cg.SL2Matrix]
) -> list[cg.SL2Matrix]:
    members = [g for g in pool if cg.member(g, group)]
    idx = rng.integers(0, len(members), size=count)
    return [members[i] for i in idx]


def check_cocycle_identities(level: str, rng: np.random.Generator) -> list[dict]:
    composites = 100 if level == "full" else 20
    tol = 1e-8
    pool = list(cg.sl2_with_entry_bound(12))
    results = []

    tau0 = 0.1 + 1.3j
    worst = 0.0
    accepted = 0
    while accepted < composites:
        g1, g2 = _sample_members(rng, cg.THETA12, 2, pool)
        if g2.moebius(tau0).imag < tn.MIN_IM_EVAL:
            continue
        accepted += 1
        lhs = tn.halfform_cocycle(g1 * g2, tau0)
        rhs = tn.halfform_cocycle(g1, g2.moebius(tau0)) * tn.halfform_cocycle(g2, tau0)
        worst = max(worst, abs(lhs - rhs))
    results.append(
        entry(
            "halfform_cocycle",
            {"composites": composites, "tau": str(tau0)},
            f"identity within {tol}",
            f"max deviation {worst:.3e}",
            worst,
            worst < tol,
        )
    )

    for k in (0, 1, 3):
        worst = 0.0
        accepted = 0
        while accepted < composites:
            g1, g2 = _sample_members(rng, cg.Gamma0(4), 2, pool)
            if g2.moebius(tau0).imag < tn.MIN_IM_EVAL:
                continue
            accepted += 1
            lhs = tn.shimura_cocycle(g1 * g2, k, tau0)
            rhs = tn.shimura_cocycle(g1, k, g2.moebius(tau0)) * tn.shimura_cocycle(
                g2, k, tau0
            )
            worst = max(worst, abs(lhs - rhs))
        results.append(
            entry(
                "shimura_cocycle",
                {"k": k, "composites": composites},
                f"identity within {tol}",
                f"max deviation {worst:.3e}",
                worst,
                worst < tol,
            )
        )

    m = 2
    worst = 0.0
    small_pool = list(cg.sl2_with_entry_bound(5))
    accepted = 0
    while accepted < composites:
        g1 = small_pool[int(rng.integers(0, len(small_pool)))]
        g2 = small_pool[int(rng.integers(0, len(small_pool)))]
        lam1 = (int(rng.integers(-1, 2)), int(rng.integers(-1, 2)))
        lam2 = (int(rng.integers(-1, 2)), int(rng.integers(-1, 2)))
        z = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
        tau = complex(rng.uniform(-0.3, 0.3), rng.uniform(0.9, 1.4))
        e1 = (g1, lam1)
        e2 = (g2, lam2)
        prod = tn.jacobi_compose(e1, e2)
        lhs = tn.jacobi_cocycle(prod[0], prod[1][0], prod[1][1], m, tau, z)
        moved = tn.jacobi_action(e2, (z, tau))
        rhs = tn.jacobi_cocycle(
            e1[0], e1[1][0], e1[1][1], m, moved[1], moved[0]
        ) * tn.jacobi_cocycle(e2[0], e2[1][0], e2[1][1], m, tau, z)
        # skip samples whose factors leave the comfortably representable
        # range: the relative comparison would degenerate to 0/0
        if not (1e-200 < abs(lhs) < 1e200 and 1e-200 < abs(rhs) < 1e200):
            continue
        accepted += 1
        worst = max(worst, abs(lhs / rhs - 1))
    results.append(
        entry(
            "jacobi_cocycle",
            {"m": m, "composites": composites},
            f"identity within {tol} (relative)",
            f"max relative deviation {worst:.3e}",
            worst,
            worst < tol,
        )
    )
    return results


# --- 9. subgroup indices -------------------------------------------------------------

def check_subgroup_indices(level: str, rng: np.random.Generator) -> list[dict]:
    results = []
    idx4 = cg.subgroup_index(cg.Gamma0(4))
    idx4b = cg.subgroup_index(cg.Gamma0(4), 8)
    results.append(
        entry(
            "index_gamma0_4",
            {"moduli": [4, 8]},
            6,
            [idx4, idx4b],
            float(abs(idx4 - 6) + abs(idx4b - 6)),
            idx4 == idx4b == 6,
        )
    )
    total = cg.subgroup_index(cg.GammaM2M(2))
    total_b = cg.subgroup_index(cg.GammaM2M(2), 8)
    rel = cg.relative_index(cg.GammaM2M(2), cg.Gamma0(4), 4)
    rel_b = cg.relative_index(cg.GammaM2M(2), cg.Gamma0(4), 8)
    ok = total == total_b == idx4 * rel and rel == rel_b
    results.append(
        entry(
            "index_multiplicativity",
            {"chain": "Gamma(2,4) < Gamma0(4) < SL2(Z)", "moduli": [4, 8]},
            "[SL2:sub] = [SL2:mid] * [mid:sub] at both moduli",
            f"total {total}/{total_b}, relative {rel}/{rel_b}, ambient {idx4}",
            0.0 if ok else 1.0,
            ok,
        )
    )
    return results


CHECK_ORDER: list[tuple[str, Callable]] = [
    ("transformation_law", check_transformation_law),
    ("discriminant_oracle", check_discriminant_oracle),
    ("stabilizer_sweeps", check_stabilizer_sweeps),
    ("descended_char", check_descended_char),
    ("stone_von_neumann", check_stone_von_neumann),
    ("descent_combinatorics", check_descent_combinatorics),
    ("metaplectic_weil", check_metaplectic_weil),
    ("cocycle_identities", check_cocycle_identities),
    ("subgroup_indices", check_subgroup_indices),
]


def run_suite(level: str = "quick", seed: int = 0) -> dict:
    """Run the battery; returns {"suite", "seed", "checks", "wall_time", "pass"}."""
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    checks: list[dict] = []
    for _, fn in CHECK_ORDER:
        checks.extend(fn(level, rng))
    wall = time.perf_counter() - start
    return {
        "suite": level,
        "seed": seed,
        "checks": checks,
        "wall_time": float(f"{wall:.6g}"),
        "pass": all(c["pass"] for c in checks),
    }
