import numpy as np
import pytest

from thetalab.congruence import SL2Matrix
from thetalab.metaplectic import MP_I, MP_S, MP_T, MP_Z, MpElement, mp_from_word, mp_mul
from thetalab.weilrep import (
    BadIndex,
    det_character,
    det_character_order,
    det_character_square_order,
    weil_generator,
    weil_rep,
)


def test_generator_examples_m2():
    t = weil_generator(2, "T")
    assert np.allclose(t, np.diag([1, 1j]))
    s = weil_generator(2, "S")
    base = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    # the relation-consistent prefactor is sqrt(-i) = e^{-i pi/4}; the
    # opposite sign breaks (ST)^3 = S^2
    assert np.allclose(s, np.exp(-1j * np.pi / 4) * base)
    z = weil_generator(2, "Zminus")
    assert np.allclose(z, -np.eye(2))


def test_relations_define_a_representation():
    for m in (2, 4, 6, 8, 10):
        t = weil_generator(m, "T")
        s = weil_generator(m, "S")
        st = s @ t
        assert np.max(np.abs(st @ st @ st - s @ s)) < 1e-9
        s4 = s @ s @ s @ s
        assert np.max(np.abs(s4 @ s4 - np.eye(m))) < 1e-9
        assert np.max(np.abs(s4 + np.eye(m))) < 1e-9  # S^4 = -1


def test_input_validation():
    for bad in (0, 3, -2, 514):
        with pytest.raises(BadIndex):
            weil_generator(bad, "T")
    with pytest.raises(ValueError):
        weil_generator(2, "Q")


def test_weil_rep_on_generators_and_center():
    for m in (2, 4, 6, 8):
        assert np.allclose(weil_rep(m, MP_I), np.eye(m))
        assert np.allclose(weil_rep(m, MP_Z), -np.eye(m))
        assert np.allclose(weil_rep(m, MP_T), weil_generator(m, "T"))
        assert np.allclose(weil_rep(m, MP_S), weil_generator(m, "S"))
        s = weil_generator(m, "S")
        assert np.allclose(s @ s @ s @ s, weil_rep(m, mp_from_word([("S", 4)])))


def test_t_powers_are_structurally_periodic():
    for m in (2, 4, 6):
        t2m = weil_rep(m, mp_from_word([("T", 2 * m)]))
        assert np.array_equal(t2m, np.eye(m) + 0j) or np.max(
            np.abs(t2m - np.eye(m))
        ) == 0.0
        diag = np.diag(weil_generator(m, "T"))
        assert np.allclose(diag ** (2 * m), np.ones(m))


def test_homomorphism_random_words():
    rng = np.random.default_rng(0)
    worst = 0.0
    for m in (2, 4, 6, 8):
        for _ in range(50):
            words = []
            for _ in range(2):
                word = [
                    [("S", 1), ("T", 1), ("T", -1)][int(rng.integers(0, 3))]
                    for _ in range(int(rng.integers(0, 15)))
                ]
                words.append(mp_from_word(word))
            p, q = words
            lhs = weil_rep(m, mp_mul(p, q))
            rhs = weil_rep(m, p) @ weil_rep(m, q)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    assert worst < 1e-9


def test_unitarity():
    rng = np.random.default_rng(1)
    for m in (2, 4, 6, 8):
        for which in ("T", "S", "Zminus"):
            mat = weil_generator(m, which)
            assert np.max(np.abs(mat @ mat.conj().T - np.eye(m))) < 1e-10
        for _ in range(20):
            word = [
                [("S", 1), ("T", 1), ("T", -1)][int(rng.integers(0, 3))]
                for _ in range(int(rng.integers(0, 15)))
            ]
            mat = weil_rep(m, mp_from_word(word))
            assert np.max(np.abs(mat @ mat.conj().T - np.eye(m))) < 1e-10


def test_genuine_on_the_center():
    # the representation does not factor through the matrix group: the two
    # lifts of the identity act by +-identity
    for m in (2, 4):
        plus = weil_rep(m, MpElement(SL2Matrix(1, 0, 0, 1), 1))
        minus = weil_rep(m, MpElement(SL2Matrix(1, 0, 0, 1), -1))
        assert np.allclose(plus, np.eye(m))
        assert np.allclose(minus, -np.eye(m))


def test_determinants_m2():
    assert abs(det_character(2, MP_T) - 1j) < 1e-12
    # with the relation-consistent prefactor sqrt(-i), det rho_2(S) = +i
    # (the formal substitution with the opposite prefactor would give -i)
    assert abs(det_character(2, MP_S) - 1j) < 1e-12
    assert det_character_order(2) == 4
    assert det_character_square_order(2) == 2


def test_det_character_orders_divide_24():
    for m in (2, 4, 6, 8, 12):
        order = det_character_order(m)
        assert 24 % order == 0
        sq = det_character_square_order(m)
        assert order % sq == 0 and sq in (order, order // 2)
        # the order annihilates both generator determinants
        for p in (MP_T, MP_S):
            val = det_character(m, p) ** order
            assert abs(val - 1) < 1e-9


def test_det_is_a_character():
    rng = np.random.default_rng(2)
    for m in (2, 6):
        for _ in range(25):
            word1 = [
                [("S", 1), ("T", 1), ("T", -1)][int(rng.integers(0, 3))]
                for _ in range(int(rng.integers(0, 10)))
            ]
            word2 = [
                [("S", 1), ("T", 1), ("T", -1)][int(rng.integers(0, 3))]
                for _ in range(int(rng.integers(0, 10)))
            ]
            p, q = mp_from_word(word1), mp_from_word(word2)
            assert (
                abs(
                    det_character(m, mp_mul(p, q))
                    - det_character(m, p) * det_character(m, q)
                )
                < 1e-9
            )
