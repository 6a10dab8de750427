import itertools

import numpy as np
import pytest

from elldqg.elliptic_core import ModulusParams
from elldqg.pairing.actions import (
    act_left, act_right, cop_bigrade, identity_combo, pair_with_combo, verify_weak_action,
)
from elldqg.pairing.algebra import Word, alpha, beta, delta, gamma
from elldqg.pairing.matrix import MatrixPairing, t
from elldqg.rmatrix import abcd

P = ModulusParams(0.2, 0.5)
GENS = (alpha, beta, gamma, delta)
W1, W2, Z = 1.1 - 0.3j, 0.8 + 0.5j, 0.7 + 0.2j


@pytest.fixture(scope="module")
def mp():
    return MatrixPairing(P)


def test_cop_bigrade_swaps():
    assert cop_bigrade(beta(1.0)) == (-1, 1)
    assert cop_bigrade(alpha(1.0)) == (1, 1)


def test_identity_combo_pairs_like_the_element(mp, lam_samples):
    idx = t(2, 1, 1, Z)
    a = pair_with_combo(Word((alpha(W1),)), identity_combo(idx), mp)
    b = mp.pair_word_matrix(Word((alpha(W1),)), idx)
    assert np.allclose(a(lam_samples), b(lam_samples), rtol=1e-14)


def test_action_on_unit_is_counit():
    mp = MatrixPairing(P)
    combo = act_left(alpha(W1), t(0, 0, 0, Z), mp)
    (term,) = combo.terms
    assert np.allclose(term.right(np.array([0.3, 0.7])), 1.0)
    assert act_left(beta(W1), t(0, 0, 0, Z), mp).terms == ()


def test_alpha_on_t100_single_term(mp, lam_samples):
    combo = act_left(alpha(W1), t(1, 0, 0, Z), mp)
    (term,) = combo.terms
    assert (term.k, term.j) == (0, 0)
    assert np.allclose(term.right(lam_samples), abcd(lam_samples, W1 / Z, P)[0], rtol=1e-13)


def test_right_action_terms(mp):
    combo = act_right(t(2, 1, 1, Z), gamma(W1), mp)
    assert all(term.j == 1 for term in combo.terms)
    assert {term.k for term in combo.terms} <= {0, 1, 2}


@pytest.mark.parametrize("side", ["left", "right"])
def test_weak_action_examples(mp, lam_samples, side):
    assert verify_weak_action(alpha(W1), alpha(W2), t(1, 1, 1, Z), mp, lam_samples, side) < 1e-10
    assert verify_weak_action(delta(W1), beta(W2), t(2, 0, 1, Z), mp, lam_samples, side) < 1e-10


@pytest.mark.parametrize("side", ["left", "right"])
def test_weak_action_all_pairs(mp, lam_samples, side):
    for N in range(3):
        for k, j in itertools.product(range(N + 1), repeat=2):
            for Y, X in itertools.product(GENS, GENS):
                assert verify_weak_action(Y(W1), X(W2), t(N, k, j, Z), mp, lam_samples, side) < 1e-10
