import itertools

import numpy as np
import pytest

from elldqg.difference_ops import T, diffop_eq
from elldqg.elliptic_core import ModulusParams, theta
from elldqg.pairing.actions import operator_residual
from elldqg.pairing.algebra import (
    L, Word, alpha, antipode, antipode_inverse, beta, coproduct_E, delta, det, det_expansion, detinv, gamma,
    star, word,
)
from elldqg.pairing.checks import antipode_sides, verify_antipode_pairing, verify_star_pairing
from elldqg.pairing.engine import Cobraiding
from elldqg.rmatrix import abcd

GENS = (alpha, beta, gamma, delta)
W, Z = 1.1 - 0.3j, 0.7 + 0.2j
# b(0.4, 0.6) for p=0.1, q=0.5 from mpmath at 30 digits
B_REF = 1.69217555768801696


@pytest.fixture
def engine(params):
    return Cobraiding(params)


def test_generator_pairs_diagonal_shift(engine, lam_samples):
    assert diffop_eq(engine.generator_pair(alpha(W), alpha(Z)), T(-2), lam_samples)
    assert diffop_eq(engine.generator_pair(delta(W), delta(Z)), T(2), lam_samples)


def test_generator_pair_b_entry(lam_samples):
    P = ModulusParams(0.1, 0.5)
    op = Cobraiding(P).generator_pair(beta(0.6), gamma(1.0))
    assert op.shift == 0
    assert abs(op(0.4) - B_REF) < 1e-13 * B_REF


def test_generator_pairs_zero_by_grading(engine):
    assert engine.generator_pair(alpha(W), beta(Z)).is_zero
    for X, a in itertools.product(GENS, GENS):
        op = engine.generator_pair(X(W), a(Z))
        (i, j), (k, l) = X(W).indices, a(Z).indices
        if i + k != j + l:
            # h-invariance of the R-matrix
            assert op.is_zero
        else:
            assert not op.is_zero


def test_det_pairing_reproduced_from_expansion(engine, lam_samples):
    for G in GENS:
        derived = engine.pair_words(Word((G(W),)), det_expansion(Z, engine.params))
        assert operator_residual(derived, engine.det_generator_pair(G(W), det(Z)), lam_samples) < 1e-10
        derived = engine.pair_words(det_expansion(W, engine.params), Word((G(Z),)))
        assert operator_residual(derived, engine.det_generator_pair(det(W), G(Z)), lam_samples) < 1e-10


def test_det_inverse_pairing_values(engine, params, lam_samples):
    q, p, x = params.q, params.p, W / Z
    op = engine.det_generator_pair(delta(W), detinv(Z))
    assert op.shift == 1
    assert np.allclose(op(lam_samples), q ** -1 * theta(x, p) / theta(x / q ** 2, p), rtol=1e-13)
    op = engine.det_generator_pair(detinv(W), alpha(Z))
    assert op.shift == -1
    assert np.allclose(op(lam_samples), q ** -1 * theta(q ** 2 * x, p) / theta(x, p), rtol=1e-13)
    assert engine.det_generator_pair(beta(W), detinv(Z)).is_zero


def test_det_times_det_inverse_pairs_to_counit(engine, lam_samples):
    for G in GENS:
        lhs = engine.pair_words(Word((G(W),)), Word((det(Z), detinv(Z))))
        i, j = G(W).indices
        expected = T(-i) if i == j else None
        if expected is None:
            assert lhs.is_zero or np.allclose(lhs(lam_samples), 0, atol=1e-12)
        else:
            assert operator_residual(lhs, expected, lam_samples) < 1e-10


def test_det_inverse_pair(engine, params, lam_samples):
    q, p, x = params.q, params.p, W / Z
    op = engine.pair_words(Word((detinv(W),)), Word((detinv(Z),)))
    assert op.shift == 0
    assert np.allclose(op(lam_samples), q ** 2 * theta(x / q ** 2, p) / theta(q ** 2 * x, p), rtol=1e-12)
    op = engine.pair_words(Word((detinv(W),)), Word((det(Z),)))
    assert np.allclose(op(lam_samples), q ** -2 * theta(q ** 2 * x, p) / theta(x / q ** 2, p), rtol=1e-12)


def test_unit_word_pairs_to_counit(engine, lam_samples):
    assert diffop_eq(engine.pair_words(Word(()), Word((alpha(Z),))), T(-1), lam_samples)
    assert engine.pair_words(Word(()), Word((beta(Z),))).is_zero


def test_coproduct_of_generators():
    pieces = coproduct_E(L(1, -1, Z))
    assert {(a.indices, b.indices) for a, b in pieces} == {((1, 1), (1, -1)), ((1, -1), (-1, -1))}


def test_inverse_antipode_undoes_antipode(engine, params, lam_samples):
    for G in GENS:
        el = antipode_inverse(antipode([word(G(Z))], params), params)
        for Y in GENS:
            assert operator_residual(engine.pair_words(Word((Y(W),)), el),
                                     engine.pair_words(Word((Y(W),)), Word((G(Z),))), lam_samples) < 1e-10


def test_antipode_compatibility(engine, lam_samples):
    for X, a in itertools.product(GENS + (detinv,), repeat=2):
        assert verify_antipode_pairing(X(W), a(Z), engine, lam_samples) < 1e-10


def test_antipode_weight_mismatch_both_zero(engine, lam_samples):
    lhs, rhs = antipode_sides(alpha(W), beta(Z), engine)
    assert operator_residual(lhs, rhs, lam_samples) == 0


def test_star_compatibility(engine):
    lam = np.array([0.3, 0.62, 0.85])
    w, z = np.exp(0.4j), np.exp(2.1j)
    for X, a in itertools.product(GENS + (detinv,), repeat=2):
        assert verify_star_pairing(X(w), a(z), engine, lam) < 1e-10


def test_star_involution(params, lam_samples):
    engine = Cobraiding(params)
    w = np.exp(0.9j)
    for G in GENS:
        el = star(star([word(G(w))], params), params)
        for Y in GENS:
            assert operator_residual(engine.pair_words(Word((Y(W),)), el),
                                     engine.pair_words(Word((Y(W),)), Word((G(w),))), lam_samples) < 1e-10


def test_alpha_delta_pairing_is_a(engine, params, lam_samples):
    op = engine.generator_pair(alpha(W), delta(Z))
    a = abcd(lam_samples, W / Z, params)[0]
    assert op.shift == 0
    assert np.allclose(op(lam_samples), a, rtol=1e-13)
