import itertools

import numpy as np
import pytest

from elldqg.difference_ops import const
from elldqg.dynrep import (
    VNVector, act_generator, act_matrix_element, basis_vector, generator_coefficient, is_spherical,
    raw_generator_coefficient, rep_pairing_extract, weight, zero_vector,
)
from elldqg.elliptic_core import ModulusParams, theta
from elldqg.pairing.algebra import alpha, beta, delta, detinv, gamma
from elldqg.pairing.closed_form import pair_matrix_matrix_closed
from elldqg.pairing.matrix import MatrixPairing, t

P = ModulusParams(0.2, 0.5)
W, Z = 1.1 - 0.3j, 0.7 + 0.2j


def test_vector_validation_and_scaling(lam_samples):
    with pytest.raises(ValueError):
        VNVector(2, Z, (None, None))
    v = basis_vector(2, 1, Z).scaled(lambda lam: 2 * lam)
    assert np.allclose(v.coefficient(1, lam_samples), 2 * lam_samples)
    assert np.all(v.coefficient(0, lam_samples) == 0)


def test_weights():
    for N in range(4):
        for k in range(N + 1):
            assert weight(basis_vector(N, k, Z)) == 2 * k - N
    assert weight(basis_vector(3, 0, Z) + basis_vector(3, 3, Z)) == "mixed"
    assert weight(zero_vector(2, Z)) is None
    assert not is_spherical(basis_vector(2, 0, Z) + basis_vector(2, 2, Z))


def test_spherical_vectors():
    assert is_spherical(basis_vector(2, 1, Z))
    assert is_spherical(basis_vector(4, 2, Z))
    assert not is_spherical(basis_vector(3, 1, Z))


def test_alpha_action_shifts_incoming_coefficient(lam_samples):
    N, k = 3, 1
    f = lambda lam: np.exp(lam)
    v = act_generator(alpha(W), basis_vector(N, k, Z, f), P)
    q2, x = P.q ** 2, W / Z
    th = lambda u: theta(u, P.p)
    m = (th(q2 ** (1 - N + k) * x) * th(P.qpow(lam_samples + N - k + 2))
         / (th(q2 * x) * th(P.qpow(lam_samples + 2))))
    assert np.allclose(v.coefficient(k, lam_samples), m * f(lam_samples + 1), rtol=1e-13)


def test_raising_and_lowering():
    assert generator_coefficient(beta(W), 3, 1, Z, P)[:2] == (2, -1)
    assert generator_coefficient(gamma(W), 3, 1, Z, P)[:2] == (0, 1)
    assert generator_coefficient(delta(W), 3, 1, Z, P)[:2] == (1, -1)


def test_singular_vectors(lam_samples):
    for N in range(1, 5):
        assert np.all(np.abs(raw_generator_coefficient(beta(W), N, N, Z, P)(lam_samples)) < 1e-13)
        assert np.all(np.abs(raw_generator_coefficient(gamma(W), N, 0, Z, P)(lam_samples)) < 1e-13)
        assert weight(act_generator(beta(W), basis_vector(N, N, Z), P)) is None
        assert weight(act_generator(gamma(W), basis_vector(N, 0, Z), P)) is None


def test_detinv_scalar(lam_samples):
    q, x = P.q, W / Z
    for N in range(4):
        v = act_generator(detinv(W), basis_vector(N, 1 % (N + 1), Z), P)
        c = q ** -N * theta(q ** 2 * x, P.p) / theta(q ** (2 * (1 - N)) * x, P.p)
        assert np.allclose(v.coefficient(1 % (N + 1), lam_samples), c, rtol=1e-13)


def test_single_letter_matrix_elements(lam_samples):
    v = basis_vector(1, 1, Z)
    a = act_matrix_element(t(1, 1, 1, W), v, P)
    b = act_generator(alpha(W), v, P)
    assert np.allclose(a.coefficient(1, lam_samples), b.coefficient(1, lam_samples), rtol=1e-14)
    v = basis_vector(3, 1, Z)
    a = act_matrix_element(t(1, 1, 0, W), v, P)
    b = act_generator(beta(W), v, P)
    assert np.allclose(a.coefficient(2, lam_samples), b.coefficient(2, lam_samples), rtol=1e-14)


def test_rep_extract_generator_limit(lam_samples):
    assert np.allclose(rep_pairing_extract(t(1, 1, 1, W), 1, 1, 1, Z, lam_samples, P), 1.0)
    assert np.all(rep_pairing_extract(t(2, 1, 0, W), 2, 1, 1, Z, lam_samples, P) == 0)


def test_rep_extract_matches_closed_form(lam_samples):
    M, r, s = 2, 1, 1
    closed = pair_matrix_matrix_closed(t(M, r, s, W), t(2, 1, 1, Z), P)
    rep = rep_pairing_extract(t(M, r, s, W), 2, 1, 1, Z, lam_samples, P)
    assert np.allclose(rep, closed(lam_samples + 2 * s - M), rtol=1e-9)


def test_rep_matches_convolution_all_sets(rng):
    mp = MatrixPairing(P)
    lam = np.array([complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))])
    for M, N in itertools.product(range(3), repeat=2):
        for r, s, k, j in itertools.product(range(M + 1), range(M + 1), range(N + 1), range(N + 1)):
            rep = rep_pairing_extract(t(M, r, s, W), N, k, j, Z, lam, P)
            conv = mp.oracle(t(M, r, s, W), t(N, k, j, Z))
            expected = conv(lam + 2 * s - M)
            assert np.allclose(rep, expected, rtol=1e-9, atol=1e-12)


def test_printed_summand_prefactor_disagrees():
    # With (M - 2r) in place of (M - 2s) the representation no longer matches.
    mp = MatrixPairing(P)
    lam = np.array([0.43 + 0.11j])
    bad = 0
    for M, N in itertools.product(range(4), repeat=2):
        for r, s, k in itertools.product(range(M + 1), range(M + 1), range(N + 1)):
            j = r + k - s
            if not 0 <= j <= N or r == s:
                continue
            printed = rep_pairing_extract(t(M, r, s, W), N, k, j, Z, lam, P, as_printed=True)
            expected = mp.oracle(t(M, r, s, W), t(N, k, j, Z))(lam + 2 * s - M)
            if not np.allclose(printed, expected, rtol=1e-8):
                bad += 1
    assert bad > 0


def test_vector_addition_requires_same_space():
    with pytest.raises(ValueError):
        basis_vector(2, 0, Z) + basis_vector(3, 0, Z)
    s = basis_vector(2, 0, Z, const(2.0)) + basis_vector(2, 0, Z)
    assert s.coefficient(0, 0.3) == pytest.approx(3.0)
