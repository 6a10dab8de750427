"""The dynamical representation pi of E^opp on V^N and pairings read off from it.

V^N has basis v_0(z), ..., v_N(z), v_k of weight 2k - N, and a vector is a
list of N + 1 coefficient functions of lambda. pi is antimultiplicative, so
pi(X_1 ... X_n) v = pi(X_n) ... pi(X_1) v: the letters of a word act in the
order in which they are written, the first letter acting first.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .difference_ops import Coeff, ZERO_TOL, const
from .elliptic_core import ModulusParams, ell_binomial, ell_shifted_factorial, theta
from .pairing.algebra import GeneratorToken, Word
from .pairing.matrix import MatrixElementIndex, expand_matrix_element


@dataclass(frozen=True)
class VNVector:
    """sum_k mu_V(coeffs[k]) v_k(z); a None entry is the zero coefficient."""

    N: int
    z: complex
    coeffs: tuple

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.N + 1:
            raise ValueError(f"expected {self.N + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def coefficient(self, k: int, lam):
        c = self.coeffs[k]
        lam = np.asarray(lam, dtype=complex)
        return np.zeros_like(lam) if c is None else c(lam)

    def scaled(self, f: Coeff) -> "VNVector":
        """mu_V(f) v: pointwise multiplication of every coefficient."""
        return VNVector(self.N, self.z, tuple(None if c is None else _times(f, c) for c in self.coeffs))

    def __add__(self, other: "VNVector") -> "VNVector":
        if (self.N, self.z) != (other.N, other.z):
            raise ValueError("vectors live in different spaces")
        out = []
        for a, b in zip(self.coeffs, other.coeffs):
            if a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            else:
                out.append(_plus(a, b))
        return VNVector(self.N, self.z, tuple(out))


def _times(f: Coeff, g: Coeff) -> Coeff:
    return lambda lam: f(lam) * g(lam)


def _plus(f: Coeff, g: Coeff) -> Coeff:
    return lambda lam: f(lam) + g(lam)


def basis_vector(N: int, k: int, z, coeff: Coeff | None = None) -> VNVector:
    coeffs = [None] * (N + 1)
    coeffs[k] = const(1.0) if coeff is None else coeff
    return VNVector(N, z, tuple(coeffs))


def zero_vector(N: int, z) -> VNVector:
    return VNVector(N, z, (None,) * (N + 1))


def generator_coefficient(X: GeneratorToken, N: int, k: int, z: complex, params: ModulusParams):
    """(target index, lambda shift applied to f, multiplier) for pi(X) on mu(f) v_k.

    Returns None when the image is zero because the target index leaves 0..N.
    """
    p, q = params.p, params.q
    q2 = q * q
    x = X.spectral / z
    qp = params.qpow

    def th(v):
        return theta(v, p)

    if X.kind == "alpha":
        return k, 1, lambda lam: (th(q2 ** (1 - N + k) * x) * th(qp(lam + N - k + 2))
                                  / (th(q2 * x) * th(qp(lam + 2))))
    if X.kind == "beta":
        if k + 1 > N:
            return None
        return k + 1, -1, lambda lam: (th(q2 ** (N - k)) * th(qp(-(lam - 1 + N - k)) * x)
                                       / (th(q2 * x) * th(qp(-lam))))
    if X.kind == "gamma":
        if k - 1 < 0:
            return None
        return k - 1, 1, lambda lam: (th(q2 ** k) * th(qp(lam - k + 3) * x)
                                      / (th(q2 * x) * th(qp(lam + 2))))
    if X.kind == "delta":
        return k, -1, lambda lam: (th(qp(k - lam)) * th(q2 ** (1 - k) * x)
                                   / (th(q2 * x) * th(qp(-lam))))
    if X.kind == "detinv":
        c = complex(q ** (-N) * th(q2 * x) / th(q2 ** (1 - N) * x))
        return k, 0, lambda lam: c + 0.0 * np.asarray(lam)
    raise ValueError(f"pi is not defined on {X.kind}")


def raw_generator_coefficient(X: GeneratorToken, N: int, k: int, z: complex, params: ModulusParams):
    """The multiplier of pi(X) on v_k before the vanishing-index cut-off.

    For beta on v_N and gamma on v_0 the displayed multiplier contains
    theta(q^0) = theta(1) = 0, so these images vanish identically.
    """
    p, q2 = params.p, params.q ** 2
    x = X.spectral / z
    qp = params.qpow
    if X.kind == "beta":
        return lambda lam: (theta(q2 ** (N - k), p) * theta(qp(-(lam - 1 + N - k)) * x, p)
                            / (theta(q2 * x, p) * theta(qp(-lam), p)))
    if X.kind == "gamma":
        return lambda lam: (theta(q2 ** k, p) * theta(qp(lam - k + 3) * x, p)
                            / (theta(q2 * x, p) * theta(qp(lam + 2), p)))
    return generator_coefficient(X, N, k, z, params)[2]


def act_generator(X: GeneratorToken, v: VNVector, params: ModulusParams) -> VNVector:
    """pi(X) v, following the displayed action on mu(f) v_k."""
    out = [None] * (v.N + 1)
    for k, f in enumerate(v.coeffs):
        if f is None:
            continue
        rule = generator_coefficient(X, v.N, k, v.z, params)
        if rule is None:
            continue
        target, shift, m = rule
        new = _shifted_product(m, f, shift)
        out[target] = new if out[target] is None else _plus(out[target], new)
    return VNVector(v.N, v.z, tuple(out))


def _shifted_product(m: Coeff, f: Coeff, shift: int) -> Coeff:
    if shift == 0:
        return lambda lam: m(lam) * f(lam)
    return lambda lam: m(lam) * f(lam + shift)


def act_word(w: Word, v: VNVector, params: ModulusParams) -> VNVector:
    """pi(c mu_r(g) X_1...X_n) v = c pi(X_n)...pi(X_1) mu_V(g) v.

    mu_r of E is the left moment map of E^cop, which pi sends to mu_V.
    """
    if w.left is not None:
        raise ValueError("left moment maps of E are not handled by the representation")
    out = v if w.right is None else v.scaled(w.right)
    if w.coeff != 1:
        out = out.scaled(const(w.coeff))
    for t in w.tokens:
        out = act_generator(t, out, params)
    return out


def printed_summand_prefactor(M: int, r: int, s: int, l: int, params: ModulusParams) -> Coeff:
    """The lambda-function of the l-th summand of pi(t^M_rs(w)) v exactly as printed.

    It differs from the expansion prefactor of t^M_rs by a (M - 2r) where the
    expansion has (M - 2s) in the first denominator.
    """

    def g(lam):
        lam = np.asarray(lam, dtype=complex)
        qq = lambda c: params.qpow(lam + c)
        num = ell_shifted_factorial(qq(M - r - 2 * s + l + 2), l, params)
        den = ell_shifted_factorial(qq(M - 2 * r + 2), l, params)
        num = num * ell_shifted_factorial(qq(l - s + 2), s - l, params)
        den = den * ell_shifted_factorial(qq(M - 2 * s - r + 2 * l + 2), s - l, params)
        return num / den * ell_binomial(M - r, s - l, params) * ell_binomial(r, l, params)

    return g


def act_matrix_element(idx: MatrixElementIndex, v: VNVector, params: ModulusParams,
                       as_printed: bool = False) -> VNVector:
    """pi(t^M_rs(w)) v summed over the expansion of t^M_rs(w)."""
    out = zero_vector(v.N, v.z)
    for l, w in _summands(idx, params):
        if as_printed:
            w = Word(w.tokens, 1.0, None, printed_summand_prefactor(idx.N, idx.k, idx.j, l, params))
        out = out + act_word(w, v, params)
    return out


def _summands(idx: MatrixElementIndex, params: ModulusParams):
    words = expand_matrix_element(idx, params)
    l0 = max(0, idx.k + idx.j - idx.N)
    return list(enumerate(words, start=l0))


def rep_pairing_extract(s_idx: MatrixElementIndex, N: int, k: int, j: int, z, lam, params: ModulusParams,
                        as_printed: bool = False):
    """Coefficient of v_j(z) in pi(t^M_rs(w)) v_k(z) at lambda.

    It equals the coefficient of <t^M_rs(w), t^N_kj(z)> evaluated at
    lambda + 2s - M.
    """
    v = act_matrix_element(s_idx, basis_vector(N, k, z), params, as_printed)
    return v.coefficient(j, lam)


def weight(v: VNVector, samples: Sequence[complex] = (0.31 + 0.07j, 0.58 - 0.12j, 0.77 + 0.21j)):
    """2k - N if exactly one coefficient is nonzero at the samples, else 'mixed' (or None for 0)."""
    lam = np.asarray(samples, dtype=complex)
    live = [k for k in range(v.N + 1) if np.any(np.abs(v.coefficient(k, lam)) > ZERO_TOL)]
    if not live:
        return None
    if len(live) > 1:
        return "mixed"
    return 2 * live[0] - v.N


def is_spherical(v: VNVector) -> bool:
    """Spherical means pure of weight zero, i.e. a multiple of v_{N/2} with N even."""
    return weight(v) == 0
