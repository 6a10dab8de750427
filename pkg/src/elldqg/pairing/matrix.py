"""Matrix elements t^N_kj(z) of the spin-N/2 corepresentation and their pairings.

``expand_matrix_element`` writes t^N_kj(z) as a sum of words
mu_r(g_l) gamma...gamma delta...delta alpha...alpha beta...beta. Pairings of
words with matrix elements are computed by peeling generators off the left of
the word and summing over the comultiplication Delta(t_kj) = sum_p t_kp (x) t_pj,

    <X Y, t_kj> = sum_p <X, t_kp> T_{2p-N} <Y, t_pj>,

with the closed generator/matrix-element pairings as base case.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..difference_ops import ZERO, Coeff, DiffOp, T, compose, mult
from ..elliptic_core import ModulusParams, ell_binomial, ell_shifted_factorial, theta
from .algebra import GeneratorToken, Word, alpha, beta, delta, gamma
from .engine import Cobraiding, sum_ops


@dataclass(frozen=True)
class MatrixElementIndex:
    """t^N_kj(z)."""

    N: int
    k: int
    j: int
    spectral: complex

    def __post_init__(self) -> None:
        if self.N < 0 or not (0 <= self.k <= self.N and 0 <= self.j <= self.N):
            raise ValueError(f"need 0 <= k, j <= N, got N={self.N}, k={self.k}, j={self.j}")
        object.__setattr__(self, "spectral", complex(self.spectral))

    @property
    def bigrade(self) -> tuple[int, int]:
        return 2 * self.k - self.N, 2 * self.j - self.N

    def counit(self) -> DiffOp:
        return T(self.N - 2 * self.k) if self.k == self.j else ZERO

    def with_indices(self, k: int, j: int) -> "MatrixElementIndex":
        return MatrixElementIndex(self.N, k, j, self.spectral)


def t(N: int, k: int, j: int, z) -> MatrixElementIndex:
    return MatrixElementIndex(N, k, j, z)


def expansion_prefactor(N: int, k: int, j: int, l: int, params: ModulusParams) -> Coeff:
    """The lambda-dependent part of the l-th summand, fed to mu_r."""

    def qq(c):
        return lambda lam: params.qpow(lam + c)

    def g(lam):
        lam = np.asarray(lam, dtype=complex)
        num = ell_shifted_factorial(qq(N - k - 2 * j + l + 2)(lam), l, params)
        den = ell_shifted_factorial(qq(N - 2 * j + 2)(lam), l, params)
        num = num * ell_shifted_factorial(qq(l - j + 2)(lam), j - l, params)
        den = den * ell_shifted_factorial(qq(N - 2 * j - k + 2 * l + 2)(lam), j - l, params)
        return num / den

    return g


def _descending(gen, hi: int, lo: int, z: complex, q2: float):
    return [gen(q2 ** e * z) for e in range(hi, lo - 1, -1)]


def summand_tokens(N: int, k: int, j: int, l: int, z: complex, params: ModulusParams) -> tuple[GeneratorToken, ...]:
    q2 = params.q ** 2
    toks = _descending(gamma, N - k - 1, N - j - k + l, z, q2)
    toks += _descending(delta, N - j - k + l - 1, 0, z, q2)
    toks += _descending(alpha, N - 1, N - l, z, q2)
    toks += _descending(beta, N - l - 1, N - k, z, q2)
    return tuple(toks)


def expand_matrix_element(idx: MatrixElementIndex, params: ModulusParams) -> list[Word]:
    """t^N_kj(z) as a list of words, one per l = max(0, k+j-N) .. min(k, j)."""
    N, k, j, z = idx.N, idx.k, idx.j, idx.spectral
    out = []
    for l in range(max(0, k + j - N), min(k, j) + 1):
        c = ell_binomial(k, l, params) * ell_binomial(N - k, j - l, params)
        right = None if l == 0 and j == 0 else expansion_prefactor(N, k, j, l, params)
        out.append(Word(summand_tokens(N, k, j, l, z, params), c, None, right))
    return out


# ---------------------------------------------------------------------------
# generator against matrix element
# ---------------------------------------------------------------------------

def pair_gen_matrix(X: GeneratorToken, idx: MatrixElementIndex, params: ModulusParams) -> DiffOp:
    """Closed-form pairing of a generator (or det^-1) with t^N_kj(z)."""
    N, k, j = idx.N, idx.k, idx.j
    x = X.spectral / idx.spectral
    p, q = params.p, params.q
    q2 = q * q
    qp = params.qpow

    def th(v):
        return theta(v, p)

    if X.kind == "alpha":
        if k != j:
            return ZERO
        return DiffOp(lambda lam: th(q2 ** (1 - N + k) * x) * th(qp(lam + N - k + 1))
                      / (th(q2 * x) * th(qp(lam + 1))), N - 2 * k - 1)
    if X.kind == "beta":
        if k != j - 1:
            return ZERO
        return DiffOp(lambda lam: th(q2 ** (N - k)) * th(qp(-lam - N + k) * x)
                      / (th(q2 * x) * th(qp(-lam - 1))), N - 2 * k - 1)
    if X.kind == "gamma":
        if j != k - 1:
            return ZERO
        return DiffOp(lambda lam: th(q2 ** k) * th(qp(lam - k + 2) * x)
                      / (th(q2 * x) * th(qp(lam + 1))), N - 2 * k + 1)
    if X.kind == "delta":
        if k != j:
            return ZERO
        return DiffOp(lambda lam: th(qp(k - lam - 1)) * th(q2 ** (1 - k) * x)
                      / (th(q2 * x) * th(qp(-lam - 1))), N - 2 * k + 1)
    if X.kind == "detinv":
        if k != j:
            return ZERO
        c = complex(q ** (-N) * th(q2 * x) / th(q2 ** (1 - N) * x))
        return DiffOp(lambda lam: c + 0.0 * np.asarray(lam), N - 2 * k)
    raise ValueError(f"no closed form for {X.kind} against a matrix element")


class MatrixPairing:
    """Pairings of words and matrix elements at fixed (p, q)."""

    def __init__(self, params: ModulusParams, engine: Cobraiding | None = None):
        self.params = params
        self.engine = engine or Cobraiding(params)
        self._tokens = lru_cache(maxsize=None)(self._pair_tokens_matrix)

    def _pair_tokens_matrix(self, tokens: tuple[GeneratorToken, ...], idx: MatrixElementIndex) -> DiffOp:
        if not tokens:
            return idx.counit()
        if len(tokens) == 1:
            return pair_gen_matrix(tokens[0], idx, self.params)
        head, rest = tokens[:1], tokens[1:]
        terms = []
        for p in range(idx.N + 1):
            left = self._tokens(head, idx.with_indices(idx.k, p))
            if left.is_zero:
                continue
            right = self._tokens(rest, idx.with_indices(p, idx.j))
            if right.is_zero:
                continue
            terms.append(compose(compose(left, T(2 * p - idx.N)), right))
        return sum_ops(terms)

    def pair_word_matrix(self, w: Word, idx: MatrixElementIndex) -> DiffOp:
        """<w, t^N_kj(z)> for a first-slot word (moment maps included)."""
        core = self._tokens(tuple(w.tokens), idx)
        if core.is_zero:
            return ZERO
        if w.coeff != 1:
            core = core.scale(w.coeff)
        if w.right is not None:
            core = compose(mult(w.right), core)
        if w.left is not None:
            x = w.bigrade[0]
            f = w.left
            core = compose(core, mult(lambda lam: f(lam + x)))
        return core

    def pair_element_matrix(self, el, idx: MatrixElementIndex) -> DiffOp:
        return sum_ops([self.pair_word_matrix(w, idx) for w in el])

    def oracle(self, s: MatrixElementIndex, idx: MatrixElementIndex) -> DiffOp:
        """<t^M_rs(w), t^N_kj(z)> by expanding the first slot into words."""
        return self.pair_element_matrix(expand_matrix_element(s, self.params), idx)

    def generator_oracle(self, s: MatrixElementIndex, idx: MatrixElementIndex) -> DiffOp:
        """Same pairing with both slots expanded into generators (R-matrix level only)."""
        return self.engine.pair_words(expand_matrix_element(s, self.params),
                                      expand_matrix_element(idx, self.params))

    def generator_matrix_from_R(self, X: GeneratorToken, idx: MatrixElementIndex) -> DiffOp:
        """<X, t^N_kj(z)> with t expanded into generators (independent of the closed form)."""
        return self.engine.pair_words(Word((X,)), expand_matrix_element(idx, self.params))
