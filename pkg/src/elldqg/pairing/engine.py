"""Generator-level cobraiding E^cop x E -> D_h*.

The pairing of two generators is read off the R-matrix,

    <L_ij(w), L_kl(z)> = R^{jl}_{ik}(lambda, w/z) T_{-omega(i)-omega(k)},

and is extended to words using the product rules

    <XY, a> = sum <X, a(1)> T_rho <Y, a(2)>      (rho: right E-grade of a(1))
    <X, ab> = sum <X(1), a> T_rho <X(2), b>      (rho: right grade of X(1) in E^cop)

with Delta(L_ab) = sum_x L_ax (x) L_xb on the second slot and its flip on the
first slot. Moment maps follow the rules

    <mu_r(g) mu_l(f) W, a> = g o <W, a> o (T_x f)     (x: left E-grade of W)
    <X, mu_l(f) mu_r(g) b> = f o <X, b> o (T_y g)     (y: right E-grade of b)

Pairings involving det and det^-1 use the displayed determinant formulas for
generator/determinant pairs; determinant/determinant pairs are derived here by
expanding det(z) into generators.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from ..difference_ops import IDENTITY, ZERO, Coeff, DiffOp, T, compose, inverse, mult
from ..elliptic_core import ModulusParams, theta
from ..rmatrix import abcd
from .algebra import GeneratorToken, Word, coproduct_E, coproduct_cop, det_expansion, tokens_bigrade

Tokens = tuple[GeneratorToken, ...]


def sum_ops(ops: Sequence[DiffOp]) -> DiffOp:
    """Sum of homogeneous operators sharing one shift (zero terms are dropped)."""
    live = [op for op in ops if not op.is_zero]
    if not live:
        return ZERO
    if len(live) == 1:
        return live[0]
    shifts = {op.shift for op in live}
    if len(shifts) != 1:
        raise ValueError(f"inhomogeneous sum with shifts {sorted(shifts)}")
    coeffs = [op.coeff for op in live]

    def f(lam):
        out = coeffs[0](lam)
        for c in coeffs[1:]:
            out = out + c(lam)
        return out

    return DiffOp(f, live[0].shift)


def counit_token(t: GeneratorToken) -> DiffOp:
    """epsilon(L_ab) = delta_ab T_{-omega(a)}; epsilon(det^{+-1}) = T_0."""
    if not t.is_L:
        return IDENTITY
    a, b = t.indices
    return T(-a) if a == b else ZERO


def counit_tokens(tokens: Sequence[GeneratorToken]) -> DiffOp:
    out = IDENTITY
    for t in tokens:
        out = compose(out, counit_token(t))
        if out.is_zero:
            return ZERO
    return out


def _scalar_coeff(value: complex) -> Coeff:
    value = complex(value)
    return lambda lam: value + 0.0 * np.asarray(lam)


class Cobraiding:
    """The pairing for the elliptic R-matrix at fixed (p, q).

    Pairings of token sequences are memoised, so one instance can be reused for
    many evaluations with the same spectral parameters.
    """

    def __init__(self, params: ModulusParams):
        self.params = params
        self._pair_tokens = lru_cache(maxsize=None)(self._pair_tokens_uncached)

    # -- base cases -------------------------------------------------------
    def generator_pair(self, X: GeneratorToken, a: GeneratorToken) -> DiffOp:
        """<L_ij(w), L_kl(z)> = R^{jl}_{ik}(lambda, w/z) T_{-omega(i)-omega(k)}."""
        i, j = X.indices
        k, l = a.indices
        shift = -i - k
        x = X.spectral / a.spectral
        params = self.params
        # middle block entries: R^{1,-1}_{1,-1}=a, R^{-1,1}_{1,-1}=b, R^{1,-1}_{-1,1}=c, R^{-1,1}_{-1,1}=d
        if (i, k) == (j, l) and i == k:
            return T(shift)
        if i + k != j + l or i == k:
            return ZERO
        slot = {(1, -1, 1, -1): 0, (-1, 1, 1, -1): 1, (1, -1, -1, 1): 2, (-1, 1, -1, 1): 3}[(j, l, i, k)]
        return DiffOp(lambda lam: abcd(lam, x, params)[slot], shift)

    def _q2(self) -> float:
        return self.params.q ** 2

    def det_generator_pair(self, X: GeneratorToken, a: GeneratorToken) -> DiffOp:
        """Pairings between an L-generator and det or det^-1 (diagonal only)."""
        p, q, q2 = self.params.p, self.params.q, self._q2()
        x = X.spectral / a.spectral
        if X.is_L:
            i, j = X.indices
            if i != j:
                return ZERO
            shift = -i
            if a.kind == "det":
                c = q * theta(x / q2, p) / theta(x, p)
            else:
                c = theta(x, p) / (q * theta(x / q2, p))
        else:
            k, l = a.indices
            if k != l:
                return ZERO
            shift = -k
            if X.kind == "det":
                c = q * theta(x, p) / theta(q2 * x, p)
            else:
                c = theta(q2 * x, p) / (q * theta(x, p))
        return DiffOp(_scalar_coeff(c), shift)

    def det_det_pair(self, X: GeneratorToken, a: GeneratorToken) -> DiffOp:
        """Determinant against determinant, derived from the generator pairings.

        <X, det(z)> expands det(z); <X, det^-1(z)> is the inverse of <X, det(z)>
        because <X, det(z) det^-1(z)> = epsilon(X) = T_0 for group-like X.
        """
        if a.kind == "det":
            return self.pair_words(Word((X,)), det_expansion(a.spectral, self.params))
        return inverse(self.det_det_pair(X, GeneratorToken("det", a.spectral)))

    def base_pair(self, X: GeneratorToken, a: GeneratorToken) -> DiffOp:
        if X.is_L and a.is_L:
            return self.generator_pair(X, a)
        if X.is_L or a.is_L:
            return self.det_generator_pair(X, a)
        return self.det_det_pair(X, a)

    # -- recursion --------------------------------------------------------
    def pair_tokens(self, X: Sequence[GeneratorToken], a: Sequence[GeneratorToken]) -> DiffOp:
        return self._pair_tokens(tuple(X), tuple(a))

    def _pair_tokens_uncached(self, X: Tokens, a: Tokens) -> DiffOp:
        gx, gy = tokens_bigrade(X)
        ax, ay = tokens_bigrade(a)
        # X lies in E^cop_{gy, gx}; target grade (gy + ay, gx + ax) must be diagonal
        if gy + ay != gx + ax:
            return ZERO
        if not X:
            return counit_tokens(a)
        if not a:
            return counit_tokens(X)
        if len(X) == 1 and len(a) == 1:
            return self.base_pair(X[0], a[0])
        if len(X) >= 2:
            head, rest = X[:1], X[1:]
            terms = []
            for first, second in _split_E(a):
                rho = tokens_bigrade(first)[1]
                left = self.pair_tokens(head, first)
                if left.is_zero:
                    continue
                right = self.pair_tokens(rest, second)
                if right.is_zero:
                    continue
                terms.append(compose(compose(left, T(rho)), right))
            return sum_ops(terms)
        terms = []
        for x1, x2 in coproduct_cop(X[0]):
            rho = x1.bigrade[0]  # right grade in E^cop is the left E-grade
            left = self.pair_tokens((x1,), a[:1])
            if left.is_zero:
                continue
            right = self.pair_tokens((x2,), a[1:])
            if right.is_zero:
                continue
            terms.append(compose(compose(left, T(rho)), right))
        return sum_ops(terms)

    # -- words with moment maps and linear combinations -------------------
    def pair_word_word(self, X: Word, a: Word) -> DiffOp:
        core = self.pair_tokens(X.tokens, a.tokens)
        if core.is_zero:
            return ZERO
        c = X.coeff * a.coeff
        if c != 1:
            core = core.scale(c)
        left_ops, right_ops = [], []
        if X.right is not None:
            left_ops.append(mult(X.right))
        if a.left is not None:
            left_ops.append(mult(a.left))
        if X.left is not None:
            right_ops.append(mult(_shift(X.left, X.bigrade[0])))
        if a.right is not None:
            right_ops.append(mult(_shift(a.right, a.bigrade[1])))
        out = core
        for op in left_ops:
            out = compose(op, out)
        for op in right_ops:
            out = compose(out, op)
        return out

    def pair_words(self, X, a) -> DiffOp:
        """Pairing of words or lists of words (bilinear extension)."""
        Xs = [X] if isinstance(X, Word) else list(X)
        As = [a] if isinstance(a, Word) else list(a)
        return sum_ops([self.pair_word_word(x, y) for x in Xs for y in As])


def _shift(f: Coeff, a: int) -> Coeff:
    if a == 0:
        return f
    return lambda lam: f(lam + a)


def _split_E(a: Tokens):
    """All Sweedler terms (a(1), a(2)) of Delta(a_1 ... a_m) = prod Delta(a_i)."""
    splits = [((), ())]
    for t in a:
        splits = [(u + (x,), v + (y,)) for u, v in splits for x, y in coproduct_E(t)]
    return splits
