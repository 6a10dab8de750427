"""Left and right actions of E^cop on matrix elements, and the weak-action identity.

For X of bigrade (a, b) in E^cop (that is, bigrade (b, a) in E),

    X . t_kj = sum_p mu_r(<X, t_pj> T_b 1) t_kp
    t_kj . X = sum_p mu_l(T_a <X, t_kp> 1) t_pj

using Delta(t_kj) = sum_p t_kp (x) t_pj.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..difference_ops import ZERO, Coeff, DiffOp, T, compose, mult, relative_residual
from .algebra import GeneratorToken, Word
from .engine import sum_ops
from .matrix import MatrixElementIndex, MatrixPairing


def cop_bigrade(X: GeneratorToken) -> tuple[int, int]:
    """Bigrade of a generator in the co-opposite algebra (E-bigrade swapped)."""
    x, y = X.bigrade
    return y, x


@dataclass(frozen=True)
class ComboTerm:
    """mu_l(left) mu_r(right) t^N_kj(z)."""

    k: int
    j: int
    left: Coeff | None = field(default=None, compare=False)
    right: Coeff | None = field(default=None, compare=False)


@dataclass(frozen=True)
class MatrixElementCombo:
    N: int
    z: complex
    terms: tuple = ()

    def index(self, term: ComboTerm) -> MatrixElementIndex:
        return MatrixElementIndex(self.N, term.k, term.j, self.z)


def _coeff_of(op: DiffOp, shift: int = 0) -> Coeff:
    f = op.coeff
    if shift == 0:
        return f
    return lambda lam: f(lam + shift)


def act_left(X: GeneratorToken, idx: MatrixElementIndex, mp: MatrixPairing) -> MatrixElementCombo:
    """X . t^N_kj(z)."""
    terms = []
    for p in range(idx.N + 1):
        op = mp.pair_word_matrix(Word((X,)), idx.with_indices(p, idx.j))
        if op.is_zero:
            continue
        terms.append(ComboTerm(idx.k, p, None, _coeff_of(op)))
    return MatrixElementCombo(idx.N, idx.spectral, tuple(terms))


def act_right(idx: MatrixElementIndex, X: GeneratorToken, mp: MatrixPairing) -> MatrixElementCombo:
    """t^N_kj(z) . X."""
    a = cop_bigrade(X)[0]
    terms = []
    for p in range(idx.N + 1):
        op = mp.pair_word_matrix(Word((X,)), idx.with_indices(idx.k, p))
        if op.is_zero:
            continue
        terms.append(ComboTerm(p, idx.j, _coeff_of(op, a), None))
    return MatrixElementCombo(idx.N, idx.spectral, tuple(terms))


def identity_combo(idx: MatrixElementIndex) -> MatrixElementCombo:
    return MatrixElementCombo(idx.N, idx.spectral, (ComboTerm(idx.k, idx.j),))


def pair_with_combo(Y: Word, combo: MatrixElementCombo, mp: MatrixPairing) -> DiffOp:
    """<Y, sum mu_l(f) mu_r(g) t_kj> = sum f o <Y, t_kj> o (T_{2j-N} g)."""
    ops = []
    for term in combo.terms:
        idx = combo.index(term)
        op = mp.pair_word_matrix(Y, idx)
        if op.is_zero:
            continue
        if term.left is not None:
            op = compose(mult(term.left), op)
        if term.right is not None:
            op = compose(op, mult(_coeff_of(DiffOp(term.right, 0), 2 * term.j - combo.N)))
        ops.append(op)
    return sum_ops(ops)


def weak_action_sides(Y: GeneratorToken, X: GeneratorToken, idx: MatrixElementIndex, mp: MatrixPairing,
                      side: str = "left") -> tuple[DiffOp, DiffOp]:
    """Both sides of <Y, X.a> = <YX, a> o T_b (side='left') or <Y, a.X> = T_a o <XY, a>."""
    a, b = cop_bigrade(X)
    if side == "left":
        lhs = pair_with_combo(Word((Y,)), act_left(X, idx, mp), mp)
        rhs = mp.pair_word_matrix(Word((Y, X)), idx)
        rhs = ZERO if rhs.is_zero else compose(rhs, T(b))
    else:
        lhs = pair_with_combo(Word((Y,)), act_right(idx, X, mp), mp)
        rhs = mp.pair_word_matrix(Word((X, Y)), idx)
        rhs = ZERO if rhs.is_zero else compose(T(a), rhs)
    return lhs, rhs


def operator_residual(A: DiffOp, B: DiffOp, lam, scale: float = 1.0) -> float:
    """Sampled relative difference of two operators (inf on a shift mismatch)."""
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    if A.is_zero and B.is_zero:
        return 0.0
    a = np.broadcast_to(A(lam), lam.shape)
    b = np.broadcast_to(B(lam), lam.shape)
    tiny = 1e-12 * max(scale, 1.0)
    if np.all(np.abs(a) < tiny) and np.all(np.abs(b) < tiny):
        return 0.0
    if not A.is_zero and not B.is_zero and A.shift != B.shift:
        return float("inf")
    return float(np.max(relative_residual(a, b)))


def verify_weak_action(Y: GeneratorToken, X: GeneratorToken, idx: MatrixElementIndex, mp: MatrixPairing,
                       lam, side: str = "left") -> float:
    lhs, rhs = weak_action_sides(Y, X, idx, mp, side)
    return operator_residual(lhs, rhs, lam)
