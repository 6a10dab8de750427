"""Antipode and star compatibility of the generator-level pairing."""
from __future__ import annotations

from ..difference_ops import DiffOp, T, antipode_D, compose, star_D
from .actions import operator_residual
from .algebra import GeneratorToken, Word, antipode, antipode_inverse, star
from .engine import Cobraiding


def antipode_sides(X: GeneratorToken, a: GeneratorToken, engine: Cobraiding) -> tuple[DiffOp, DiffOp]:
    """<S'(X), a> and S_D(<X, S(a)>), with S' = S^{-1} the antipode of E^cop."""
    params = engine.params
    lhs = engine.pair_words(antipode_inverse([Word((X,))], params), Word((a,)))
    rhs = antipode_D(engine.pair_words(Word((X,)), antipode([Word((a,))], params)))
    return lhs, rhs


def verify_antipode_pairing(X: GeneratorToken, a: GeneratorToken, engine: Cobraiding, lam) -> float:
    lhs, rhs = antipode_sides(X, a, engine)
    return operator_residual(lhs, rhs, lam)


def star_sides(X: GeneratorToken, a: GeneratorToken, engine: Cobraiding) -> tuple[DiffOp, DiffOp]:
    """<X*, a> and T_{-g} o (<X, S(a)*>)* o T_{-d} for a of bigrade (g, d)."""
    params = engine.params
    g, d = a.bigrade
    lhs = engine.pair_words(star([Word((X,))], params), Word((a,)))
    inner = engine.pair_words(Word((X,)), star(antipode([Word((a,))], params), params))
    rhs = compose(compose(T(-g), star_D(inner)), T(-d))
    return lhs, rhs


def verify_star_pairing(X: GeneratorToken, a: GeneratorToken, engine: Cobraiding, lam) -> float:
    lhs, rhs = star_sides(X, a, engine)
    return operator_residual(lhs, rhs, lam)
