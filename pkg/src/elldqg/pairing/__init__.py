"""Pairing between the generator algebra (first slot) and its dual (second slot)."""
from .algebra import GeneratorToken, Word, alpha, beta, delta, det, detinv, gamma, word
from .closed_form import pair_matrix_matrix_closed
from .engine import Cobraiding
from .matrix import MatrixElementIndex, MatrixPairing, expand_matrix_element, pair_gen_matrix, t

__all__ = [
    "GeneratorToken", "Word", "alpha", "beta", "delta", "det", "detinv", "gamma", "word",
    "pair_matrix_matrix_closed", "Cobraiding",
    "MatrixElementIndex", "MatrixPairing", "expand_matrix_element", "pair_gen_matrix", "t",
]
