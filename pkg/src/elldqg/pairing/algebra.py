"""Generators, words and the structure maps of the elliptic U(2) algebra.

A :class:`Word` is c * mu_l(f) mu_r(g) * X_1 X_2 ... X_n with the X_i generator
tokens, all in the product order of the algebra E. Linear combinations are
plain lists of words. Left and right moment maps commute with each other and
are moved past a homogeneous element a of bigrade (x, y) by

    a mu_l(f) = mu_l(T_{-x} f) a,      a mu_r(f) = mu_r(T_{-y} f) a.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from ..difference_ops import Coeff, conj_fn, product, shifted
from ..elliptic_core import ModulusParams, theta

L_INDEX = {"alpha": (1, 1), "beta": (1, -1), "gamma": (-1, 1), "delta": (-1, -1)}
INDEX_L = {v: k for k, v in L_INDEX.items()}
GROUPLIKE = ("det", "detinv")
KINDS = tuple(L_INDEX) + GROUPLIKE
SYMBOL = {"alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ", "det": "det", "detinv": "det⁻¹"}


@dataclass(frozen=True)
class GeneratorToken:
    kind: str
    spectral: complex

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        object.__setattr__(self, "spectral", complex(self.spectral))

    @property
    def is_L(self) -> bool:
        return self.kind in L_INDEX

    @property
    def indices(self) -> tuple[int, int]:
        return L_INDEX[self.kind]

    @property
    def bigrade(self) -> tuple[int, int]:
        """Bigrade in E: L_ij has (omega(i), omega(j)); det and det^-1 have (0, 0)."""
        return L_INDEX.get(self.kind, (0, 0))

    def with_spectral(self, z) -> "GeneratorToken":
        return GeneratorToken(self.kind, z)

    def __repr__(self) -> str:
        return f"{SYMBOL[self.kind]}({self.spectral:.4g})"


def L(i: int, j: int, z) -> GeneratorToken:
    return GeneratorToken(INDEX_L[(i, j)], z)


def alpha(z) -> GeneratorToken:
    return GeneratorToken("alpha", z)


def beta(z) -> GeneratorToken:
    return GeneratorToken("beta", z)


def gamma(z) -> GeneratorToken:
    return GeneratorToken("gamma", z)


def delta(z) -> GeneratorToken:
    return GeneratorToken("delta", z)


def det(z) -> GeneratorToken:
    return GeneratorToken("det", z)


def detinv(z) -> GeneratorToken:
    return GeneratorToken("detinv", z)


def tokens_bigrade(tokens: Iterable[GeneratorToken]) -> tuple[int, int]:
    x = y = 0
    for t in tokens:
        a, b = t.bigrade
        x += a
        y += b
    return x, y


@dataclass(frozen=True)
class Word:
    """coeff * mu_l(left) mu_r(right) * tokens (moment maps may be None = 1)."""

    tokens: tuple[GeneratorToken, ...] = ()
    coeff: complex = 1.0
    left: Coeff | None = field(default=None, compare=False)
    right: Coeff | None = field(default=None, compare=False)

    @property
    def bigrade(self) -> tuple[int, int]:
        return tokens_bigrade(self.tokens)

    @property
    def prefactor_right(self) -> Coeff | None:
        return self.right

    def __repr__(self) -> str:
        pre = []
        if self.coeff != 1:
            pre.append(f"{self.coeff:.4g}")
        if self.left is not None:
            pre.append("μl(f)")
        if self.right is not None:
            pre.append("μr(g)")
        return "·".join(pre + [repr(t) for t in self.tokens]) or "1"


Element = list  # list[Word]


def word(*tokens: GeneratorToken, coeff: complex = 1.0, left=None, right=None) -> Word:
    return Word(tuple(tokens), complex(coeff), left, right)


def _mul_opt(f: Coeff | None, g: Coeff | None) -> Coeff | None:
    if f is None:
        return g
    if g is None:
        return f
    return product(f, g)


def _shift_opt(f: Coeff | None, a: int) -> Coeff | None:
    return None if f is None else shifted(f, a)


def word_product(u: Word, v: Word) -> Word:
    """u * v with v's moment maps moved to the front past u's tokens."""
    x, y = u.bigrade
    return Word(
        u.tokens + v.tokens,
        u.coeff * v.coeff,
        _mul_opt(u.left, _shift_opt(v.left, -x)),
        _mul_opt(u.right, _shift_opt(v.right, -y)),
    )


def product_of(*elements: Sequence[Word]) -> list[Word]:
    out = [Word()]
    for el in elements:
        out = [word_product(u, v) for u in out for v in el]
    return out


def scale(el: Sequence[Word], c: complex) -> list[Word]:
    return [replace(w, coeff=w.coeff * c) for w in el]


def F_function(params: ModulusParams) -> Coeff:
    """F(lambda) = q^lambda theta(q^{-2(lambda+1)})."""
    lq = np.log(params.q)
    p = params.p
    return lambda lam: np.exp(np.asarray(lam, dtype=complex) * lq) * theta(params.qpow(-np.asarray(lam, dtype=complex) - 1), p)


def F_inverse(params: ModulusParams) -> Coeff:
    F = F_function(params)
    return lambda lam: 1.0 / F(lam)


def det_expansion(z, params: ModulusParams) -> list[Word]:
    """det(z) = mu_r(F) mu_l(F^-1) [alpha(z) delta(q^2 z) - gamma(z) beta(q^2 z)]."""
    q2 = params.q ** 2
    F, Fi = F_function(params), F_inverse(params)
    return [
        Word((alpha(z), delta(q2 * z)), 1.0, Fi, F),
        Word((gamma(z), beta(q2 * z)), -1.0, Fi, F),
    ]


_ANTIPODE_IMAGE = {"alpha": ("delta", 1.0), "beta": ("beta", -1.0), "gamma": ("gamma", -1.0), "delta": ("alpha", 1.0)}


def antipode_token(t: GeneratorToken, params: ModulusParams) -> list[Word]:
    """The antipode of E on a single generator."""
    if t.kind == "detinv":
        return [Word((det(t.spectral),))]
    if t.kind == "det":
        return [Word((detinv(t.spectral),))]
    kind, sign = _ANTIPODE_IMAGE[t.kind]
    zz = t.spectral / params.q ** 2
    return [Word((detinv(zz), GeneratorToken(kind, zz)), sign, F_inverse(params), F_function(params))]


def antipode_word(w: Word, params: ModulusParams) -> list[Word]:
    """S(c mu_l(f) mu_r(g) X_1...X_n) = c S(X_n)...S(X_1) mu_l(g) mu_r(f)."""
    out = [Word()]
    for t in reversed(w.tokens):
        out = [word_product(u, v) for u in out for v in antipode_token(t, params)]
    tail = Word((), w.coeff, w.right, w.left)
    return [word_product(u, tail) for u in out]


def antipode(el: Sequence[Word], params: ModulusParams) -> list[Word]:
    return [v for w in el for v in antipode_word(w, params)]


def star_token(t: GeneratorToken, params: ModulusParams) -> list[Word]:
    zb = 1.0 / np.conj(t.spectral)
    if t.kind == "alpha":
        return [Word((delta(zb),))]
    if t.kind == "beta":
        return [Word((gamma(zb),), -1.0)]
    if t.kind == "gamma":
        return [Word((beta(zb),), -1.0)]
    if t.kind == "delta":
        return [Word((alpha(zb),))]
    if t.kind == "detinv":
        return [Word((detinv(zb / params.q ** 2),))]
    # det is the inverse of det^-1, so det(z)* = det(q^-2 / conj z)
    return [Word((det(zb / params.q ** 2),))]


def star_word(w: Word, params: ModulusParams) -> list[Word]:
    """Antilinear, antimultiplicative; mu_l(f)* = mu_l(fbar), mu_r(f)* = mu_r(fbar)."""
    out = [Word()]
    for t in reversed(w.tokens):
        out = [word_product(u, v) for u in out for v in star_token(t, params)]
    tail = Word(
        (),
        complex(np.conj(w.coeff)),
        None if w.left is None else conj_fn(w.left),
        None if w.right is None else conj_fn(w.right),
    )
    return [word_product(u, tail) for u in out]


def star(el: Sequence[Word], params: ModulusParams) -> list[Word]:
    return [v for w in el for v in star_word(w, params)]


def coproduct_E(t: GeneratorToken) -> list[tuple[GeneratorToken, GeneratorToken]]:
    """Delta(L_ab) = sum_x L_ax (x) L_xb; det and det^-1 are group-like."""
    if not t.is_L:
        return [(t, t)]
    a, b = t.indices
    return [(L(a, x, t.spectral), L(x, b, t.spectral)) for x in (1, -1)]


def coproduct_cop(t: GeneratorToken) -> list[tuple[GeneratorToken, GeneratorToken]]:
    """Coproduct of the co-opposite algebra: the flip of coproduct_E."""
    return [(v, u) for u, v in coproduct_E(t)]


_ANTIPODE_PREIMAGE = {v[0]: (k, v[1]) for k, v in _ANTIPODE_IMAGE.items()}


def antipode_inverse_token(t: GeneratorToken, params: ModulusParams) -> list[Word]:
    """S^{-1} on a generator: S^{-1}(X(z)) = +-Y(q^2 z) mu_l(F^-1) mu_r(F) det^-1(z)."""
    if t.kind == "detinv":
        return [Word((det(t.spectral),))]
    if t.kind == "det":
        return [Word((detinv(t.spectral),))]
    kind, sign = _ANTIPODE_PREIMAGE[t.kind]
    head = Word((GeneratorToken(kind, params.q ** 2 * t.spectral),), sign)
    tail = Word((detinv(t.spectral),), 1.0, F_inverse(params), F_function(params))
    return [word_product(head, tail)]


def antipode_inverse_word(w: Word, params: ModulusParams) -> list[Word]:
    out = [Word()]
    for t in reversed(w.tokens):
        out = [word_product(u, v) for u in out for v in antipode_inverse_token(t, params)]
    tail = Word((), w.coeff, w.right, w.left)
    return [word_product(u, tail) for u in out]


def antipode_inverse(el: Sequence[Word], params: ModulusParams) -> list[Word]:
    return [v for w in el for v in antipode_inverse_word(w, params)]
