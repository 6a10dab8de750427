"""Closed-form pairing of two matrix elements as a balanced 12V11 series.

<t^M_rs(w), t^N_kj(z)> = delta_{s+j, r+k} C * 12V11(a1; a6, ..., a12) T_{N+M-2s-2j}

Every theta argument occurring in C and in the series terms is a monomial
q^{2c} (q^{2 lambda})^e (w/z)^m, so each product C * (n-th term) is assembled
exactly and simplified before evaluation. This resolves the 0 * infinity
situations where C contains theta(1) and a series denominator does as well.
"""
from __future__ import annotations

import numpy as np

from ..difference_ops import ZERO, DiffOp
from ..elliptic_core import ModulusParams
from ..ehs import Monomial, ThetaRatio, VParams, symbolic_terms
from .matrix import MatrixElementIndex


def series_parameters(M: int, r: int, s: int, N: int, k: int, j: int) -> tuple[Monomial, list[Monomial]]:
    """a1 and (a6, ..., a12) of the 12V11 as monomials in q^2, q^{2 lambda} and x = w/z."""
    a1 = Monomial(M - 2 * s - r + 1, 1, 0)
    trailing = [
        Monomial(-r),
        Monomial(-s),
        Monomial(1 - s, 1),
        Monomial(M + N - k - s - r + 2, 1),
        Monomial(M - k - s - r + 1, 1),
        Monomial(k - s, 0, -1),
        Monomial(M - N + k - s + 1, 0, 1),
    ]
    return a1, trailing


def prefactor_ratio(M: int, r: int, s: int, N: int, k: int, j: int) -> ThetaRatio:
    """The elliptic shifted factorial part of C (sign and q-power kept apart)."""
    x = Monomial(0, 0, 1)
    lam = Monomial(0, 1, 0)
    C = ThetaRatio()
    u = M - r - s
    for a in (Monomial(u + 1), Monomial(k - s + 1), lam * x * Monomial(M - s - k - r + 2)):
        C.add_factorial(a, s)
    for a in (Monomial(1), lam * Monomial(M - 2 * s - r + 2), x * Monomial(u + 1)):
        C.add_factorial(a, s, inverse=True)
    for a in (Monomial(N - k + s - r + 1), lam.inv() * x * Monomial(-N + k + s)):
        C.add_factorial(a, r)
    for a in (lam.inv() * Monomial(-(M - 2 * s)), x * Monomial(M - r + 1)):
        C.add_factorial(a, r, inverse=True)
    for a in (lam.inv() * Monomial(k + s + r - M), x * Monomial(s - k + 1)):
        C.add_factorial(a, u)
    for a in (lam * Monomial(1 - s), x):
        C.add_factorial(a.qshift(1) if a == x else a, u, inverse=True)
    return C


def closed_form_terms(M: int, r: int, s: int, N: int, k: int, j: int) -> list[ThetaRatio]:
    """Simplified C * (n-th series term), n = 0 .. min(r, s)."""
    a1, trailing = series_parameters(M, r, s, N, k, j)
    C = prefactor_ratio(M, r, s, N, k, j)
    return [C.times(term).simplify() for term in symbolic_terms(a1, trailing, min(r, s))]


def vparams_at(M, r, s, N, k, j, lam: complex, x: complex, params: ModulusParams) -> VParams:
    """Numerical 12V11 parameters at a single point (for balancing checks)."""
    a1, trailing = series_parameters(M, r, s, N, k, j)
    return VParams(complex(a1.value(lam, x, params)),
                   tuple(complex(a.value(lam, x, params)) for a in trailing), params)


def sign_power_prefactor(u: int, s: int, lam, params: ModulusParams, as_printed: bool = False):
    """The factor (-1)^u q^(...) in front of C, with u = M - r - s.

    The default q^{2u(lambda - s + 1) + u(u - 1)} is the one that agrees with
    the pairing computed from the generators. ``as_printed=True`` gives
    q^{u(lambda - s + 1)} instead.
    """
    lam = np.asarray(lam, dtype=complex)
    lq = np.log(params.q)
    sign = -1.0 if u % 2 else 1.0
    if as_printed:
        return sign * np.exp(u * (lam - s + 1) * lq)
    return sign * np.exp((2 * u * (lam - s + 1) + u * (u - 1)) * lq)


def pair_matrix_matrix_closed(s_idx: MatrixElementIndex, t_idx: MatrixElementIndex, params: ModulusParams,
                              as_printed: bool = False) -> DiffOp:
    """<t^M_rs(w), t^N_kj(z)> from the closed form."""
    M, r, s, w = s_idx.N, s_idx.k, s_idx.j, s_idx.spectral
    N, k, j, z = t_idx.N, t_idx.k, t_idx.j, t_idx.spectral
    if s + j != r + k:
        return ZERO
    terms = [tr for tr in closed_form_terms(M, r, s, N, k, j) if not tr.vanishes]
    if not terms:
        return ZERO
    x = w / z
    u = M - r - s

    def coeff(lam):
        lam = np.asarray(lam, dtype=complex)
        pre = sign_power_prefactor(u, s, lam, params, as_printed)
        total = 0.0
        for tr in terms:
            total = total + tr.evaluate(lam, x, params)
        return pre * total

    return DiffOp(coeff, N + M - 2 * s - 2 * j)
