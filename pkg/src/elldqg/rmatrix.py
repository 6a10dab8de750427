"""Elliptic and rational dynamical R-matrices on V (x) V and the QDYBE residual.

V = span{e_1, e_-1} with weights omega(+-1) = +-1. Matrices act on column
vectors in the ordered basis (e1e1, e1e-1, e-1e1, e-1e-1), so column ab of the
matrix holds the coefficients of R(e_a (x) e_b).
"""
from __future__ import annotations

import itertools
from typing import Callable

import numpy as np

from .elliptic_core import ModulusParams, theta

WEIGHTS = (1, -1)
BASIS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
_INDEX = {ab: i for i, ab in enumerate(BASIS)}

POLE_TOL = 1e-8


class PoleError(ValueError):
    """An evaluation point sits too close to a zero of a denominator theta factor."""


def basis_index(a: int, b: int) -> int:
    return _INDEX[(a, b)]


def abcd(lam, z, params: ModulusParams):
    """The four middle-block entries a, b, c, d of the elliptic R-matrix.

    Vectorised over ``lam`` and ``z`` (numpy broadcasting).
    """
    p, q2 = params.p, params.q ** 2
    lam = np.asarray(lam, dtype=complex)
    z = np.asarray(z, dtype=complex)
    u = params.qpow(lam + 1)  # q^{2(lambda+1)}
    a = theta(z, p) * theta(u * q2, p) / (theta(q2 * z, p) * theta(u, p))
    b = theta(q2, p) * theta(z / u, p) / (theta(q2 * z, p) * theta(1 / u, p))
    c = theta(q2, p) * theta(u * z, p) / (theta(q2 * z, p) * theta(u, p))
    d = theta(z, p) * theta(q2 / u, p) / (theta(q2 * z, p) * theta(1 / u, p))
    return a, b, c, d


def elliptic_pole_factors(lam, z, params: ModulusParams) -> dict[str, complex]:
    """Denominator theta factors of a, b, c, d at a point."""
    p, q2 = params.p, params.q ** 2
    u = complex(params.qpow(complex(lam) + 1))
    return {
        "theta(q^2 z)": complex(theta(q2 * complex(z), p)),
        "theta(q^{2(lambda+1)})": complex(theta(u, p)),
        "theta(q^{-2(lambda+1)})": complex(theta(1 / u, p)),
    }


def check_poles(factors: dict[str, complex], tol: float = POLE_TOL) -> None:
    for name, val in factors.items():
        if abs(val) < tol:
            raise PoleError(f"denominator factor {name} = {val:.3e} is below {tol:g}")


def elliptic_R(lam, z, params: ModulusParams, check: bool = True) -> np.ndarray:
    """4x4 elliptic dynamical R-matrix at a single point (lam, z)."""
    if check:
        check_poles(elliptic_pole_factors(lam, z, params))
    a, b, c, d = (complex(x) for x in abcd(lam, z, params))
    R = np.eye(4, dtype=complex)
    R[1, 1], R[1, 2], R[2, 1], R[2, 2] = a, b, c, d
    return R


def rational_R(lam, q: float, z=None, last_corner: float | None = None) -> np.ndarray:
    """4x4 rational dynamical R-matrix; ``z`` is accepted and ignored.

    Both corner entries equal q by default. Only with that choice does the
    matrix solve the dynamical Yang-Baxter equation; pass ``last_corner=1.0``
    to get the variant with a unit lower-right corner.
    """
    u = q ** (2 * (complex(lam) + 1))
    if abs(u - 1) < 1e-12:
        raise PoleError(f"q^(2(lambda+1)) = 1 at lambda = {lam!r}")
    R = np.zeros((4, 4), dtype=complex)
    R[0, 0] = q
    R[1, 1] = 1.0
    R[1, 2] = (1 / q - q) / (u - 1)
    R[2, 1] = (1 / q - q) / (1 / u - 1)
    R[2, 2] = (u - q ** 2) * (u - q ** -2) / (u - 1) ** 2
    R[3, 3] = q if last_corner is None else last_corner
    return R


def phi12(lam, q: float) -> complex:
    """Scalar 2-form entering the gauge relating the rational and elliptic R-matrices.

    Recorded for reference only; the limit transition itself is not computed.
    """
    u = q ** (2 * (complex(lam) + 1))
    return 1.0 / (1.0 - u)


def entry(R: np.ndarray, a: int, b: int, x: int, y: int) -> complex:
    """R^{ab}_{xy}: coefficient of e_x (x) e_y in R(e_a (x) e_b)."""
    return complex(R[_INDEX[(x, y)], _INDEX[(a, b)]])


def h_invariance_violation(R: np.ndarray) -> float:
    """Largest |R^{ab}_{xy}| over entries that break weight conservation."""
    worst = 0.0
    for (a, b), (x, y) in itertools.product(BASIS, BASIS):
        if a + b != x + y:
            worst = max(worst, abs(entry(R, a, b, x, y)))
    return worst


RFun = Callable[[complex, complex], np.ndarray]

_B3 = list(itertools.product(WEIGHTS, repeat=3))
_I3 = {t: i for i, t in enumerate(_B3)}


def _leg_operator(Rfun: RFun, lam, z, legs: tuple[int, int], shift_leg: int | None) -> np.ndarray:
    """R acting on two legs of V(x)V(x)V, with lambda shifted by -omega(shift_leg)."""
    cache: dict[int, np.ndarray] = {}
    out = np.zeros((8, 8), dtype=complex)
    i, j = legs
    for col, t in enumerate(_B3):
        mu = t[shift_leg] if shift_leg is not None else 0
        if mu not in cache:
            cache[mu] = np.asarray(Rfun(lam - mu, z), dtype=complex)
        R = cache[mu]
        src = _INDEX[(t[i], t[j])]
        for (x, y), row2 in _INDEX.items():
            c = R[row2, src]
            if c == 0:
                continue
            s = list(t)
            s[i], s[j] = x, y
            out[_I3[tuple(s)], col] += c
    return out


def qdybe_sides(Rfun: RFun, lam, z1, z2, z3) -> tuple[np.ndarray, np.ndarray]:
    z12, z13, z23 = z1 / z2, z1 / z3, z2 / z3
    lhs = (_leg_operator(Rfun, lam, z12, (0, 1), 2)
           @ _leg_operator(Rfun, lam, z13, (0, 2), None)
           @ _leg_operator(Rfun, lam, z23, (1, 2), 0))
    rhs = (_leg_operator(Rfun, lam, z23, (1, 2), None)
           @ _leg_operator(Rfun, lam, z13, (0, 2), 1)
           @ _leg_operator(Rfun, lam, z12, (0, 1), None))
    return lhs, rhs


def qdybe_residual(Rfun: RFun, lam, z1, z2, z3) -> float:
    """max|LHS - RHS| / max|LHS| of the quantum dynamical Yang-Baxter equation."""
    lhs, rhs = qdybe_sides(Rfun, lam, z1, z2, z3)
    return float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs)))
