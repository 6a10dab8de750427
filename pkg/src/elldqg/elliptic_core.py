"""Theta functions, infinite products and elliptic shifted factorials.

Everything here works on complex scalars or on numpy arrays (elementwise),
so coefficient functions built on top of it can be evaluated on a whole
batch of sample points at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

TRUNCATION_EPS_DIGITS = 17
MAX_TRUNCATION = 2000


def truncation_length(p: float) -> int:
    """Number of factors L kept in (a; p)_inf, chosen so that p**L < 1e-17."""
    if not 0.0 <= p < 1.0:
        raise ValueError(f"nome p must lie in [0, 1), got {p!r}")
    if p == 0.0:
        return 1
    n = max(1, math.ceil(TRUNCATION_EPS_DIGITS / -math.log10(p)))
    if p ** n >= 10.0 ** -TRUNCATION_EPS_DIGITS:  # exact boundary, e.g. p = 0.1
        n += 1
    return min(MAX_TRUNCATION, n)


@lru_cache(maxsize=64)
def _powers(p: float, n: int) -> np.ndarray:
    out = p ** np.arange(n, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class ModulusParams:
    """The elliptic nome ``p`` and the deformation parameter ``q``, both in (0, 1)."""

    p: float
    q: float

    def __post_init__(self) -> None:
        for name in ("p", "q"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not 0.0 < float(v) < 1.0:
                raise ValueError(f"{name} must lie in the open interval (0, 1), got {v!r}")
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "q", float(self.q))

    @property
    def truncation(self) -> int:
        return truncation_length(self.p)

    def qpow(self, e) -> complex | np.ndarray:
        """q**(2*e) for integer or complex (array) e."""
        if isinstance(e, (int, np.integer)):
            return self.q ** (2 * int(e))
        return np.exp(2.0 * np.asarray(e, dtype=complex) * math.log(self.q))

    def theta(self, *args):
        return theta_multi(args, self.p)


def _scalar_out(x: np.ndarray, like) -> complex | np.ndarray:
    if np.ndim(like) == 0 and np.ndim(x) == 0:
        return complex(x)
    return x


def qpoch_inf(a, p: float, length: int | None = None):
    """(a; p)_inf = prod_{i>=0} (1 - a p^i), truncated at ``length`` factors."""
    n = truncation_length(p) if length is None else length
    arr = np.asarray(a, dtype=complex)
    out = np.prod(1.0 - arr[..., None] * _powers(p, n), axis=-1)
    return _scalar_out(out, a)


def _theta_reduced(u: np.ndarray, p: float, n: int) -> np.ndarray:
    pw = _powers(p, n + 1)
    return np.prod((1.0 - u[..., None] * pw[:n]) * (1.0 - pw[1:] / u[..., None]), axis=-1)


def theta(z, p: float, length: int | None = None):
    """Normalised theta function theta(z) = (z, p/z; p)_inf.

    The argument is first moved into the annulus sqrt(p) <= |z| < 1/sqrt(p)
    with theta(p^m u) = (-1)^m u^(-m) p^(-m(m-1)/2) theta(u); the product is
    only evaluated there.
    """
    zz = np.asarray(z, dtype=complex)
    if np.any(zz == 0):
        raise ValueError("theta(z) is undefined at z = 0")
    n = truncation_length(p) if length is None else length
    if p == 0.0:
        return _scalar_out(1.0 - zz, z)
    logp = math.log(p)
    m = np.ceil(np.log(np.abs(zz)) / logp - 0.5)
    u = zz * np.power(p, -m)
    pref = np.where(m == 0, 1.0 + 0j, (-1.0) ** m * u ** (-m) * np.power(p, -m * (m - 1) / 2))
    out = pref * _theta_reduced(u, p, n)
    return _scalar_out(out, z)


def theta_product_reference(z, p: float, length: int = 500) -> complex:
    """Plain truncated product (z; p)_L (p/z; p)_L with no argument reduction."""
    z = complex(z)
    i = np.arange(length)
    return complex(np.prod((1 - z * p ** i) * (1 - p ** (i + 1) / z)))


def theta_multi(z_list: Sequence, p: float):
    """theta(a_1, ..., a_r): product of theta over the list."""
    out = 1.0 + 0j
    for z in z_list:
        out = out * theta(z, p)
    return out


def ell_shifted_factorial(a, n: int, params: ModulusParams):
    """Elliptic shifted factorial (a)_n = prod_{i<n} theta(a q^{2i}).

    Negative ``n`` follows the usual convention (a)_{-n} = 1 / (a q^{-2n})_n.
    """
    if n < 0:
        return 1.0 / ell_shifted_factorial(a * params.q ** (2 * n), -n, params)
    out = 1.0 + 0j
    for i in range(n):
        out = out * theta(a * params.q ** (2 * i), params.p)
    return out


def ell_shifted_factorial_multi(a_list: Sequence, n: int, params: ModulusParams):
    out = 1.0 + 0j
    for a in a_list:
        out = out * ell_shifted_factorial(a, n, params)
    return out


def ell_binomial(k: int, l: int, params: ModulusParams) -> complex:
    """Elliptic binomial coefficient [k, l]; zero outside 0 <= l <= k."""
    if l < 0 or l > k:
        return 0.0 + 0j
    q, p = params.q, params.p
    out = 1.0 + 0j
    for i in range(1, l + 1):
        out *= theta(q ** (2 * (k - l + i)), p) / theta(q ** (2 * i), p)
    return complex(out)
