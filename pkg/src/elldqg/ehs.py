"""Terminating very-well-poised elliptic hypergeometric series in base q^2.

    r+1V_r(a1; a6, ..., a_{r+1})
        = sum_n theta(a1 q^{4n})/theta(a1) * q^{2n}
                (a1, a6, ..., a_{r+1})_n / (q^2, q^2 a1/a6, ..., q^2 a1/a_{r+1})_n

Besides the numerical evaluator this module has an exact bookkeeping layer:
parameters of the form q^{2c} (q^{2 lambda})^e x^m with integer (c, e, m) are
kept as :class:`Monomial` values so that theta factors that are identically
equal (or vanish identically, theta(1) = 0) are recognised before any
floating-point evaluation.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .elliptic_core import ModulusParams, theta

TERMINATION_TOL = 1e-10
MAX_TERMINATION = 64
BALANCE_TOL = 1e-9


class NonTerminatingError(ValueError):
    pass


class SeriesPoleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class VParams:
    """Parameters of r+1V_r: a1 and the trailing list a6, ..., a_{r+1}."""

    a1: complex
    trailing: tuple
    params: ModulusParams = field(compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "a1", complex(self.a1))
        object.__setattr__(self, "trailing", tuple(complex(a) for a in self.trailing))

    @property
    def r(self) -> int:
        """The r of r+1V_r (the series has r+1 = len(trailing) + 5 parameters)."""
        return len(self.trailing) + 4


def termination_index(trailing: Sequence[complex], q: float) -> int | None:
    """Smallest m <= 64 with some a_i = q^{-2m} (relative tolerance 1e-10)."""
    for m in range(MAX_TERMINATION + 1):
        for a in trailing:
            if abs(complex(a) * q ** (2 * m) - 1) < TERMINATION_TOL:
                return m
    return None


def balanced_check(vp: VParams) -> float:
    """Relative deviation of (a6...a_{r+1})^2 q^4 from (a1 q^2)^{r-5}."""
    q2 = vp.params.q ** 2
    lhs = np.prod(np.asarray(vp.trailing)) ** 2 * q2 ** 2
    rhs = (vp.a1 * q2) ** (vp.r - 5)
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs)))


def v_term(vp: VParams, n: int) -> complex:
    """The n-th summand, evaluated factor by factor."""
    p, q2 = vp.params.p, vp.params.q ** 2
    a1 = vp.a1
    out = theta(a1 * q2 ** (2 * n), p) / theta(a1, p) * q2 ** n
    for i in range(n):
        num = theta(a1 * q2 ** i, p)
        den = theta(q2 ** (i + 1), p)
        for a in vp.trailing:
            num *= theta(a * q2 ** i, p)
            den *= theta(q2 * a1 / a * q2 ** i, p)
        if den == 0:
            raise SeriesPoleError(f"vanishing denominator factor at n={n}, i={i}")
        out *= num / den
    return complex(out)


def v_series(vp: VParams) -> complex:
    """Evaluate a terminating r+1V_r, stopping at the termination index."""
    m = termination_index(vp.trailing, vp.params.q)
    if m is None:
        raise NonTerminatingError("no trailing parameter equals q^{-2m} with m <= 64")
    total = 0.0 + 0j
    for n in range(m + 1):
        total += v_term(vp, n)
    return complex(total)


def first_vanishing_term(vp: VParams, limit: int = MAX_TERMINATION + 1) -> int | None:
    """First n whose summand is exactly zero (a numerator theta(1) has appeared)."""
    q2 = vp.params.q ** 2
    for n in range(1, limit + 1):
        i = n - 1
        for a in (vp.a1,) + vp.trailing:
            if abs(a * q2 ** i - 1) < TERMINATION_TOL:
                return n
    return None


# ---------------------------------------------------------------------------
# exact monomial bookkeeping
# ---------------------------------------------------------------------------

class Monomial(NamedTuple):
    """q^{2c} (q^{2 lambda})^e x^m."""

    c: int
    e: int = 0
    m: int = 0

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        return Monomial(self.c + other.c, self.e + other.e, self.m + other.m)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.c - other.c, self.e - other.e, self.m - other.m)

    def inv(self) -> "Monomial":
        return Monomial(-self.c, -self.e, -self.m)

    def qshift(self, n: int) -> "Monomial":
        """Multiply by q^{2n}."""
        return Monomial(self.c + n, self.e, self.m)

    @property
    def is_one(self) -> bool:
        return self.c == 0 and self.e == 0 and self.m == 0

    def value(self, lam, x, params: ModulusParams):
        out = params.q ** (2 * self.c) * params.qpow(self.e * np.asarray(lam, dtype=complex))
        if self.m:
            out = out * complex(x) ** self.m
        return out


ONE = Monomial(0, 0, 0)


def monomial_factorial(a: Monomial, n: int) -> tuple[list[Monomial], list[Monomial]]:
    """(a)_n as (numerator, denominator) theta-argument lists; negative n allowed."""
    if n >= 0:
        return [a.qshift(i) for i in range(n)], []
    return [], [a.qshift(n + i) for i in range(-n)]


@dataclass
class ThetaRatio:
    """scalar * prod(monos) * prod theta(num) / prod theta(den), all exact."""

    num: list = field(default_factory=list)
    den: list = field(default_factory=list)
    sign: int = 1
    monos: list = field(default_factory=list)

    def times(self, other: "ThetaRatio") -> "ThetaRatio":
        return ThetaRatio(self.num + other.num, self.den + other.den,
                          self.sign * other.sign, self.monos + other.monos)

    def add_factorial(self, a: Monomial, n: int, inverse: bool = False) -> None:
        num, den = monomial_factorial(a, n)
        if inverse:
            num, den = den, num
        self.num += num
        self.den += den

    def simplify(self) -> "ThetaRatio":
        """Cancel identical factors, then pair theta(u) with theta(1/u).

        theta(1/u)/theta(u) = -1/u, so an inverse pair becomes the monomial -1/u.
        """
        num, den = Counter(self.num), Counter(self.den)
        common = num & den
        num -= common
        den -= common
        sign, monos = self.sign, list(self.monos)
        for u in list(num.elements()):
            v = u.inv()
            if num[u] > 0 and den[v] > 0 and not u.is_one:
                num[u] -= 1
                den[v] -= 1
                sign = -sign
                monos.append(u)
        return ThetaRatio(list((+num).elements()), list((+den).elements()), sign, monos)

    @property
    def vanishes(self) -> bool:
        return any(u.is_one for u in self.num)

    @property
    def singular(self) -> bool:
        return any(u.is_one for u in self.den)

    def evaluate(self, lam, x, params: ModulusParams):
        lam = np.asarray(lam, dtype=complex)
        if self.vanishes:
            return np.zeros_like(lam)
        if self.singular:
            raise SeriesPoleError("a theta(1) factor remains in the denominator")
        out = self.sign * np.ones_like(lam)
        for u in self.monos:
            out = out * u.value(lam, x, params)
        for u in self.num:
            out = out * theta(u.value(lam, x, params), params.p)
        for u in self.den:
            out = out / theta(u.value(lam, x, params), params.p)
        return out


def symbolic_terms(a1: Monomial, trailing: Sequence[Monomial], nmax: int) -> list[ThetaRatio]:
    """The summands n = 0..nmax of the very-well-poised series as exact ratios."""
    q2 = Monomial(1)
    out = []
    for n in range(nmax + 1):
        tr = ThetaRatio(num=[a1.qshift(2 * n)], den=[a1], monos=[Monomial(n)])
        for a in (a1, *trailing):
            tr.add_factorial(a, n)
        tr.add_factorial(q2, n, inverse=True)
        for a in trailing:
            tr.add_factorial(q2 * a1 / a, n, inverse=True)
        out.append(tr)
    return out


def symbolic_termination(trailing: Sequence[Monomial]) -> int | None:
    """Smallest m with some trailing monomial identically equal to q^{-2m}."""
    cands = [-a.c for a in trailing if a.e == 0 and a.m == 0 and a.c <= 0]
    return min(cands) if cands else None
