"""Difference operators f(lambda) T_s acting on meromorphic functions of lambda.

A :class:`DiffOp` is a single homogeneous term: a coefficient function and an
integer shift, with (T_s f)(lambda) = f(lambda + s). Coefficients are plain
callables that accept a scalar or a numpy array of lambda values. The zero
operator carries ``coeff=None``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

Coeff = Callable[[object], object]

ZERO_TOL = 1e-12


def const(c: complex) -> Coeff:
    c = complex(c)
    return lambda lam: c + 0.0 * np.asarray(lam)


def shifted(f: Coeff, a: int) -> Coeff:
    """lambda -> f(lambda + a)."""
    if a == 0:
        return f
    return lambda lam: f(lam + a)


def product(f: Coeff, g: Coeff) -> Coeff:
    return lambda lam: f(lam) * g(lam)


def reciprocal(f: Coeff) -> Coeff:
    return lambda lam: 1.0 / f(lam)


def conj_fn(f: Coeff) -> Coeff:
    """The bar operation: lambda -> conj(f(conj(lambda)))."""
    return lambda lam: np.conj(f(np.conj(lam)))


@dataclass(frozen=True)
class DiffOp:
    coeff: Coeff | None
    shift: int = 0

    @property
    def is_zero(self) -> bool:
        return self.coeff is None

    def __call__(self, lam):
        """Value of the coefficient at lambda (zero operator gives 0)."""
        if self.coeff is None:
            return 0.0 * np.asarray(lam, dtype=complex)
        return self.coeff(lam)

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        return compose(self, other)

    def __add__(self, other: "DiffOp") -> "DiffOp":
        if self.coeff is None:
            return other
        if other.coeff is None:
            return self
        if self.shift != other.shift:
            raise ValueError(f"cannot add operators with shifts {self.shift} and {other.shift}")
        f, g = self.coeff, other.coeff
        return DiffOp(lambda lam: f(lam) + g(lam), self.shift)

    def __neg__(self) -> "DiffOp":
        return self.scale(-1.0)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, c: complex) -> "DiffOp":
        if self.coeff is None:
            return self
        f = self.coeff
        return DiffOp(lambda lam: c * f(lam), self.shift)

    def __repr__(self) -> str:
        if self.coeff is None:
            return "DiffOp(0)"
        return f"DiffOp(f*T_{self.shift})"


ZERO = DiffOp(None, 0)
IDENTITY = DiffOp(const(1.0), 0)


def T(s: int) -> DiffOp:
    """The pure shift operator T_s."""
    return DiffOp(const(1.0), int(s))


def mult(f: Coeff) -> DiffOp:
    """Multiplication by f, i.e. f T_0."""
    return DiffOp(f, 0)


def compose(A: DiffOp, B: DiffOp) -> DiffOp:
    """(f T_a)(g T_b) = (lambda -> f(lambda) g(lambda + a)) T_{a+b}."""
    if A.coeff is None or B.coeff is None:
        return ZERO
    f, g, a = A.coeff, B.coeff, A.shift
    return DiffOp(lambda lam: f(lam) * g(lam + a), A.shift + B.shift)


def compose_all(ops: Sequence[DiffOp]) -> DiffOp:
    out = IDENTITY
    for op in ops:
        out = compose(out, op)
    return out


def apply_to_one(A: DiffOp) -> Coeff:
    """A applied to the constant function 1, which is just the coefficient."""
    if A.coeff is None:
        return const(0.0)
    return A.coeff


def antipode_D(A: DiffOp) -> DiffOp:
    """f T_a -> T_{-a} f = (lambda -> f(lambda - a)) T_{-a}."""
    if A.coeff is None:
        return ZERO
    return DiffOp(shifted(A.coeff, -A.shift), -A.shift)


def star_D(A: DiffOp) -> DiffOp:
    """f T_a -> (lambda -> conj(f(conj(lambda) - a))) T_{-a}; shifts are real."""
    if A.coeff is None:
        return ZERO
    f, a = A.coeff, A.shift
    return DiffOp(lambda lam: np.conj(f(np.conj(lam) - a)), -a)


def inverse(A: DiffOp) -> DiffOp:
    """(f T_a)^{-1} = T_{-a} f^{-1}."""
    if A.coeff is None:
        raise ZeroDivisionError("the zero operator has no inverse")
    f, a = A.coeff, A.shift
    return DiffOp(lambda lam: 1.0 / f(lam - a), -a)


@dataclass
class EqResult:
    equal: bool
    residual: float
    failed_sample: int | None = None

    def __bool__(self) -> bool:
        return self.equal


def _is_numerically_zero(vals: np.ndarray, scale: float) -> bool:
    return bool(np.all(np.abs(vals) < ZERO_TOL * max(scale, 1.0)))


def diffop_eq(A: DiffOp, B: DiffOp, lam_samples, tol: float = 1e-10, scale: float = 1.0) -> EqResult:
    """Compare two operators by sampling their coefficients.

    Operators agree when the shifts match and the largest relative difference
    of the coefficients over the samples is below ``tol``. Operators that are
    zero at every sample (below 1e-12 * scale) compare equal whatever their
    shift.
    """
    lam = np.atleast_1d(np.asarray(lam_samples, dtype=complex))
    a = np.broadcast_to(np.asarray(A(lam), dtype=complex), lam.shape)
    b = np.broadcast_to(np.asarray(B(lam), dtype=complex), lam.shape)
    a_zero = _is_numerically_zero(a, scale)
    b_zero = _is_numerically_zero(b, scale)
    if a_zero and b_zero:
        return EqResult(True, float(max(np.max(np.abs(a)), np.max(np.abs(b)))))
    if a_zero != b_zero:
        bad = int(np.argmax(np.abs(a - b)))
        return EqResult(False, float("inf"), bad)
    if A.shift != B.shift:
        return EqResult(False, float("inf"), None)
    rel = relative_residual(a, b)
    bad = int(np.argmax(rel))
    ok = bool(np.all(np.isfinite(rel))) and float(rel[bad]) < tol
    return EqResult(ok, float(rel[bad]), None if ok else bad)


def relative_residual(a, b) -> np.ndarray:
    """|a - b| / max(|a|, |b|) elementwise (0 where both vanish)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    den = np.maximum(np.abs(a), np.abs(b))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(den > 0, np.abs(a - b) / np.where(den > 0, den, 1.0), 0.0)
    return np.atleast_1d(out)
