"""Verification checks run by the command-line front end.

Every check draws its own random sample points, evaluates both sides of an
identity and records the largest relative residual against a tolerance.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .difference_ops import DiffOp, T, compose, inverse, relative_residual
from .dynrep import basis_vector, act_generator, is_spherical, raw_generator_coefficient, rep_pairing_extract
from .ehs import balanced_check
from .elliptic_core import ModulusParams, theta
from .pairing.actions import operator_residual, verify_weak_action
from .pairing.algebra import GeneratorToken, Word, alpha, beta, delta, det, det_expansion, detinv, gamma
from .pairing.checks import verify_antipode_pairing, verify_star_pairing
from .pairing.closed_form import pair_matrix_matrix_closed, vparams_at
from .pairing.engine import Cobraiding
from .pairing.matrix import MatrixPairing, expand_matrix_element, pair_gen_matrix, t
from .rmatrix import elliptic_R, h_invariance_violation, qdybe_residual, rational_R
from .sampling import Sampler, check_rng

GENERATORS = (alpha, beta, gamma, delta)
ALL_TOKENS = GENERATORS + (detinv,)

DEFAULT_TOLERANCES = {
    "theta": 1e-12,
    "theta-addition": 1e-11,
    "qdybe-elliptic": 1e-10,
    "qdybe-rational": 1e-12,
    "gen-pairing": 1e-12,
    "det-pairing": 1e-10,
    "matrix-pairing": 1e-8,
    "matrix-pairing-zero": 1e-12,
    "balancing": 1e-10,
    "action": 1e-10,
    "antipode": 1e-10,
    "star": 1e-10,
    "singular": 1e-13,
}

DEFAULT_SAMPLES = {
    "theta": 200,
    "theta-addition": 100,
    "qdybe-elliptic": 50,
    "qdybe-rational": 50,
    "gen-pairing": 5,
    "det-pairing": 10,
    "matrix-pairing": 10,
    "action": 5,
    "antipode": 10,
    "star": 10,
    "singular": 5,
}


@dataclass
class CampaignConfig:
    p: float = 0.2
    q: float = 0.5
    seed: int = 0
    samples: int | None = None
    max_mn: int = 3
    tolerances: dict = field(default_factory=dict)
    sample_counts: dict = field(default_factory=dict)
    output: str | None = None

    def __post_init__(self) -> None:
        for name in ("p", "q"):
            v = float(getattr(self, name))
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {v}")
            setattr(self, name, v)
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.seed = int(self.seed)
        if self.samples is not None and int(self.samples) < 1:
            raise ValueError("samples must be at least 1")
        if int(self.max_mn) < 0:
            raise ValueError("max-mn must be nonnegative")
        self.max_mn = int(self.max_mn)
        for key, n in self.sample_counts.items():
            if key not in DEFAULT_SAMPLES:
                raise ValueError(f"unknown sample key {key!r}")
            if int(n) < 1:
                raise ValueError(f"samples for {key} must be at least 1")
        for key, tol in self.tolerances.items():
            if key not in DEFAULT_TOLERANCES:
                raise ValueError(f"unknown tolerance key {key!r}")
            if not float(tol) > 0:
                raise ValueError(f"tolerance for {key} must be positive")

    @property
    def params(self) -> ModulusParams:
        return ModulusParams(self.p, self.q)

    def tol(self, key: str) -> float:
        return float(self.tolerances.get(key, DEFAULT_TOLERANCES[key]))

    def n(self, key: str) -> int:
        if key in self.sample_counts:
            return int(self.sample_counts[key])
        return int(self.samples) if self.samples is not None else DEFAULT_SAMPLES[key]


@dataclass
class CheckResult:
    check: str
    anchor: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    wall_time: float
    resampled: int = 0
    draws: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        if not np.isfinite(self.max_residual):
            d["max_residual"] = str(self.max_residual)
        return d


class Tracker:
    """Accumulates residuals and sample counts for one check."""

    def __init__(self) -> None:
        self.worst = 0.0
        self.samples = 0

    def add(self, residual: float) -> None:
        r = float(residual)
        if not np.isfinite(r) or r > self.worst:
            self.worst = r if np.isfinite(r) else float("inf")
        self.samples += 1


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def theta_scale(z, p: float):
    """max(|theta(z)|, |theta(-|z|)|): the size of theta at this modulus.

    theta(-|z|) is a product of positive factors, so it measures the magnitude
    of the terms without the cancellation that occurs near a zero of theta.
    """
    z = np.asarray(z, dtype=complex)
    return np.maximum(np.abs(theta(z, p)), np.abs(theta(-np.abs(z), p)))


def check_theta(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    p = cfg.p
    zs = sampler.annulus(cfg.n("theta"))
    th = theta(zs, p)
    scale = theta_scale(zs, p)
    tr_vals = np.abs(theta(1 / zs, p) + th / zs) / scale
    qp_vals = np.abs(theta(p * zs, p) + th / zs) / scale
    for v in np.concatenate([tr_vals, qp_vals]):
        tr.add(v)


def addition_residual(x, y, z, w, p: float) -> float:
    th = lambda *a: np.prod([theta(v, p) for v in a])
    lhs = th(x * y, x / y, z * w, z / w)
    t1 = th(x * w, x / w, z * y, z / y)
    t2 = (z / y) * th(x * z, x / z, y * w, y / w)
    scale = max(abs(lhs), abs(t1), abs(t2))
    return float(abs(lhs - t1 - t2) / scale)


def check_theta_addition(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    for _ in range(cfg.n("theta-addition")):
        x, y, z, w = sampler.annulus(4)
        tr.add(addition_residual(x, y, z, w, cfg.p))


def check_qdybe_elliptic(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    params = cfg.params
    R = lambda lam, z: elliptic_R(lam, z, params)
    for _ in range(cfg.n("qdybe-elliptic")):
        lam, zs = sampler.point(3)
        tr.add(qdybe_residual(R, lam, *zs))
        tr.add(h_invariance_violation(R(lam, zs[0] / zs[1])))


def check_qdybe_rational(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    R = lambda lam, z: rational_R(lam, cfg.q)
    for _ in range(cfg.n("qdybe-rational")):
        lam, zs = sampler.point(3)
        tr.add(qdybe_residual(R, lam, *zs))
        tr.add(h_invariance_violation(R(lam, 1.0)))


def check_gen_pairing(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    params = cfg.params
    for _ in range(cfg.n("gen-pairing")):
        lam, (w, z) = sampler.point(2)
        lam_arr = np.array([lam])
        engine = Cobraiding(params)
        mp = MatrixPairing(params, engine)
        # N = 1: the matrix elements are the generators themselves
        for X in GENERATORS:
            for k, j in itertools.product((0, 1), repeat=2):
                (wd,) = expand_matrix_element(t(1, k, j, z), params)
                (tok,) = wd.tokens
                tr.add(operator_residual(pair_gen_matrix(X(w), t(1, k, j, z), params),
                                         engine.generator_pair(X(w), tok), lam_arr))
        # corner cases: <alpha, t^k_kk> = T_{-k-1}, <delta, t^k_00> = T_{k+1}
        for k in range(1, 5):
            for X, idx, shift in ((alpha(w), t(k, k, k, z), -k - 1), (delta(w), t(k, 0, 0, z), k + 1)):
                for op in (pair_gen_matrix(X, idx, params), mp.generator_matrix_from_R(X, idx)):
                    tr.add(operator_residual(op, T(shift), lam_arr))
        # the closed forms against the R-matrix pairing of the expanded element
        for N in range(cfg.max_mn + 1):
            for k, j in itertools.product(range(N + 1), repeat=2):
                for X in ALL_TOKENS:
                    idx = t(N, k, j, z)
                    tr.add(operator_residual(pair_gen_matrix(X(w), idx, params),
                                             mp.generator_matrix_from_R(X(w), idx), lam_arr))


def displayed_det_pairing(first: GeneratorToken, second: GeneratorToken, params: ModulusParams) -> DiffOp:
    """The diagonal determinant pairing formulas as displayed (zero off the diagonal)."""
    return Cobraiding(params).det_generator_pair(first, second)


def check_det_pairing(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    params = cfg.params
    q = cfg.q
    for _ in range(cfg.n("det-pairing")):
        lam, (w, z) = sampler.point(2)
        lam_arr = np.array([lam])
        engine = Cobraiding(params)
        for G in GENERATORS:
            # det in the second slot, expanded into generators
            derived = engine.pair_words(Word((G(w),)), det_expansion(z, params))
            tr.add(operator_residual(derived, displayed_det_pairing(G(w), det(z), params), lam_arr))
            derived = engine.pair_words(det_expansion(w, params), Word((G(z),)))
            tr.add(operator_residual(derived, displayed_det_pairing(det(w), G(z), params), lam_arr))
            # inverse determinant from <X, det det^-1> = epsilon(X)
            i = G(w).indices[0]
            if G(w).indices[1] == i:
                with_det = engine.pair_words(Word((G(w),)), det_expansion(z, params))
                inv = compose(inverse(compose(with_det, T(i))), T(-i))
                tr.add(operator_residual(inv, displayed_det_pairing(G(w), detinv(z), params), lam_arr))
                with_det = engine.pair_words(det_expansion(w, params), Word((G(z),)))
                inv = compose(inverse(compose(with_det, T(i))), T(-i))
                tr.add(operator_residual(inv, displayed_det_pairing(detinv(w), G(z), params), lam_arr))
            # <X, det(z) det^-1(z)> = epsilon(X)
            lhs = engine.pair_words(Word((G(w),)), Word((det(z), detinv(z))))
            eps = T(-i) if G(w).indices[1] == i else DiffOp(None, 0)
            tr.add(operator_residual(lhs, eps, lam_arr))
        x = w / z
        closed = q ** 2 * theta(x / q ** 2, cfg.p) / theta(q ** 2 * x, cfg.p)
        dd = engine.pair_words(Word((detinv(w),)), Word((detinv(z),)))
        tr.add(operator_residual(dd, DiffOp(lambda lam: closed + 0 * lam, 0), lam_arr))


def matrix_index_sets(max_mn: int):
    for M, N in itertools.product(range(max_mn + 1), repeat=2):
        for r, s, k, j in itertools.product(range(M + 1), range(M + 1), range(N + 1), range(N + 1)):
            yield M, r, s, N, k, j


def check_matrix_pairing(cfg: CampaignConfig, sampler: Sampler, tr: Tracker, zero_tr: Tracker | None = None,
                         balance_tr: Tracker | None = None) -> None:
    params = cfg.params
    for _ in range(cfg.n("matrix-pairing")):
        lam, (w, z) = sampler.point(2)
        mp = MatrixPairing(params)
        for M, r, s, N, k, j in matrix_index_sets(cfg.max_mn):
            sidx, tidx = t(M, r, s, w), t(N, k, j, z)
            shifted = np.array([lam + 2 * s - M])
            conv = mp.oracle(sidx, tidx)
            closed = pair_matrix_matrix_closed(sidx, tidx, params)
            rep = rep_pairing_extract(sidx, N, k, j, z, np.array([lam]), params)
            vals = [np.asarray(op(shifted)) if not op.is_zero else np.zeros(1) for op in (conv, closed)] + [rep]
            if s + j != r + k:
                if zero_tr is not None:
                    zero_tr.add(max(float(np.max(np.abs(v))) for v in vals))
                continue
            for op in (conv, closed):
                if not op.is_zero and op.shift != N + M - 2 * s - 2 * j:
                    tr.add(float("inf"))
            for a, b in itertools.combinations(vals, 2):
                tr.add(float(np.max(relative_residual(a, b))))
            if balance_tr is not None:
                balance_tr.add(balanced_check(vparams_at(M, r, s, N, k, j, lam, w / z, params)))


def check_action(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    params = cfg.params
    for _ in range(cfg.n("action")):
        lam, (w1, w2, z) = sampler.point(3)
        mp = MatrixPairing(params)
        for N in range(min(cfg.max_mn, 2) + 1):
            for k, j in itertools.product(range(N + 1), repeat=2):
                for Y, X in itertools.product(GENERATORS, GENERATORS):
                    for side in ("left", "right"):
                        tr.add(verify_weak_action(Y(w1), X(w2), t(N, k, j, z), mp, np.array([lam]), side))


def check_antipode(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    params = cfg.params
    for _ in range(cfg.n("antipode")):
        lam, (w, z) = sampler.point(2)
        engine = Cobraiding(params)
        for X, a in itertools.product(ALL_TOKENS, ALL_TOKENS):
            tr.add(verify_antipode_pairing(X(w), a(z), engine, np.array([lam])))


def check_star(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    params = cfg.params
    for _ in range(cfg.n("star")):
        lam, (w, z) = sampler.point(2, real=True, unimodular=True)
        engine = Cobraiding(params)
        for X, a in itertools.product(ALL_TOKENS, ALL_TOKENS):
            tr.add(verify_star_pairing(X(w), a(z), engine, np.array([lam])))


def check_singular(cfg: CampaignConfig, sampler: Sampler, tr: Tracker) -> None:
    params = cfg.params
    for _ in range(cfg.n("singular")):
        lam, (w, z) = sampler.point(2)
        lam_arr = np.array([lam])
        for N in range(1, 5):
            tr.add(float(np.max(np.abs(raw_generator_coefficient(beta(w), N, N, z, params)(lam_arr)))))
            tr.add(float(np.max(np.abs(raw_generator_coefficient(gamma(w), N, 0, z, params)(lam_arr)))))
            for X, k in ((beta(w), N), (gamma(w), 0)):
                v = act_generator(X, basis_vector(N, k, z), params)
                tr.add(max(float(np.max(np.abs(v.coefficient(i, lam_arr)))) for i in range(N + 1)))
        for N in (2, 4):
            tr.add(0.0 if is_spherical(basis_vector(N, N // 2, z)) else float("inf"))
        for N in (1, 3):
            tr.add(0.0 if not is_spherical(basis_vector(N, 0, z)) else float("inf"))


# ---------------------------------------------------------------------------
# registry and runner
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckSpec:
    id: str
    anchor: str
    run: Callable
    tol_key: str


CHECKS = {
    "theta": [
        CheckSpec("theta-inversion-quasiperiodicity", "theta(1/z) = theta(pz) = -theta(z)/z", check_theta, "theta"),
        CheckSpec("theta-addition", "theta addition formula", check_theta_addition, "theta-addition"),
    ],
    "qdybe": [
        CheckSpec("qdybe-elliptic", "dynamical Yang-Baxter equation, elliptic R", check_qdybe_elliptic, "qdybe-elliptic"),
        CheckSpec("qdybe-rational", "dynamical Yang-Baxter equation, rational R", check_qdybe_rational, "qdybe-rational"),
    ],
    "gen-pairing": [
        CheckSpec("gen-pairing", "generator pairing with matrix elements", check_gen_pairing, "gen-pairing"),
    ],
    "det-pairing": [
        CheckSpec("det-pairing", "pairings with det and det^-1", check_det_pairing, "det-pairing"),
    ],
    "matrix-pairing": [
        CheckSpec("matrix-pairing", "matrix element pairing: closed form, convolution, representation",
                  None, "matrix-pairing"),
    ],
    "action": [
        CheckSpec("weak-action", "<Y, X.a> = <YX, a> T_b and <Y, a.X> = T_a <XY, a>", check_action, "action"),
    ],
    "antipode": [
        CheckSpec("antipode-pairing", "<S_cop(X), a> = S_D(<X, S(a)>)", check_antipode, "antipode"),
    ],
    "star": [
        CheckSpec("star-pairing", "<X*, a> = T_-g (<X, S(a)*>)* T_-d", check_star, "star"),
    ],
    "singular": [
        CheckSpec("singular-spherical", "singular vectors v_0, v_N and spherical v_N/2", check_singular, "singular"),
    ],
}

SUBCOMMANDS = tuple(CHECKS) + ("all",)


def _result(spec_id: str, anchor: str, tr: Tracker, tol: float, t0: float, sampler: Sampler) -> CheckResult:
    return CheckResult(spec_id, anchor, tr.samples, tr.worst, tol, bool(tr.worst < tol),
                       time.perf_counter() - t0, sampler.resampled, sampler.draws)


def run_group(name: str, cfg: CampaignConfig) -> list[CheckResult]:
    results = []
    for spec in CHECKS[name]:
        sampler = Sampler(cfg.params, check_rng(cfg.seed, spec.id))
        t0 = time.perf_counter()
        if spec.id == "matrix-pairing":
            tr, ztr, btr = Tracker(), Tracker(), Tracker()
            check_matrix_pairing(cfg, sampler, tr, ztr, btr)
            sampler.check_budget()
            results.append(_result(spec.id, spec.anchor, tr, cfg.tol("matrix-pairing"), t0, sampler))
            results.append(_result("matrix-pairing-zero", "selection rule s + j != r + k gives zero",
                                   ztr, cfg.tol("matrix-pairing-zero"), t0, sampler))
            results.append(_result("balancing", "12V11 parameters are balanced", btr, cfg.tol("balancing"), t0, sampler))
            continue
        tr = Tracker()
        spec.run(cfg, sampler, tr)
        sampler.check_budget()
        results.append(_result(spec.id, spec.anchor, tr, cfg.tol(spec.tol_key), t0, sampler))
    return results


def run(subcommand: str, cfg: CampaignConfig) -> list[CheckResult]:
    names = list(CHECKS) if subcommand == "all" else [subcommand]
    out = []
    for name in names:
        out.extend(run_group(name, cfg))
    return out


def report(cfg: CampaignConfig, results: list[CheckResult]) -> dict:
    conf = asdict(cfg)
    conf["tolerances"] = {k: cfg.tol(k) for k in DEFAULT_TOLERANCES}
    return {
        "config": conf,
        "checks": [r.to_dict() for r in results],
        "status": "pass" if all(r.passed for r in results) else "fail",
    }
