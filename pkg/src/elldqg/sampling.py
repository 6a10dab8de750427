"""Random sample points for the verification campaigns, with pole avoidance.

Each check draws from its own generator seeded by (seed, crc32(check id)), so
results do not depend on which other checks run or in which order.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field

import numpy as np

from .elliptic_core import ModulusParams, theta

POLE_TOL = 1e-8
MAX_RESAMPLE_FRACTION = 0.5
SHIFT_RANGE = range(-8, 9)


class CampaignAbort(RuntimeError):
    """Too many draws landed near poles; the (p, q) choice is probably bad."""


def check_rng(seed: int, check_id: str) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(check_id.encode())]))


def is_generic(params: ModulusParams, lam: complex | None = None, ratios=(), tol: float = POLE_TOL) -> bool:
    """True when theta(q^{2c} (q^{2 lambda})^e x^m) stays away from zero.

    c runs over -8..8 and e, m over -1, 0, 1 (not both zero), for every
    spectral ratio x supplied. This covers all denominators met by the checks.
    """
    cs = np.array(SHIFT_RANGE, dtype=float)
    qc = params.q ** (2 * cs)
    lamq = None if lam is None else complex(params.qpow(complex(lam)))
    xs = [complex(x) for x in ratios] or [None]
    for x in xs:
        for e in (-1, 0, 1):
            if e and lamq is None:
                continue
            for m in (-1, 0, 1):
                if (e == 0 and m == 0) or (m and x is None):
                    continue
                base = (lamq ** e if e else 1.0) * (x ** m if m else 1.0)
                if np.min(np.abs(theta(qc * base, params.p))) < tol:
                    return False
    return True


@dataclass
class Sampler:
    params: ModulusParams
    rng: np.random.Generator
    draws: int = 0
    resampled: int = 0
    max_tries: int = 1000
    history: list = field(default_factory=list)

    def _accept(self, ok: bool) -> bool:
        self.draws += 1
        if not ok:
            self.resampled += 1
        return ok

    def check_budget(self) -> None:
        if self.draws >= 20 and self.resampled > MAX_RESAMPLE_FRACTION * self.draws:
            raise CampaignAbort(f"{self.resampled} of {self.draws} draws were resampled near poles")

    def _raw_lam(self, real: bool) -> complex:
        re = self.rng.uniform(0.1, 0.9)
        im = 0.0 if real else self.rng.uniform(-0.3, 0.3)
        return complex(re, im)

    def _raw_spectral(self, unimodular: bool) -> complex:
        phase = np.exp(1j * self.rng.uniform(0, 2 * np.pi))
        if unimodular:
            return complex(phase)
        return complex(np.exp(self.rng.uniform(-0.55, 0.55)) * phase)

    def point(self, n_spectral: int = 2, real: bool = False, unimodular: bool = False,
              with_lambda: bool = True) -> tuple[complex | None, tuple[complex, ...]]:
        """One generic (lambda, spectral parameters) draw.

        Spectral moduli lie in [e^-0.55, e^0.55], so every ratio has modulus in
        [1/3, 3]. Points too close to a theta zero are redrawn.
        """
        for _ in range(self.max_tries):
            lam = self._raw_lam(real) if with_lambda else None
            zs = tuple(self._raw_spectral(unimodular) for _ in range(n_spectral))
            ratios = [zs[a] / zs[b] for a in range(n_spectral) for b in range(a + 1, n_spectral)]
            if self._accept(is_generic(self.params, lam, ratios)):
                return lam, zs
            self.check_budget()
        raise CampaignAbort("could not find a generic sample point")

    def lambdas(self, n: int, real: bool = False) -> np.ndarray:
        out = []
        while len(out) < n:
            lam, _ = self.point(0, real=real)
            out.append(lam)
        return np.array(out, dtype=complex)

    def annulus(self, n: int) -> np.ndarray:
        """n points with sqrt(p) <= |z| < 1/sqrt(p), kept away from theta zeros."""
        r = np.sqrt(self.params.p)
        out = []
        while len(out) < n:
            z = complex(np.exp(self.rng.uniform(np.log(r), -np.log(r))) * np.exp(1j * self.rng.uniform(0, 2 * np.pi)))
            if self._accept(abs(theta(z, self.params.p)) >= POLE_TOL):
                out.append(z)
            self.check_budget()
        return np.array(out)

    @property
    def resample_fraction(self) -> float:
        return self.resampled / self.draws if self.draws else 0.0
