"""Emulation of the photonic state preparation and its imperfections.

Covers the source/beam-splitter imbalance of the prepared state, the
attenuation-to-amplitude mapping, Werner-type white-noise mixing with a
linear p(beta) model, and Poissonian coincidence-count simulation with
first-order error propagation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import (
    DEFAULT_TOLS,
    Tolerances,
    outer,
    require_density,
    require_state,
    tensor,
)
from .correlations import measurement_observable

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SourceParams:
    """Emission-cone and path probabilities of the photon-pair source.

    eta_hh + eta_vv = 1 (cone imbalance), eta_t + eta_r = 1 (path
    imbalance); only ratios enter the prepared state and the attenuation
    formula.
    """

    eta_hh: float
    eta_vv: float
    eta_t: float
    eta_r: float

    def __post_init__(self):
        for name in ("eta_hh", "eta_vv", "eta_t", "eta_r"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise DomainError(f"{name} must lie in (0, 1), got {v}")
        if abs(self.eta_hh + self.eta_vv - 1.0) > 1e-12:
            raise DomainError("eta_hh + eta_vv must equal 1")
        if abs(self.eta_t + self.eta_r - 1.0) > 1e-12:
            raise DomainError("eta_t + eta_r must equal 1")

    @classmethod
    def balanced(cls) -> "SourceParams":
        return cls(0.5, 0.5, 0.5, 0.5)


# measured imbalance of the simulated source
DEFAULT_SOURCE = SourceParams(eta_hh=0.58, eta_vv=0.42, eta_t=0.66, eta_r=0.34)


@dataclass(frozen=True)
class NoiseModel:
    """Linear signal-mixing model p(beta) = slope * beta + intercept."""

    slope: float = 0.128
    intercept: float = 0.927


DEFAULT_NOISE = NoiseModel()


@dataclass(frozen=True)
class CountRecord:
    """Coincidence counts for the 8 joint outcomes of one setting triple.

    Outcome index bits follow the site order (most significant bit = site
    1), bit 0 meaning the +1 outcome.
    """

    setting: str
    counts: np.ndarray
    total: float

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=float)
        if counts.shape != (8,) or np.any(counts < 0.0):
            raise DomainError("counts must be 8 non-negative values")
        object.__setattr__(self, "counts", counts)
        if abs(float(np.sum(counts)) - self.total) > 1e-9 * max(1.0, self.total):
            raise DomainError("counts must sum to total")


def experimental_state(src: SourceParams, a0: float) -> np.ndarray:
    """Prepared three-qubit state with source and splitter imbalance.

    Amplitudes are proportional to
    (sqrt(eta_hh eta_r) a0, sqrt(eta_vv eta_t), sqrt(eta_hh eta_t),
    sqrt(eta_vv eta_r)) on |000>, |011>, |101>, |110>; balanced etas
    reproduce the ideal ground-state family.
    """
    if not (math.isfinite(a0) and a0 >= 1.0):
        raise DomainError(f"a0 must be >= 1, got {a0}")
    vec = np.zeros(8, dtype=complex)
    vec[0b000] = math.sqrt(src.eta_hh * src.eta_r) * a0
    vec[0b011] = math.sqrt(src.eta_vv * src.eta_t)
    vec[0b101] = math.sqrt(src.eta_hh * src.eta_t)
    vec[0b110] = math.sqrt(src.eta_vv * src.eta_r)
    return vec / math.sqrt(float(np.sum(np.abs(vec) ** 2)))


def _eta_ratio(src: SourceParams) -> float:
    return (src.eta_vv * src.eta_t + src.eta_hh * src.eta_t
            + src.eta_vv * src.eta_r) / (src.eta_hh * src.eta_r)


def alpha_of_a0(src: SourceParams, a0: float) -> float:
    """Attenuation ratio (P011 + P101 + P110) / P000 for a given a0."""
    if not (math.isfinite(a0) and a0 >= 1.0):
        raise DomainError(f"a0 must be >= 1, got {a0}")
    return _eta_ratio(src) / (a0 * a0)


def a0_of_alpha(src: SourceParams, alpha: float) -> float:
    """Exact algebraic inverse of alpha_of_a0."""
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise DomainError(f"alpha must be positive, got {alpha}")
    k = _eta_ratio(src)
    if alpha > k:
        raise DomainError(f"alpha = {alpha} exceeds the a0 = 1 limit {k}")
    return math.sqrt(k / alpha)


def werner(psi: np.ndarray, p: float, tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Convex mixture p |psi><psi| + (1 - p) I/8."""
    psi = require_state(psi, 8, tols)
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"mixing weight p must lie in [0, 1], got {p}")
    return p * outer(psi) + (1.0 - p) * np.eye(8, dtype=complex) / 8.0


def p_of_beta(noise: NoiseModel, beta: float) -> float:
    """Linear mixing weight, clamped into [0, 1]; beta must lie in [-2, 0]."""
    if not (-2.0 <= beta <= 0.0):
        raise DomainError(f"beta must lie in [-2, 0], got {beta}")
    return min(1.0, max(0.0, noise.slope * beta + noise.intercept))


def rsnr_of_p(p: float) -> float:
    """Signal-to-noise ratio from the mixing weight: R = 2p / (1 - p)."""
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p}")
    return 2.0 * p / (1.0 - p)


def derive_seed(seed: int, *indices: int) -> np.random.SeedSequence:
    """Deterministic per-(point, trial) seed for concurrent Monte Carlo."""
    return np.random.SeedSequence([int(seed), *[int(i) for i in indices]])


def measurement_probabilities(rho: np.ndarray, thetas,
                              tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Joint outcome probabilities of the 8 projective results of a setting."""
    rho = require_density(rho, 8, tols)
    if len(thetas) != 3:
        raise DomainError("a setting needs one angle per site")
    eye = np.eye(2, dtype=complex)
    projectors = [
        ((eye + measurement_observable(th)) / 2.0,
         (eye - measurement_observable(th)) / 2.0)
        for th in thetas
    ]
    probs = np.empty(8)
    for o in range(8):
        bits = ((o >> 2) & 1, (o >> 1) & 1, o & 1)
        proj = tensor(*(projectors[site][bit] for site, bit in enumerate(bits)))
        probs[o] = max(0.0, float(np.real(np.einsum("ij,ji->", rho, proj))))
    return probs / max(float(np.sum(probs)), 1e-300)


def outcome_signs() -> np.ndarray:
    """Product of the +/-1 outcomes for each of the 8 joint results."""
    return np.array([(-1.0) ** (bin(o).count("1")) for o in range(8)])


def simulate_counts(rho: np.ndarray, thetas, mean_total: float, seed,
                    setting: str = "", tols: Tolerances = DEFAULT_TOLS) -> CountRecord:
    """Draw independent Poisson counts for the 8 outcomes of one setting.

    Each outcome count is Poisson with mean mean_total * P(outcome);
    deterministic for a fixed seed.
    """
    if not (math.isfinite(mean_total) and mean_total > 0.0):
        raise DomainError(f"mean_total must be positive, got {mean_total}")
    probs = measurement_probabilities(rho, thetas, tols)
    rng = np.random.default_rng(seed)
    counts = rng.poisson(mean_total * probs).astype(float)
    return CountRecord(setting=setting, counts=counts, total=float(np.sum(counts)))


# the four correlator settings of the four-term Svetlichny form,
# in this parametrization: theta = 0 measures sigma_y, pi/2 measures sigma_z
SVETLICHNY_SETTINGS = (
    ("yzy", (0.0, math.pi / 2.0, 0.0)),
    ("zyy", (math.pi / 2.0, 0.0, 0.0)),
    ("yyz", (0.0, 0.0, math.pi / 2.0)),
    ("zzz", (math.pi / 2.0, math.pi / 2.0, math.pi / 2.0)),
)

_SETTING_SIGNS = {"yzy": 1.0, "zyy": 1.0, "yyz": 1.0, "zzz": -1.0}


def estimate_with_errors(records) -> tuple:
    """Plug-in |S3| estimate with first-order Poisson error propagation.

    Expects one CountRecord per Svetlichny correlator setting ('yzy',
    'zyy', 'yyz', 'zzz').  For each setting the correlator estimate is
    E = sum(sign * n) / sum(n) with variance (1 - E^2) / N; the total is
    sqrt(2)-weighted.  Zero-total settings leave the estimator undefined
    and raise.
    """
    by_setting = {}
    for rec in records:
        by_setting[rec.setting] = rec
    missing = [s for s, _ in SVETLICHNY_SETTINGS if s not in by_setting]
    if missing:
        raise DomainError(f"missing settings {missing} for the Svetlichny estimate")
    signs = outcome_signs()
    total = 0.0
    var = 0.0
    for name, _ in SVETLICHNY_SETTINGS:
        rec = by_setting[name]
        n = float(np.sum(rec.counts))
        if n <= 0.0:
            raise DomainError(
                f"estimate undefined: setting {name!r} has zero total counts"
            )
        e = float(np.sum(signs * rec.counts)) / n
        total += _SETTING_SIGNS[name] * e
        var += (1.0 - e * e) / n
    s3_hat = abs(SQRT2 * total)
    sigma = SQRT2 * math.sqrt(max(var, 0.0))
    return s3_hat, sigma
