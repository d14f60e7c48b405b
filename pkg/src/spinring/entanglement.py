"""Entanglement measures and the closed-form links to the Svetlichny value.

Negativity is normalized as ||rho^pt||_1 - 1 (twice the negative-eigenvalue
mass), so a GHZ state yields 1 on every one-vs-two cut.  The three-tangle
is computed for pure states only; mixed states are characterized through
the tripartite negativity.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .linalg import (
    DEFAULT_TOLS,
    Tolerances,
    dagger,
    hermitian_eig,
    outer,
    partial_trace,
    partial_transpose,
    pauli,
    require_density,
    require_state,
    tensor,
)

log = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
S3_MAX = 4.0 * SQRT2

_YY = tensor(pauli("y"), pauli("y"))


@dataclass(frozen=True)
class BipartitionLabel:
    """One spin (1-based) against the remaining pair of a three-spin ring."""

    solo: int
    pair: tuple = field(default=None)

    def __post_init__(self):
        if self.solo not in (1, 2, 3):
            raise DomainError(f"solo spin must be 1, 2 or 3, got {self.solo}")
        expected = tuple(i for i in (1, 2, 3) if i != self.solo)
        if self.pair is None:
            object.__setattr__(self, "pair", expected)
        elif tuple(sorted(self.pair)) != expected:
            raise DomainError(
                f"pair {self.pair} does not complement solo spin {self.solo}"
            )


ALL_CUTS = (BipartitionLabel(1), BipartitionLabel(2), BipartitionLabel(3))


def _sqrt_psd(rho: np.ndarray, tols: Tolerances) -> np.ndarray:
    eig = hermitian_eig(rho, tols)
    w = np.clip(eig.eigenvalues, 0.0, None)
    v = eig.eigenvectors
    return (v * np.sqrt(w)) @ dagger(v)


def concurrence(rho2: np.ndarray, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    max(0, l1 - l2 - l3 - l4) with l_i the descending square roots of the
    eigenvalues of rho (yy) rho* (yy); conjugation in the computational
    basis.
    """
    rho2 = require_density(rho2, 4, tols)
    rho_tilde = _YY @ np.conj(rho2) @ _YY
    sq = _sqrt_psd(rho2, tols)
    m = sq @ rho_tilde @ sq
    m = (m + dagger(m)) / 2.0
    w = np.clip(hermitian_eig(m, tols).eigenvalues, 0.0, None)
    # eigenvalue noise of order eps turns into sqrt(eps) after the root;
    # zero out anything below the resolvable scale first
    w[w < 1e-12 * max(float(w[-1]), 1e-300)] = 0.0
    lam = np.sqrt(w)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def negativity(rho: np.ndarray, cut, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Negativity ||rho^pt(solo)||_1 - 1 across a one-vs-two cut."""
    rho = require_density(rho, 8, tols)
    if isinstance(cut, int):
        cut = BipartitionLabel(cut)
    pt = partial_transpose(rho, [2, 2, 2], cut.solo - 1)
    vals = hermitian_eig(pt, tols).eigenvalues
    return float(max(0.0, np.sum(np.abs(vals)) - 1.0))


def tripartite_negativity(rho: np.ndarray, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Geometric mean of the three cut negativities; valid for mixed states."""
    rho = require_density(rho, 8, tols)
    n1, n2, n3 = (negativity(rho, cut, tols) for cut in ALL_CUTS)
    return float((n1 * n2 * n3) ** (1.0 / 3.0))


def three_tangle_pure(psi: np.ndarray, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Residual three-way entanglement of a pure three-qubit state.

    C^2(1|23) - C^2(1|2) - C^2(1|3) with C(1|23) = 2 sqrt(det rho_1).
    Tiny negative values (> -1e-9) are clamped to zero; larger violations
    raise.
    """
    psi = require_state(psi, 8, tols)
    rho = outer(psi)
    rho1 = partial_trace(rho, [2, 2, 2], keep=[0])
    det1 = float(np.real(rho1[0, 0] * rho1[1, 1] - rho1[0, 1] * rho1[1, 0]))
    c2_1_23 = 4.0 * max(det1, 0.0)
    c12 = concurrence(partial_trace(rho, [2, 2, 2], keep=[0, 1]), tols)
    c13 = concurrence(partial_trace(rho, [2, 2, 2], keep=[0, 2]), tols)
    tau = c2_1_23 - c12 * c12 - c13 * c13
    if tau < -1e-9 or tau > 1.0 + 1e-9:
        raise DomainError(f"three-tangle {tau} violates [0, 1] beyond tolerance")
    if tau < 0.0 or tau > 1.0:
        log.debug("clamping three-tangle %.3e into [0, 1]", tau)
    return float(min(max(tau, 0.0), 1.0))


def _check_s3_domain(s3: float) -> float:
    s3 = float(s3)
    if not math.isfinite(s3) or s3 <= SQRT2 or s3 > S3_MAX + 1e-9:
        raise DomainError(
            f"Svetlichny value {s3} outside the ground-state range "
            f"({SQRT2:.6f}, {S3_MAX:.6f}]"
        )
    return min(s3, S3_MAX)


def tau3_from_s3(s3: float) -> float:
    """Three-tangle of the ground-state family from its Svetlichny value."""
    s3 = _check_s3_domain(s3)
    head = 3.0 * (s3 * s3 - 2.0 * SQRT2 * s3 - 4.0)
    tail = math.sqrt(3.0 * s3) * max(S3_MAX - s3, 0.0) ** 1.5
    return (head + tail) / 36.0


def a0_from_s3(s3: float) -> float:
    """Invert the ground-state Svetlichny value back to the amplitude ratio a0."""
    s3 = _check_s3_domain(s3)
    disc = 12.0 * SQRT2 * s3 - 3.0 * s3 * s3
    if disc < -1e-9:
        raise DomainError(f"discriminant {disc} negative for s3 = {s3}")
    return (3.0 * SQRT2 + math.sqrt(max(disc, 0.0))) / (s3 - SQRT2)


def n3_from_s3(s3: float) -> float:
    """Tripartite negativity of the ground-state family from its Svetlichny value."""
    a0 = a0_from_s3(s3)
    return 2.0 * math.sqrt(2.0 * (1.0 + a0 * a0)) / (3.0 + a0 * a0)


_FACTORIZATION_CHECKED = False


def _assert_noise_factorization() -> None:
    """White noise contributes nothing to the Svetlichny correlators, so the
    noisy value factorizes as p times the pure one; checked numerically once."""
    global _FACTORIZATION_CHECKED
    if _FACTORIZATION_CHECKED:
        return
    from .correlations import svetlichny_s3
    from .ising import analytic_ground_state_n3
    from .photonics import werner

    psi = analytic_ground_state_n3(-1.0)
    p = 0.8
    noisy = svetlichny_s3(werner(psi, p))
    pure = svetlichny_s3(outer(psi))
    if abs(noisy - p * pure) > 1e-12:
        raise ArithmeticError(
            f"noise factorization violated: {noisy} != {p} * {pure}"
        )
    _FACTORIZATION_CHECKED = True


def infer_beta_from_measured_s3(s3_exp: float, noise,
                                beta_lo: float = -2.0,
                                beta_hi: float = -1e-6,
                                endpoint_tol: float = 1e-6) -> float:
    """Solve p(beta) * |S3|_pure(beta) = s3_exp for beta by bisection.

    The product is strictly increasing in beta on [beta_lo, beta_hi];
    values within `endpoint_tol` above the attainable maximum (or below the
    minimum) snap to the corresponding endpoint.  Unsolvable inputs raise
    with the attainable range in the message.
    """
    from .correlations import svetlichny_s3
    from .ising import analytic_ground_state_n3
    from .photonics import p_of_beta

    if not (math.isfinite(s3_exp) and s3_exp > 0.0):
        raise DomainError(f"measured Svetlichny value must be positive, got {s3_exp}")
    _assert_noise_factorization()

    def noisy_s3(beta: float) -> float:
        pure = abs(svetlichny_s3(outer(analytic_ground_state_n3(beta))))
        return p_of_beta(noise, beta) * pure

    f_lo = noisy_s3(beta_lo)
    f_hi = noisy_s3(beta_hi)
    if s3_exp > f_hi:
        if s3_exp <= f_hi + endpoint_tol:
            return beta_hi
        raise DomainError(
            f"s3 = {s3_exp} above the attainable range [{f_lo:.6f}, {f_hi:.6f}]"
        )
    if s3_exp < f_lo:
        if s3_exp >= f_lo - endpoint_tol:
            return beta_lo
        raise DomainError(
            f"s3 = {s3_exp} below the attainable range [{f_lo:.6f}, {f_hi:.6f}]"
        )
    lo, hi = beta_lo, beta_hi
    while hi - lo > 1e-10:
        mid = 0.5 * (lo + hi)
        if noisy_s3(mid) < s3_exp:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
