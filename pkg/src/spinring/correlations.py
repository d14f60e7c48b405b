"""Pauli correlators, the two-spin entanglement witness, and the
Svetlichny/Mermin machinery for three qubits.

Measurement settings live in the y-z plane.  An angle theta is measured
from the sigma_y axis toward sigma_z:

    O(theta) = cos(theta) * sigma_y + sin(theta) * sigma_z

so O(0) = sigma_y and O(pi/2) = sigma_z.  With this convention the
canonical setting tuple (a1, a2, b1, b2, c1, c2) =
(3pi/4, pi/4, pi/4, -pi/4, pi/4, -pi/4) turns the Mermin combination
M3 + M3' into exactly the four-correlator Svetlichny form

    <S3> = sqrt(2) (<y z y> + <z y y> + <y y z> - <z z z>)

as an operator identity, valid for every state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import (
    DEFAULT_TOLS,
    Tolerances,
    hermitian_eig,
    is_hermitian,
    outer,
    partial_transpose,
    pauli,
    require_density,
    tensor,
)

SQRT2 = math.sqrt(2.0)
S3_MAX = 4.0 * SQRT2

_Y = pauli("y")
_Z = pauli("z")
_ID = pauli("identity")

_YZY = tensor(_Y, _Z, _Y)
_ZYY = tensor(_Z, _Y, _Y)
_YYZ = tensor(_Y, _Y, _Z)
_ZZZ = tensor(_Z, _Z, _Z)


def measurement_observable(theta: float) -> np.ndarray:
    """Dichotomic observable cos(theta) sigma_y + sin(theta) sigma_z."""
    return math.cos(theta) * _Y + math.sin(theta) * _Z


@dataclass(frozen=True)
class MeasurementSetting:
    """A single-site setting in the y-z plane; theta in radians from sigma_y."""

    theta: float

    def observable(self) -> np.ndarray:
        return measurement_observable(self.theta)


@dataclass(frozen=True)
class SvetlichnyAngles:
    """The six angles (two settings per site) of the Svetlichny configuration."""

    a1: float
    a2: float
    b1: float
    b2: float
    c1: float
    c2: float

    def as_tuple(self):
        return (self.a1, self.a2, self.b1, self.b2, self.c1, self.c2)


DEFAULT_ANGLES = SvetlichnyAngles(
    a1=3.0 * math.pi / 4.0,
    a2=math.pi / 4.0,
    b1=math.pi / 4.0,
    b2=-math.pi / 4.0,
    c1=math.pi / 4.0,
    c2=-math.pi / 4.0,
)


def expectation(rho: np.ndarray, obs: np.ndarray,
                tols: Tolerances = DEFAULT_TOLS) -> float:
    """Re Tr(rho obs) for a Hermitian observable; the imaginary residue
    must stay below 1e-10."""
    rho = np.asarray(rho, dtype=complex)
    obs = np.asarray(obs, dtype=complex)
    if rho.shape != obs.shape or rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DomainError(f"shape mismatch: rho {rho.shape} vs obs {obs.shape}")
    if not is_hermitian(obs, tols.hermiticity):
        raise DomainError("observable is not Hermitian within tolerance")
    val = complex(np.einsum("ij,ji->", rho, obs))
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise DomainError(f"expectation value has imaginary residue {val.imag}")
    return float(val.real)


WITNESS_PAULI_FORM = 0.25 * (
    tensor(_ID, _ID) - tensor(pauli("x"), pauli("x"))
    + tensor(_Y, _Y) - tensor(_Z, _Z)
)


def witness_w2(rho2: np.ndarray, tols: Tolerances = DEFAULT_TOLS):
    """Two-spin entanglement witness built from the partial transpose.

    W2 = (|v><v|)^pt with |v> the eigenvector of rho2^pt belonging to the
    smallest eigenvalue (transposition acts on the second spin of the
    pair).  Returns (value, witness) where value = Tr(rho2 W2); by
    construction the value equals min eig of rho2^pt, and a negative value
    certifies bipartite entanglement.
    """
    rho2 = require_density(rho2, 4, tols)
    pt = partial_transpose(rho2, [2, 2], 1)
    eig = hermitian_eig(pt, tols)
    lam = float(eig.eigenvalues[0])
    witness = partial_transpose(outer(eig.eigenvectors[:, 0]), [2, 2], 1)
    value = expectation(rho2, witness, tols)
    if abs(value - lam) > 1e-12 * max(1.0, abs(lam)):
        raise ArithmeticError(
            f"witness value {value} deviates from min PT eigenvalue {lam}"
        )
    return value, witness


def witness_pauli_decomposition_check(beta: float,
                                      tols: Tolerances = DEFAULT_TOLS) -> bool:
    """True when the ground-state pair witness equals
    (1 + yy - xx - zz)/4, i.e. the minimizing PT eigenvector is the singlet."""
    from .ising import analytic_ground_state_n3
    from .linalg import partial_trace

    if not (-2.0 <= beta < 0.0):
        raise DomainError(f"beta must lie in [-2, 0), got {beta}")
    psi = analytic_ground_state_n3(beta)
    rho23 = partial_trace(outer(psi), [2, 2, 2], keep=[1, 2])
    _, witness = witness_w2(rho23, tols)
    return bool(np.max(np.abs(witness - WITNESS_PAULI_FORM)) <= 1e-9)


def svetlichny_s3(rho: np.ndarray, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Signed four-correlator Svetlichny value
    sqrt(2) (<yzy> + <zyy> + <yyz> - <zzz>); callers take the magnitude."""
    rho = require_density(rho, 8, tols)
    return SQRT2 * (
        expectation(rho, _YZY, tols)
        + expectation(rho, _ZYY, tols)
        + expectation(rho, _YYZ, tols)
        - expectation(rho, _ZZZ, tols)
    )


def mermin_correlator_E(rho: np.ndarray, theta_a: float, theta_b: float,
                        theta_c: float, tols: Tolerances = DEFAULT_TOLS) -> float:
    """Three-site correlation function <O(ta) O(tb) O(tc)>."""
    obs = tensor(
        measurement_observable(theta_a),
        measurement_observable(theta_b),
        measurement_observable(theta_c),
    )
    return expectation(rho, obs, tols)


def svetlichny_from_mermin(rho: np.ndarray,
                           angles: SvetlichnyAngles = DEFAULT_ANGLES,
                           tols: Tolerances = DEFAULT_TOLS) -> float:
    """|M3 + M3'| from the eight three-site correlators.

    M3  = E(a1,b1,c2) + E(a1,b2,c1) + E(a2,b1,c1) - E(a2,b2,c2)
    M3' = E(a2,b2,c1) + E(a2,b1,c2) + E(a1,b2,c2) - E(a1,b1,c1)

    At the default angles this equals |svetlichny_s3(rho)| for every state.
    """
    rho = require_density(rho, 8, tols)
    a1, a2, b1, b2, c1, c2 = angles.as_tuple()

    def e(ta, tb, tc):
        return mermin_correlator_E(rho, ta, tb, tc, tols)

    m3 = e(a1, b1, c2) + e(a1, b2, c1) + e(a2, b1, c1) - e(a2, b2, c2)
    m3p = e(a2, b2, c1) + e(a2, b1, c2) + e(a1, b2, c2) - e(a1, b1, c1)
    return abs(m3 + m3p)


def _correlation_tensor(rho: np.ndarray, tols: Tolerances) -> np.ndarray:
    """T[i, j, k] = <P_i P_j P_k> with P_0 = sigma_y, P_1 = sigma_z."""
    ops = (_Y, _Z)
    t = np.empty((2, 2, 2))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                t[i, j, k] = expectation(rho, tensor(ops[i], ops[j], ops[k]), tols)
    return t


def _tensor_value(t, a1, a2, b1, b2, c1, c2):
    """|M3 + M3'| evaluated from the 2x2x2 correlation tensor."""
    va1 = (math.cos(a1), math.sin(a1))
    va2 = (math.cos(a2), math.sin(a2))
    vb1 = (math.cos(b1), math.sin(b1))
    vb2 = (math.cos(b2), math.sin(b2))
    vc1 = (math.cos(c1), math.sin(c1))
    vc2 = (math.cos(c2), math.sin(c2))
    total = 0.0
    for i in range(2):
        w = va1[i] + va2[i]
        x = va2[i] - va1[i]
        for j in range(2):
            for k in range(2):
                bc1 = vb1[j] * vc2[k] + vb2[j] * vc1[k]
                bc2 = vb1[j] * vc1[k] - vb2[j] * vc2[k]
                total += t[i, j, k] * (w * bc1 + x * bc2)
    return abs(total)


def optimize_svetlichny_angles(rho: np.ndarray,
                               grid_step: float = math.pi / 24.0,
                               value_tol: float = 1e-8,
                               tols: Tolerances = DEFAULT_TOLS):
    """Maximize |M3 + M3'| over the six y-z-plane angles.

    Coarse stage: cyclic coordinate descent on the angle grid of step
    `grid_step`.  Refinement: per-coordinate ternary search until the value
    stalls below `value_tol`.  The returned value never falls below the
    value at the default angles.  Global optimality is not guaranteed.
    """
    rho = require_density(rho, 8, tols)
    t = _correlation_tensor(rho, tols)

    def value(th):
        return _tensor_value(t, *th)

    n_grid = max(1, int(round(2.0 * math.pi / grid_step)))
    grid = [k * grid_step for k in range(n_grid)]

    def coarse(start):
        th = list(start)
        best = value(th)
        for _ in range(20):
            improved = False
            for c in range(6):
                cur = th[c]
                cand_best, cand_val = cur, best
                for g in grid:
                    th[c] = g
                    v = value(th)
                    if v > cand_val + 1e-15:
                        cand_best, cand_val = g, v
                th[c] = cand_best
                if cand_val > best + 1e-15:
                    best = cand_val
                    improved = True
            if not improved:
                break
        return th, best

    def refine(start, best):
        th = list(start)
        for _ in range(40):
            prev = best
            for c in range(6):
                lo, hi = th[c] - grid_step, th[c] + grid_step
                for _ in range(48):
                    m1 = lo + (hi - lo) / 3.0
                    m2 = hi - (hi - lo) / 3.0
                    th[c] = m1
                    v1 = value(th)
                    th[c] = m2
                    v2 = value(th)
                    if v1 > v2:
                        hi = m2
                    else:
                        lo = m1
                th[c] = (lo + hi) / 2.0
                best = max(best, value(th))
            if best - prev < value_tol * 1e-2:
                break
        return th, best

    defaults = DEFAULT_ANGLES.as_tuple()
    default_value = value(defaults)
    best_angles, best_value = defaults, default_value
    for start in (defaults, (0.0,) * 6):
        th, v = coarse(start)
        th, v = refine(th, v)
        if v > best_value:
            best_angles, best_value = tuple(th), v
    return SvetlichnyAngles(*best_angles), float(best_value)


def derivative_s3(beta_grid: np.ndarray, s3_values: np.ndarray) -> np.ndarray:
    """Second-order finite-difference derivative on an ascending grid.

    Central differences on interior points, one-sided second-order at the
    endpoints; the output has the same length as the input.
    """
    beta_grid = np.asarray(beta_grid, dtype=float)
    s3_values = np.asarray(s3_values, dtype=float)
    if beta_grid.ndim != 1 or beta_grid.size < 3:
        raise DomainError("derivative needs at least 3 grid points")
    if s3_values.shape != beta_grid.shape:
        raise DomainError("grid and values must have equal length")
    if np.any(np.diff(beta_grid) <= 0.0):
        raise DomainError("grid must be strictly ascending")
    return np.gradient(s3_values, beta_grid, edge_order=2)
