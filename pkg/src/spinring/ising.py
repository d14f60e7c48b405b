"""Transverse-field Ising rings: Hamiltonian, ground states, closed forms.

H = -J sum_n sx_n sx_{n+1} + B sum_n sz_n on a periodic ring (site N
couples back to site 1), beta = B / J.  Spin 1 is the most significant
index, so the basis label |abc> means spin1 = a, spin2 = b, spin3 = c.
For N = 2 the periodic sum visits the single bond twice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import DEFAULT_TOLS, Tolerances, hermitian_eig, pauli, tensor

N_MIN, N_MAX = 2, 10


@dataclass(frozen=True)
class RingSpec:
    """Ring parameters: size, coupling strength J > 0 and field B."""

    n_spins: int
    coupling: float = 1.0
    field: float = 0.0

    def __post_init__(self):
        if not N_MIN <= self.n_spins <= N_MAX:
            raise DomainError(
                f"n_spins must lie in [{N_MIN}, {N_MAX}], got {self.n_spins}"
            )
        if not (self.coupling > 0.0 and math.isfinite(self.coupling)):
            raise DomainError(f"coupling must be positive and finite, got {self.coupling}")
        if not math.isfinite(self.field):
            raise DomainError(f"field must be finite, got {self.field}")

    @property
    def beta(self) -> float:
        return self.field / self.coupling

    @classmethod
    def from_beta(cls, n_spins: int, beta: float, coupling: float = 1.0) -> "RingSpec":
        return cls(n_spins=n_spins, coupling=coupling, field=beta * coupling)


@dataclass(frozen=True)
class GroundState:
    """Lowest-energy eigenstate of a ring, norm 1, global phase fixed."""

    state: np.ndarray
    energy: float
    beta: float
    degenerate: bool


def _site_operator(n_spins: int, site: int, op: np.ndarray) -> np.ndarray:
    factors = [pauli("identity")] * n_spins
    factors[site] = op
    return tensor(*factors)


def build_hamiltonian(spec: RingSpec) -> np.ndarray:
    """Dense 2^N x 2^N ring Hamiltonian; real symmetric in this basis."""
    n = spec.n_spins
    dim = 1 << n
    sx = pauli("x")
    sz = pauli("z")
    h = np.zeros((dim, dim), dtype=complex)
    for i in range(n):
        j = (i + 1) % n
        h -= spec.coupling * (_site_operator(n, i, sx) @ _site_operator(n, j, sx))
        h += spec.field * _site_operator(n, i, sz)
    return h


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(vec)))
    a = vec[k]
    if abs(a) > 0.0:
        vec = vec * (np.conj(a) / abs(a))
    return vec


def ground_state(spec: RingSpec, tols: Tolerances = DEFAULT_TOLS) -> GroundState:
    """Ground state via exact diagonalization, resolved by sz-parity sector.

    Both Hamiltonian terms conserve the parity of the number of down spins,
    so the matrix block-diagonalizes over the even/odd index sets and the
    two sector problems are solved independently.  For B != 0 the ground
    state of the finite ring is unique (the field lifts the Z2 pair that is
    exactly degenerate at B = 0), even where the inter-sector gap is far
    below floating-point resolution; the `degenerate` flag therefore fires
    for B = 0 or for a resolved degeneracy inside the winning sector.
    """
    h = build_hamiltonian(spec)
    n = spec.n_spins
    dim = 1 << n
    parity = np.array([bin(i).count("1") & 1 for i in range(dim)])
    sectors = {}
    for par in (0, 1):
        idx = np.where(parity == par)[0]
        eig = hermitian_eig(h[np.ix_(idx, idx)], tols)
        sectors[par] = (idx, eig)
    e_even = sectors[0][1].eigenvalues[0]
    e_odd = sectors[1][1].eigenvalues[0]
    scale = max(1.0, abs(e_even), abs(e_odd))
    if abs(e_even - e_odd) <= tols.degeneracy_gap * scale:
        # numerically tied sectors: the exact ordering follows the field sign
        winner = 0 if spec.field <= 0.0 else 1
    else:
        winner = 0 if e_even < e_odd else 1
    idx, eig = sectors[winner]
    vec = np.zeros(dim, dtype=complex)
    vec[idx] = eig.eigenvectors[:, 0]
    vec = _fix_phase(vec / math.sqrt(float(np.sum(np.abs(vec) ** 2))))
    degenerate = bool(spec.field == 0.0 or eig.degenerate[0])
    return GroundState(
        state=vec,
        energy=float(eig.eigenvalues[0]),
        beta=spec.beta,
        degenerate=degenerate,
    )


def a0_of_beta(beta: float) -> float:
    """Dominant-amplitude ratio of the N = 3 ground state, a0(beta) >= 1."""
    if not (math.isfinite(beta) and beta <= 0.0):
        raise DomainError(f"a0_of_beta requires beta <= 0, got {beta}")
    return -1.0 - 2.0 * beta + 2.0 * math.sqrt(1.0 + beta + beta * beta)


def beta_of_a0(a0: float) -> float:
    """Exact inverse of a0_of_beta on a0 >= 1 (root of the defining quadratic)."""
    if not (math.isfinite(a0) and a0 >= 1.0):
        raise DomainError(f"beta_of_a0 requires a0 >= 1, got {a0}")
    return (3.0 - a0 * a0 - 2.0 * a0) / (4.0 * a0)


def analytic_ground_state_n3(beta: float) -> np.ndarray:
    """Closed-form N = 3 ground state (a0|000> + |011> + |101> + |110>)/sqrt(3 + a0^2)."""
    if not (-2.0 <= beta < 0.0):
        raise DomainError(f"analytic ground state requires beta in [-2, 0), got {beta}")
    a0 = a0_of_beta(beta)
    amp = 1.0 / math.sqrt(3.0 + a0 * a0)
    vec = np.zeros(8, dtype=complex)
    vec[0b000] = a0 * amp
    vec[0b011] = amp
    vec[0b101] = amp
    vec[0b110] = amp
    return vec
