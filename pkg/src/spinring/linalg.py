"""Dense complex linear algebra for few-qubit problems.

Everything operates on plain numpy arrays: state vectors are 1-D complex
arrays, operators and density matrices square 2-D complex arrays, with the
leftmost tensor factor owning the most significant index.  The Hermitian
eigensolver is self-contained (Householder tridiagonalization followed by
implicit-shift QL iteration) so no external decomposition routine enters
the core numerics; numpy is used only as the array carrier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used across the library; override per call."""

    hermiticity: float = 1e-10
    density_hermiticity: float = 1e-12
    trace: float = 1e-12
    psd: float = 1e-10
    eig_residual: float = 1e-9
    orthonormality: float = 1e-10
    degeneracy_gap: float = 1e-10
    state_norm: float = 1e-12


DEFAULT_TOLS = Tolerances()

PAULI_AXES = ("x", "y", "z", "identity")

_PAULI = {
    "identity": np.eye(2, dtype=complex),
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}


def pauli(axis: str) -> np.ndarray:
    """Return the 2x2 Pauli matrix for 'x', 'y', 'z', or the 'identity'.

    Conventions: sigma_z |0> = +|0>, sigma_y |0> = i|1>.
    """
    try:
        return _PAULI[axis].copy()
    except KeyError:
        raise ValueError(
            f"unknown Pauli axis {axis!r}; expected one of {PAULI_AXES}"
        ) from None


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of matrices or vectors.

    The leftmost factor owns the most significant index, so
    tensor(A, B) @ tensor(u, v) == tensor(A @ u, B @ v).
    """
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    out = np.asarray(factors[0], dtype=complex)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=complex))
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m.T)


def outer(psi: np.ndarray) -> np.ndarray:
    """Projector |psi><psi| of a state vector."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, np.conj(psi))


def _check_dims(rho: np.ndarray, dims) -> None:
    total = int(np.prod(dims))
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] != total:
        raise DomainError(
            f"dimension mismatch: matrix is {rho.shape}, subsystem dims {list(dims)} "
            f"give total dimension {total}"
        )


def partial_trace(rho: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out all subsystems not listed in `keep` (0-based positions).

    The kept subsystems stay in their original order and the trace is
    preserved.
    """
    rho = np.asarray(rho, dtype=complex)
    _check_dims(rho, dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise DomainError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= n:
        raise DomainError(f"keep indices {keep} out of range for {n} subsystems")
    drop = [i for i in range(n) if i not in keep]
    t = rho.reshape(*dims, *dims)
    for k, i in enumerate(drop):
        ax = i - k
        t = np.trace(t, axis1=ax, axis2=ax + n - k)
    d = int(np.prod([dims[i] for i in keep]))
    return t.reshape(d, d)


def partial_transpose(rho: np.ndarray, dims, subsystem: int) -> np.ndarray:
    """Transpose the indices of one subsystem (0-based position) only."""
    rho = np.asarray(rho, dtype=complex)
    _check_dims(rho, dims)
    n = len(dims)
    s = int(subsystem)
    if not 0 <= s < n:
        raise DomainError(f"subsystem {subsystem} out of range for {n} subsystems")
    t = rho.reshape(*dims, *dims)
    t = np.swapaxes(t, s, s + n)
    return t.reshape(rho.shape).copy()


@dataclass(frozen=True)
class EigenResult:
    """Full Hermitian eigendecomposition, eigenvalues ascending.

    ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]``.  ``degenerate[i]``
    marks eigenvalues that sit inside a near-degenerate cluster; callers
    needing a unique eigenvector must check it.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    degenerate: np.ndarray


def max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def is_hermitian(m: np.ndarray, tol: float) -> bool:
    return max_abs(m - dagger(m)) <= tol * max(1.0, max_abs(m))


def _tridiagonalize(a: np.ndarray):
    """Reduce a Hermitian matrix to real symmetric tridiagonal form.

    Returns (d, e, q) with q unitary, q^dag a q tridiagonal, d the real
    diagonal and e the real non-negative off-diagonal.
    """
    n = a.shape[0]
    a = a.astype(complex).copy()
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = a[k + 1:, k]
        xnorm = math.sqrt(float(np.sum(x.real**2 + x.imag**2)))
        if xnorm == 0.0:
            continue
        v = x.copy()
        ph = v[0] / abs(v[0]) if abs(v[0]) > 0.0 else 1.0
        v[0] += ph * xnorm
        vnorm = math.sqrt(float(np.sum(v.real**2 + v.imag**2)))
        if vnorm == 0.0:
            continue
        v /= vnorm
        # similarity by P = I - 2 v v^dag on the trailing block
        a[k + 1:, :] -= 2.0 * np.outer(v, np.conj(v) @ a[k + 1:, :])
        a[:, k + 1:] -= 2.0 * np.outer(a[:, k + 1:] @ v, np.conj(v))
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, np.conj(v))
    d = np.real(np.diag(a)).copy()
    e_c = np.diag(a, -1).copy()
    # phase out complex off-diagonals so the tridiagonal matrix is real
    e = np.abs(e_c)
    phase = 1.0 + 0.0j
    for k in range(n - 1):
        if e[k] > 0.0:
            phase = phase * (e_c[k] / e[k])
        q[:, k + 1] *= phase
    return d, e, q


def _tql2(d: np.ndarray, e: np.ndarray, z: np.ndarray, max_iter: int = 60):
    """Implicit-shift QL iteration on a real symmetric tridiagonal matrix.

    Eigenvector accumulation starts from the columns of z (modified in
    place).  Follows the classic EISPACK/NR scheme.
    """
    n = d.size
    d = d.copy()
    e = np.append(e.copy(), 0.0)
    eps = np.finfo(float).eps
    for l in range(n):
        it = 0
        while True:
            m = n - 1
            for mm in range(l, n - 1):
                dd = abs(d[mm]) + abs(d[mm + 1])
                if abs(e[mm]) <= eps * dd:
                    m = mm
                    break
            if m == l:
                break
            it += 1
            if it > max_iter:
                raise ArithmeticError("QL iteration failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = z[:, i].copy()
                z[:, i] = c * col - s * z[:, i + 1]
                z[:, i + 1] = s * col + c * z[:, i + 1]
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, z


def hermitian_eig(h: np.ndarray, tols: Tolerances = DEFAULT_TOLS) -> EigenResult:
    """Full spectrum of a Hermitian matrix, ascending, with eigenvectors.

    Deterministic for identical input.  Raises DomainError when the input
    is not Hermitian within ``tols.hermiticity`` (relative to the matrix
    scale, with a floor of 1).
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {h.shape}")
    if not is_hermitian(h, tols.hermiticity):
        raise DomainError("matrix is not Hermitian within tolerance")
    n = h.shape[0]
    if n == 1:
        return EigenResult(
            eigenvalues=np.array([h[0, 0].real]),
            eigenvectors=np.ones((1, 1), dtype=complex),
            degenerate=np.array([False]),
        )
    hs = (h + dagger(h)) / 2.0
    d, e, q = _tridiagonalize(hs)
    vals, vecs = _tql2(d, e, q)
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    # canonical phase: largest-magnitude component real positive
    for i in range(n):
        k = int(np.argmax(np.abs(vecs[:, i])))
        a = vecs[k, i]
        if abs(a) > 0.0:
            vecs[:, i] *= np.conj(a) / abs(a)
    scale = max(1.0, float(np.max(np.abs(vals))))
    gap_tol = tols.degeneracy_gap * scale
    degen = np.zeros(n, dtype=bool)
    for i in range(n - 1):
        if vals[i + 1] - vals[i] < gap_tol:
            degen[i] = True
            degen[i + 1] = True
    return EigenResult(eigenvalues=vals, eigenvectors=vecs, degenerate=degen)


def require_density(rho: np.ndarray, dim: int | None = None,
                    tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, PSD within tolerance."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DomainError(f"density matrix must be square, got shape {rho.shape}")
    if dim is not None and rho.shape[0] != dim:
        raise DomainError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if max_abs(rho - dagger(rho)) > tols.density_hermiticity * max(1.0, max_abs(rho)):
        raise DomainError("density matrix is not Hermitian within tolerance")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tols.trace:
        raise DomainError(f"density matrix trace {tr} differs from 1")
    evals = hermitian_eig(rho, tols).eigenvalues
    if evals[0] < -tols.psd:
        raise DomainError(f"density matrix has negative eigenvalue {evals[0]}")
    return rho


def require_state(psi: np.ndarray, dim: int | None = None,
                  tols: Tolerances = DEFAULT_TOLS) -> np.ndarray:
    """Validate a normalized state vector."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if dim is not None and psi.size != dim:
        raise DomainError(f"expected a state vector of dimension {dim}, got {psi.size}")
    norm2 = float(np.sum(psi.real**2 + psi.imag**2))
    if abs(norm2 - 1.0) > max(tols.state_norm, 1e-10):
        raise DomainError(f"state vector norm^2 = {norm2} differs from 1")
    return psi
