import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_state(rng, dim=8):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim=8, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_product_state(rng):
    parts = []
    for _ in range(3):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        parts.append(v / np.linalg.norm(v))
    out = parts[0]
    for p in parts[1:]:
        out = np.kron(out, p)
    return out


def ghz_state():
    v = np.zeros(8, dtype=complex)
    v[0] = v[7] = 1.0 / np.sqrt(2.0)
    return v


def w_state():
    v = np.zeros(8, dtype=complex)
    v[0b011] = v[0b101] = v[0b110] = 1.0 / np.sqrt(3.0)
    return v
