import numpy as np
import pytest

from probewitness.oracle import random_hermitian


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def herm(rng):
    return lambda dim: random_hermitian(rng, dim)
