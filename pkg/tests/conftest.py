import numpy as np
import pytest


def random_density_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Random full-rank state via a Wishart draw."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_populations(rng: np.random.Generator, dim: int) -> np.ndarray:
    p = rng.random(dim)
    return p / p.sum()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(987654321)
