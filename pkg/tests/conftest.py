import numpy as np
import pytest

from adqc import states


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_bell_diagonal_c(rng):
    """Uniform c in the cube, rejected until the Bell-basis weights are valid."""
    while True:
        c = rng.uniform(-1.0, 1.0, 3)
        try:
            states.bell_diagonal(c)
        except states.NotAState:
            continue
        return c


def random_hermitian(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + g.conj().T)
