import numpy as np
import pytest

from puregauss.states import CovarianceMatrix, random_symplectic


def random_bona_fide(n_modes, rng, pure=False):
    """``S diag(nu) S^T`` with random symplectic ``S`` and ``nu`` in [1, 4]."""
    s = random_symplectic(n_modes, rng).matrix
    nu = np.ones(n_modes) if pure else rng.uniform(1.0, 4.0, n_modes)
    m = s @ np.diag(np.repeat(nu, 2)) @ s.T
    return CovarianceMatrix.from_matrix(0.5 * (m + m.T)), np.sort(nu)[::-1]


@pytest.fixture
def rng():
    return np.random.default_rng(20071016)
