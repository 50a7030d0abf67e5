import numpy as np
import pytest

from sirsd_koopman import EpidemicParams, StateVec


def random_interior_states(rng: np.random.Generator, n: int) -> list:
    """Strictly interior simplex points with d bounded away from 1."""
    states = []
    while len(states) < n:
        s, i, r, d = rng.dirichlet((1.0, 1.0, 1.0, 1.0))
        if min(s, i, r, d) > 1e-6 and d < 0.9:
            states.append(StateVec(s, i, r, d))
    return states


def random_params(rng: np.random.Generator) -> EpidemicParams:
    return EpidemicParams(
        beta=float(rng.uniform(0.05, 2.0)),
        gamma=float(rng.uniform(0.05, 0.5)),
        mu=float(rng.uniform(0.001, 0.5)),
        omega=float(rng.uniform(0.0, 0.3)),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
