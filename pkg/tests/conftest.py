import numpy as np
import pytest

from lingauss.fixtures import pentagon_problem


@pytest.fixture(scope="session")
def pentagon_inequality():
    return pentagon_problem("inequality")


@pytest.fixture(scope="session")
def pentagon_equality():
    return pentagon_problem("equality")


@pytest.fixture(scope="session")
def pentagon_both():
    return pentagon_problem("both")


def random_spd(rng, n, scale=1.0):
    """Random symmetric positive definite matrix with bounded condition number."""
    root = rng.normal(size=(n, n))
    return scale * (root @ root.T + n * np.eye(n))
