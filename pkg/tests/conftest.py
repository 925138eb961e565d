import pytest

from zesolver import MixtureParams
from zesolver.hodograph import ImplicitSolution
from zesolver.isochrone import ScenarioSolver


@pytest.fixture(scope="session")
def params():
    return MixtureParams(mu1=5.0, mu2=8.0, q1=2.0, q2=10.0, x1=-1.0, x2=1.0)


@pytest.fixture(scope="session")
def hodo(params):
    return ImplicitSolution(params)


@pytest.fixture(scope="session")
def solver(params):
    return ScenarioSolver(params)
