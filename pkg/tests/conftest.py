import pytest

from mqm.complexes import RaagModel, StaircaseModel, WedgeModel
from mqm.graphs import cycle_graph, free_graph, path_graph


@pytest.fixture(scope="session")
def f2():
    return free_graph("a", "b")


@pytest.fixture(scope="session")
def c4():
    """4-cycle a-b-c-d-a: the smallest graph with a genuine 2-dimensional
    model that is not a tree or a product of intervals we care about."""
    return cycle_graph("a", "b", "c", "d")


@pytest.fixture(scope="session")
def p4():
    return path_graph("a", "b", "c", "d")


@pytest.fixture(scope="session")
def f2_model(f2):
    return RaagModel(f2)


@pytest.fixture(scope="session")
def c4_model(c4):
    return RaagModel(c4)


@pytest.fixture(scope="session")
def p4_model(p4):
    return RaagModel(p4)


@pytest.fixture(scope="session")
def edge_model():
    """Single edge a-b: A(G) = Z^2, the grid."""
    return RaagModel(path_graph("a", "b"))


@pytest.fixture(scope="session")
def stair_model():
    return StaircaseModel()


@pytest.fixture(scope="session")
def wedge2():
    return WedgeModel(2)


@pytest.fixture(scope="session")
def wedge3():
    return WedgeModel(3)
