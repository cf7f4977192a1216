import pytest

from pavingwalk.hamilton import complete_graph, from_hamiltonian_cycles
from pavingwalk.paving import bases_from_circuits
from pavingwalk.steiner import build_counterexample, build_steiner_system, counterexample_matroid


@pytest.fixture(scope="session")
def steiner():
    return build_steiner_system()


@pytest.fixture(scope="session")
def ce_family(steiner):
    return build_counterexample(steiner, 0, 1)


@pytest.fixture(scope="session")
def ce_matroid(steiner):
    return counterexample_matroid(steiner, 0, 1)


@pytest.fixture(scope="session")
def k4_family():
    return from_hamiltonian_cycles(complete_graph(4))


@pytest.fixture(scope="session")
def k4_matroid(k4_family):
    return bases_from_circuits(k4_family)


@pytest.fixture(scope="session")
def k5_family():
    return from_hamiltonian_cycles(complete_graph(5))
