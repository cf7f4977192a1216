from itertools import permutations
from math import comb, factorial

import pytest

from pavingwalk.bitset import mask_of
from pavingwalk.errors import GroundSetError
from pavingwalk.hamilton import (
    Graph,
    complete_graph,
    cycle_graph,
    from_hamiltonian_cycles,
    hamiltonian_count_identity,
    petersen_graph,
)
from pavingwalk.paving import basis_masks_from_circuits, validate_sparse


def oracle_cycle_masks(g: Graph) -> set[int]:
    """Independent enumeration: all vertex orders starting at 0, one
    representative per cycle (second vertex smaller than last)."""
    edge_index = {}
    for i, (u, v) in enumerate(g.edges):
        edge_index[(u, v)] = edge_index[(v, u)] = i
    found = set()
    for perm in permutations(range(1, g.n)):
        if perm[0] > perm[-1]:
            continue
        tour = (0,) + perm
        mask = 0
        ok = True
        for a, b in zip(tour, tour[1:] + (0,)):
            idx = edge_index.get((a, b))
            if idx is None:
                ok = False
                break
            mask |= 1 << idx
        if ok:
            found.add(mask)
    return found


def test_k4_cycles_match_oracle():
    g = complete_graph(4)
    fam = from_hamiltonian_cycles(g)
    assert len(fam.circuits) == factorial(4 - 1) // 2 == 3
    assert set(fam.circuits) == oracle_cycle_masks(g)


def test_k5_cycles_match_oracle():
    g = complete_graph(5)
    fam = from_hamiltonian_cycles(g)
    assert (fam.m, fam.r) == (10, 5)
    assert len(fam.circuits) == factorial(5 - 1) // 2 == 12
    assert set(fam.circuits) == oracle_cycle_masks(g)


def test_c5_single_cycle():
    fam = from_hamiltonian_cycles(cycle_graph(5))
    assert fam.circuits == (mask_of(range(5)),)


def test_cycles_always_sparse():
    for g in (complete_graph(4), complete_graph(5), complete_graph(6), petersen_graph()):
        assert validate_sparse(from_hamiltonian_cycles(g))


def test_identity_k4_c5_k5():
    assert hamiltonian_count_identity(complete_graph(4)) == (3, 3, True)
    assert hamiltonian_count_identity(cycle_graph(5)) == (1, 1, True)
    assert hamiltonian_count_identity(complete_graph(5)) == (12, 12, True)


def test_identity_petersen():
    g = petersen_graph()
    assert oracle_cycle_masks(g) == set()
    cycles, expected, ok = hamiltonian_count_identity(g)
    assert (cycles, expected, ok) == (0, 0, True)
    fam = from_hamiltonian_cycles(g)
    assert len(basis_masks_from_circuits(fam)) == comb(15, 10)


def test_degenerate_m_equals_r():
    fam = from_hamiltonian_cycles(cycle_graph(5))
    assert basis_masks_from_circuits(fam) == []


def test_graph_validation():
    with pytest.raises(GroundSetError):
        Graph(3, ((0, 0),))
    with pytest.raises(GroundSetError):
        Graph(3, ((0, 1), (1, 0)))
    with pytest.raises(GroundSetError):
        Graph(3, ((0, 3),))
    with pytest.raises(GroundSetError):
        from_hamiltonian_cycles(Graph(2, ((0, 1),)))
