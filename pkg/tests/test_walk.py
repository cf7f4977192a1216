import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pavingwalk.bitset import elements, mask_of
from pavingwalk.errors import BudgetError, GroundSetError, InvalidBasisError
from pavingwalk.matroid import ExplicitMatroid, exact_count, uniform_matroid
from pavingwalk.paving import CircuitFamily, bases_from_circuits, random_sparse_family
from pavingwalk.walk import (
    apply_walk_step,
    approx_count,
    build_exchange_graph,
    edge_expansion,
    exact_walk_distribution,
    is_connected,
    lex_least_basis,
    sample_bases,
    sample_basis,
    tv_decay_exact,
    tv_distance,
    uniform_distribution,
    walk_state,
    walk_step,
)


def naive_edge_expansion(M):
    """Brute-force oracle: explicit cut counting over all vertex subsets."""
    n = len(M.bases)
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if (M.bases[i] ^ M.bases[j]).bit_count() == 2
    ]
    best = None
    for size in range(1, n // 2 + 1):
        for subset in combinations(range(n), size):
            inside = set(subset)
            cut = sum(1 for i, j in edges if (i in inside) != (j in inside))
            cand = Fraction(cut, size)
            if best is None or cand < best:
                best = cand
    return best


def test_build_graph_u12():
    g = build_exchange_graph(uniform_matroid(2, 1))
    assert g.n_vertices == 2 and g.n_edges == 1
    assert is_connected(g)


def test_build_graph_octahedron():
    g = build_exchange_graph(uniform_matroid(4, 2))
    assert g.n_vertices == 6
    assert all(g.degree(i) == 4 for i in range(6))
    # the non-neighbor of each vertex is its complementary pair
    for i, mask in enumerate(g.vertices):
        nbrs = {g.vertices[j] for j in g.neighbors(i)}
        assert nbrs == {v for v in g.vertices if (v ^ mask).bit_count() == 2}
    assert is_connected(g)


def test_graph_budget_refusal():
    with pytest.raises(BudgetError):
        build_exchange_graph(uniform_matroid(6, 3), vertex_budget=10)


def test_disconnected_negative_control():
    # not a matroid: two bases four apart, so the graph has no edges
    M = ExplicitMatroid.from_sets(4, 2, [{0, 1}, {2, 3}])
    g = build_exchange_graph(M)
    assert g.n_edges == 0
    assert not is_connected(g)


def test_degrees_bounded(k4_matroid):
    g = build_exchange_graph(k4_matroid)
    limit = k4_matroid.r * (k4_matroid.m - k4_matroid.r)
    assert all(g.degree(i) <= limit for i in range(g.n_vertices))


def test_edge_expansion_exact_values():
    assert edge_expansion(build_exchange_graph(uniform_matroid(2, 1))) == 1
    assert edge_expansion(build_exchange_graph(uniform_matroid(3, 1))) == 2
    assert edge_expansion(build_exchange_graph(uniform_matroid(4, 2))) == 2


def test_edge_expansion_matches_naive_oracle():
    for seed in range(5):
        rng = random.Random(seed)
        m = rng.randint(4, 6)
        r = rng.randint(1, m - 1)
        fam = random_sparse_family(m, r, rng.randint(0, 2), seed)
        M = bases_from_circuits(fam)
        if not 2 <= len(M.bases) <= 12:
            continue
        g = build_exchange_graph(M)
        assert edge_expansion(g) == naive_edge_expansion(M)


def test_edge_expansion_refuses_above_limit():
    g = build_exchange_graph(uniform_matroid(6, 3))  # 20 vertices
    with pytest.raises(BudgetError):
        edge_expansion(g, exhaustive_limit=16)


def test_tv_distance():
    assert tv_distance([Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]) == 0
    assert tv_distance([Fraction(1), Fraction(0)], [Fraction(1, 2), Fraction(1, 2)]) == Fraction(1, 2)
    with pytest.raises(GroundSetError):
        tv_distance([1.0], [0.5, 0.5])


def test_exact_distribution_point_mass():
    M = uniform_matroid(4, 2)
    d = exact_walk_distribution(M, M.bases[2], 0, exact=True)
    assert d[2] == 1 and sum(d) == 1


def test_u12_uniform_at_t1():
    M = uniform_matroid(2, 1)
    d = exact_walk_distribution(M, M.bases[0], 1, exact=True)
    assert d == [Fraction(1, 2), Fraction(1, 2)]


def test_one_step_distribution_octahedron():
    # from any vertex: 4 neighbors at 1/8 each, self at 1/2
    M = uniform_matroid(4, 2)
    d = exact_walk_distribution(M, M.bases[0], 1, exact=True)
    assert d[0] == Fraction(1, 2)
    assert sorted(d)[:5] == [Fraction(0), Fraction(1, 8), Fraction(1, 8), Fraction(1, 8), Fraction(1, 8)]


def test_uniform_is_exact_fixed_point(k4_matroid):
    for M in (uniform_matroid(4, 2), k4_matroid):
        u = uniform_distribution(M, exact=True)
        assert apply_walk_step(M, u) == u


def test_float_distribution_converges():
    M = uniform_matroid(4, 2)
    d = exact_walk_distribution(M, M.bases[0], 200)
    assert np.abs(d - 1 / 6).max() < 1e-12


def test_tv_decay_monotone_and_comparable():
    M = uniform_matroid(4, 2)
    curve = tv_decay_exact(M, M.bases[0], 60)
    assert all(curve[t + 1] <= curve[t] for t in range(60))
    assert 0 < curve[50] < curve[10] < 1


def test_exact_distribution_budget():
    with pytest.raises(BudgetError):
        exact_walk_distribution(uniform_matroid(8, 4), mask_of(range(4)), 1, vertex_budget=10)
    with pytest.raises(InvalidBasisError):
        exact_walk_distribution(uniform_matroid(4, 2), mask_of({0, 1, 2}), 1)


def test_walk_step_matches_kernel():
    for seed in (0, 1, 17):
        for m, r, target in ((5, 2, 2), (6, 3, 4), (6, 4, 2)):
            fam = random_sparse_family(m, r, target, seed)
            M = bases_from_circuits(fam)
            for chain in (0, 2):
                st_ = walk_state(M, seed, chain=chain)
                for _ in range(83):
                    st_ = walk_step(M, st_)
                endpoints = sample_bases(M, 83, seed, count=chain + 1)
                assert endpoints[chain] == st_.current


def test_kernel_backends_agree(monkeypatch):
    fam = random_sparse_family(7, 3, 4, seed=5)
    M = bases_from_circuits(fam)
    fast = sample_bases(M, 101, seed=9, count=32)
    import pavingwalk._kernel as kernel

    monkeypatch.setattr(kernel, "_NO_NUMBA", True)
    slow = sample_bases(M, 101, seed=9, count=32)
    assert fast == slow


def test_sample_basis_t0_is_lex_least(k4_matroid):
    assert sample_basis(k4_matroid, 0, seed=4) == lex_least_basis(k4_matroid)
    U = uniform_matroid(4, 2)
    assert sample_basis(U, 0, seed=0) == mask_of({0, 1})


def test_lex_least_is_sequence_order():
    # {0,3} precedes {1,2} lexicographically though its mask is larger
    M = ExplicitMatroid.from_sets(4, 2, [{1, 2}, {0, 3}])
    assert lex_least_basis(M) == mask_of({0, 3})


def test_sampling_deterministic(k4_matroid):
    a = sample_bases(k4_matroid, 137, seed=77, count=9)
    b = sample_bases(k4_matroid, 137, seed=77, count=9)
    assert a == b
    c = sample_bases(k4_matroid, 137, seed=78, count=9)
    assert a != c


def test_walk_state_step_counting(k4_matroid):
    st_ = walk_state(k4_matroid, seed=5)
    assert st_.step_count == 0
    st2 = walk_step(k4_matroid, st_)
    assert st2.step_count == 1
    assert st2.current in k4_matroid.basis_set


def test_sampling_frequencies_uniform():
    # chi-square at 99% for 5 degrees of freedom: 15.086
    M = uniform_matroid(4, 2)
    n = 100_000
    samples = sample_bases(M, 500, seed=123, count=n)
    counts = {b: 0 for b in M.bases}
    for s in samples:
        counts[s] += 1
    expected = n / 6
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 < 15.086
    assert all(abs(c / n - 1 / 6) <= 0.01 for c in counts.values())


def test_sampling_frequencies_k4(k4_matroid):
    # chi-square at 99% for 11 degrees of freedom: 24.725
    n = 100_000
    samples = sample_bases(k4_matroid, 1000, seed=321, count=n)
    counts = {b: 0 for b in k4_matroid.bases}
    for s in samples:
        counts[s] += 1
    expected = n / 12
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 < 24.725
    assert all(abs(c / n - 1 / 12) <= 0.01 for c in counts.values())


def test_one_step_sampler_matches_transition_law():
    # each of the 4 octahedron neighbors gets 1/8, the start keeps 1/2
    M = uniform_matroid(4, 2)
    n = 200_000
    start = lex_least_basis(M)
    counts = {b: 0 for b in M.bases}
    for mask in sample_bases(M, 1, seed=555, count=n):
        counts[mask] += 1
    assert abs(counts[start] / n - 0.5) < 0.005
    opposite = mask_of({2, 3})
    assert counts[opposite] == 0
    for b in M.bases:
        if b not in (start, opposite):
            assert abs(counts[b] / n - 0.125) < 0.005


def test_adjacency_symmetric(k4_matroid):
    g = build_exchange_graph(k4_matroid)
    pairs = {(i, int(j)) for i in range(g.n_vertices) for j in g.neighbors(i)}
    assert all((j, i) in pairs for i, j in pairs)
    assert all(i != j for i, j in pairs)


def test_aperiodicity_margin(k4_matroid):
    # every vertex keeps positive holding probability: deg <= r(m-r) < rm
    g = build_exchange_graph(k4_matroid)
    rm = k4_matroid.r * k4_matroid.m
    assert all(g.degree(i) < rm for i in range(g.n_vertices))


def test_approx_count_uniform():
    fam = CircuitFamily(4, 2, ())
    est = approx_count(fam, 0.05, seed=2)
    assert abs(float(est.estimate) - 6) / 6 <= 0.05
    assert est.recomputed_estimate() == est.estimate


def test_approx_count_k4(k4_family):
    est = approx_count(k4_family, 0.05, seed=1)
    assert abs(float(est.estimate) - 12) / 12 <= 0.05
    # ratio-1 bookkeeping for loops/coloops never samples
    for rec in est.chain:
        if rec.ratio == 1:
            assert rec.samples == 0


def test_approx_count_k5(k5_family):
    est = approx_count(k5_family, 0.05, seed=5)
    assert abs(float(est.estimate) - 240) / 240 <= 0.05


def test_approx_count_chain_labels_are_original(k5_family):
    est = approx_count(k5_family, 0.1, seed=0, samples=2000, steps=100)
    seen = [rec.element for rec in est.chain]
    assert len(seen) == len(set(seen))
    assert all(0 <= e < 10 for e in seen)


def test_approx_count_rejects_bad_input():
    from pavingwalk.errors import NotPavingError

    with pytest.raises(GroundSetError):
        approx_count(CircuitFamily(4, 2, ()), 1.5, seed=0)
    bad = CircuitFamily.from_sets(4, 3, [{0, 1, 2}, {0, 1, 3}])
    with pytest.raises(NotPavingError):
        approx_count(bad, 0.05, seed=0)
    degenerate = CircuitFamily.from_sets(3, 3, [{0, 1, 2}])
    with pytest.raises(InvalidBasisError):
        approx_count(degenerate, 0.05, seed=0)
