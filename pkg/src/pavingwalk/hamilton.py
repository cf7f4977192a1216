"""Hamiltonian-cycle circuit families: hard counting inside sparse pavings.

The edge sets of the Hamiltonian cycles of a graph on r vertices pairwise
differ in at least four edges, so they form a sparse circuit family of rank
r over the edge set.  Counting the cycles is then the same as computing
C(m, r) minus the number of bases of the induced matroid.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .bitset import MAX_GROUND_SIZE
from .errors import GroundSetError
from .paving import CircuitFamily, basis_masks_from_circuits


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; the edge list order defines the ground set."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GroundSetError(f"edge ({u}, {v}) outside vertex range 0..{self.n - 1}")
            if u == v:
                raise GroundSetError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GroundSetError(f"multi-edge ({u}, {v})")
            seen.add(key)


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def _hamiltonian_cycle_masks(g: Graph) -> list[int]:
    """Edge-index masks of all Hamiltonian cycles, by exhaustive DFS.

    Cycles start at vertex 0 and are counted once by requiring the second
    vertex on the path to be smaller than the last (kills the reflection).
    """
    n = g.n
    edge_index: dict[tuple[int, int], int] = {}
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(g.edges):
        edge_index[(u, v)] = edge_index[(v, u)] = i
        adj[u].append((v, i))
        adj[v].append((u, i))

    cycles: list[int] = []
    path = [0]

    def extend(visited: int, mask: int):
        u = path[-1]
        if len(path) == n:
            closing = edge_index.get((u, 0))
            if closing is not None and path[1] < path[-1]:
                cycles.append(mask | (1 << closing))
            return
        for v, i in adj[u]:
            if not (visited >> v) & 1:
                path.append(v)
                extend(visited | (1 << v), mask | (1 << i))
                path.pop()

    extend(1, 0)
    return cycles


def from_hamiltonian_cycles(g: Graph) -> CircuitFamily:
    """Circuit family whose circuits are the Hamiltonian cycle edge sets."""
    if g.n < 3:
        raise GroundSetError("Hamiltonian cycles need at least 3 vertices")
    if len(g.edges) > MAX_GROUND_SIZE:
        raise GroundSetError(f"graph has more than {MAX_GROUND_SIZE} edges")
    return CircuitFamily(len(g.edges), g.n, tuple(_hamiltonian_cycle_masks(g)))


def hamiltonian_count_identity(g: Graph) -> tuple[int, int, bool]:
    """(cycle count, C(m, r) - basis count, equality flag).

    The basis count comes from enumerating r-subsets of the edge set, so the
    two sides are computed along genuinely different routes.  Degenerate
    graphs with m == r (a single cycle through every edge) have zero bases
    and the identity still holds.
    """
    fam = from_hamiltonian_cycles(g)
    n_bases = len(basis_masks_from_circuits(fam))
    expected = comb(fam.m, fam.r) - n_bases
    return len(fam.circuits), expected, len(fam.circuits) == expected
