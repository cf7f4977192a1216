"""Bases-exchange graph: expansion, random walk, and approximate counting.

The bases-exchange graph has the bases as vertices and an edge whenever two
bases differ in exactly one exchange (symmetric difference 2).  The walk
moves from basis X to each neighbor with probability exactly 1/(r*m) and
stays put with the leftover mass, so the uniform distribution on bases is
stationary and the chain is aperiodic.  Sampling near-uniform bases then
turns into approximate counting through the usual delete/contract
self-reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import ceil, comb, log

import numpy as np

from . import _rng
from .bitset import elements, full_mask
from .errors import BudgetError, GroundSetError, InvalidBasisError, NotPavingError
from .matroid import ExplicitMatroid
from .paving import CircuitFamily, basis_masks_from_circuits, family_contract, family_delete, validate_paving

DEFAULT_GRAPH_BUDGET = 200_000
DEFAULT_EXPANSION_LIMIT = 24
DEFAULT_DISTRIBUTION_BUDGET = 20_000


@dataclass(frozen=True)
class ExchangeGraph:
    """Adjacency over the bases, CSR-style; vertex order is sorted masks."""

    m: int
    r: int
    vertices: tuple[int, ...]
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.indices) // 2

    def degree(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]


def build_exchange_graph(
    M: ExplicitMatroid, vertex_budget: int = DEFAULT_GRAPH_BUDGET
) -> ExchangeGraph:
    """Edges {X, Y} with |X xor Y| = 2, built pattern-by-pattern.

    For each two-bit pattern p, the bases X with exactly one bit of p set
    have their partner X xor p looked up by binary search, which covers
    every exchange edge twice (once per endpoint) and yields the full
    directed CSR structure.
    """
    n = len(M.bases)
    if n > vertex_budget:
        raise BudgetError(f"refused: too large: {n} bases exceed graph budget {vertex_budget}")
    masks = np.asarray(M.bases, dtype=np.uint64)
    srcs: list[np.ndarray] = []
    dsts: list[np.ndarray] = []
    for x in range(M.m):
        for y in range(x + 1, M.m):
            p = np.uint64((1 << x) | (1 << y))
            t = masks & p
            sel = (t != 0) & (t != p)
            if not sel.any():
                continue
            cand = masks[sel] ^ p
            pos = np.searchsorted(masks, cand)
            pos = np.minimum(pos, n - 1)
            ok = masks[pos] == cand
            srcs.append(np.nonzero(sel)[0][ok])
            dsts.append(pos[ok])
    if srcs:
        src = np.concatenate(srcs)
        dst = np.concatenate(dsts)
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
    else:
        src = np.empty(0, dtype=np.int64)
        dst = np.empty(0, dtype=np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    graph = ExchangeGraph(M.m, M.r, M.bases, indptr, dst.astype(np.int32))
    max_deg = int(np.diff(indptr).max()) if n else 0
    if max_deg > M.r * (M.m - M.r):
        raise GroundSetError("degree exceeds r*(m-r); duplicate bases?")
    return graph


def is_connected(g: ExchangeGraph) -> bool:
    n = g.n_vertices
    if n <= 1:
        return True
    visited = np.zeros(n, dtype=bool)
    visited[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        counts = g.indptr[frontier + 1] - g.indptr[frontier]
        total = int(counts.sum())
        if total == 0:
            break
        starts = np.repeat(g.indptr[frontier], counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        nbrs = g.indices[starts + offsets]
        fresh = nbrs[~visited[nbrs]]
        if fresh.size == 0:
            break
        fresh = np.unique(fresh)
        visited[fresh] = True
        frontier = fresh
    return bool(visited.all())


def edge_expansion(g: ExchangeGraph, exhaustive_limit: int = DEFAULT_EXPANSION_LIMIT) -> Fraction:
    """Exact min of |cut(A)| / |A| over nonempty A with |A| <= n/2.

    All 2^n vertex subsets are enumerated via a subset DP: appending vertex v
    to A adds deg(v) to the cut and removes 2 for each neighbor already in A.
    Exact rational comparison happens on the per-cardinality minima, so no
    floating point enters the result.  Refuses (rather than approximates)
    above ``exhaustive_limit`` vertices.
    """
    n = g.n_vertices
    if n > exhaustive_limit:
        raise BudgetError(
            f"refused: too large: {n} vertices exceed exhaustive cut limit {exhaustive_limit}"
        )
    if n < 2:
        raise GroundSetError("edge expansion needs at least two vertices")
    adj_mask = np.zeros(n, dtype=np.uint32)
    deg = np.zeros(n, dtype=np.int32)
    for v in range(n):
        nb = g.neighbors(v)
        deg[v] = len(nb)
        adj_mask[v] = np.bitwise_or.reduce((np.uint32(1) << nb.astype(np.uint32)), initial=np.uint32(0))
    size = 1 << n
    cut = np.zeros(size, dtype=np.int32)
    pc = np.zeros(size, dtype=np.uint8)
    for v in range(n):
        block = 1 << v
        idx = np.arange(block, dtype=np.uint32)
        nb_in = pc[idx & adj_mask[v]].astype(np.int32)
        cut[block : 2 * block] = cut[:block] + deg[v] - 2 * nb_in
        pc[block : 2 * block] = pc[:block] + 1
    best: Fraction | None = None
    for s in range(1, n // 2 + 1):
        sel = pc == s
        sel[0] = False
        if not sel.any():
            continue
        c = int(cut[sel].min())
        cand = Fraction(c, s)
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def tv_distance(p, q):
    """Total variation distance: half the L1 distance.

    Exact when both arguments hold Fractions; float otherwise.
    """
    if len(p) != len(q):
        raise GroundSetError(f"length mismatch: {len(p)} vs {len(q)}")
    if isinstance(p, np.ndarray) or isinstance(q, np.ndarray):
        return float(np.abs(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)).sum() / 2)
    total = sum(abs(a - b) for a, b in zip(p, q))
    return total / 2


def _adjacency_lists(M: ExplicitMatroid):
    bs = {mask: i for i, mask in enumerate(M.bases)}
    full = full_mask(M.m)
    adj = []
    for X in M.bases:
        row = []
        for e in elements(X):
            base = X ^ (1 << e)
            for f in elements(full & ~X):
                j = bs.get(base | (1 << f))
                if j is not None:
                    row.append(j)
        adj.append(row)
    return adj


def exact_walk_distribution(
    M: ExplicitMatroid,
    start: int,
    t: int,
    exact: bool = False,
    vertex_budget: int = DEFAULT_DISTRIBUTION_BUDGET,
):
    """Distribution over bases after t steps from the basis ``start``.

    Indexed like ``M.bases``.  With ``exact=True`` the vector is a list of
    Fractions carried as integer numerators over the common denominator
    (r*m)^t, so results are exact at any t; otherwise float64.
    """
    n = len(M.bases)
    if n > vertex_budget:
        raise BudgetError(
            f"refused: too large: {n} bases exceed distribution budget {vertex_budget}"
        )
    if start not in M.basis_set:
        raise InvalidBasisError("start state is not a basis")
    if t < 0:
        raise GroundSetError("step count must be non-negative")
    adj = _adjacency_lists(M)
    rm = M.r * M.m
    i0 = M.bases.index(start)
    if exact:
        num = [0] * n
        num[i0] = 1
        denom = 1
        for _ in range(t):
            nxt = [num[i] * (rm - len(adj[i])) for i in range(n)]
            for i, row in enumerate(adj):
                ni = num[i]
                if ni:
                    for j in row:
                        nxt[j] += ni
            num = nxt
            denom *= rm
        return [Fraction(x, denom) for x in num]
    vec = np.zeros(n)
    vec[i0] = 1.0
    degs = np.array([len(row) for row in adj], dtype=float)
    src = np.repeat(np.arange(n), [len(row) for row in adj])
    dst = np.array([j for row in adj for j in row], dtype=np.int64)
    for _ in range(t):
        inflow = np.bincount(dst, weights=vec[src], minlength=n)
        vec = vec * (1.0 - degs / rm) + inflow / rm
    return vec


def apply_walk_step(M: ExplicitMatroid, dist):
    """One exact application of the transition rule to a distribution vector.

    Works entry-wise with whatever number type the vector holds; with
    Fractions the result is exact, which is how the uniform-is-stationary
    property is checked to full precision.
    """
    n = len(M.bases)
    if len(dist) != n:
        raise GroundSetError(f"length mismatch: {len(dist)} vs {n} bases")
    adj = _adjacency_lists(M)
    rm = M.r * M.m
    out = [dist[i] * (rm - len(adj[i])) for i in range(n)]
    for i, row in enumerate(adj):
        di = dist[i]
        for j in row:
            out[j] += di
    return [x / rm for x in out]


def tv_decay_exact(M: ExplicitMatroid, start: int, t_max: int) -> list[Fraction]:
    """Exact TV distance to uniform after t = 0..t_max steps.

    The walk vector is carried as integer numerators over the common
    denominator (r*m)^t, and each TV value is a single reduced Fraction, so
    monotonicity comparisons are exact however large t gets.
    """
    if start not in M.basis_set:
        raise InvalidBasisError("start state is not a basis")
    n = len(M.bases)
    adj = _adjacency_lists(M)
    rm = M.r * M.m
    num = [0] * n
    num[M.bases.index(start)] = 1
    denom = 1
    out = []
    for _ in range(t_max + 1):
        # TV = sum |num_i/denom - 1/n| / 2 = sum |n*num_i - denom| / (2*n*denom)
        s = sum(abs(n * x - denom) for x in num)
        out.append(Fraction(s, 2 * n * denom))
        nxt = [num[i] * (rm - len(adj[i])) for i in range(n)]
        for i, row in enumerate(adj):
            ni = num[i]
            if ni:
                for j in row:
                    nxt[j] += ni
        num = nxt
        denom *= rm
    return out


def uniform_distribution(M: ExplicitMatroid, exact: bool = False):
    n = len(M.bases)
    if exact:
        return [Fraction(1, n)] * n
    return np.full(n, 1.0 / n)


def lex_least_basis(M: ExplicitMatroid) -> int:
    """The basis whose ascending element list is lexicographically least."""
    return min(M.bases, key=elements)


@dataclass(frozen=True)
class WalkState:
    """Current basis plus the deterministic generator position.

    ``key`` identifies the chain; ``unit_index`` counts consumed 32-bit
    draws, so a state can be replayed or resumed exactly.
    """

    current: int
    step_count: int
    key: int
    unit_index: int


def walk_state(M: ExplicitMatroid, seed: int, chain: int = 0, start: int | None = None) -> WalkState:
    if start is None:
        start = lex_least_basis(M)
    elif start not in M.basis_set:
        raise InvalidBasisError("start state is not a basis")
    return WalkState(start, 0, _rng.chain_key(seed, chain), 0)


def walk_step(M: ExplicitMatroid, state: WalkState) -> WalkState:
    """One step of the exchange walk.

    A single exact uniform draw over r*(m-r)*m outcomes picks the exchange
    pair (e out of X, f outside X) and an acceptance variate v; the move to
    X - e + f happens when it is a basis and v < m - r, which gives each
    neighbor probability exactly 1/(r*m) and leaves the rest on X.
    """
    X = state.current
    m, r = M.m, M.r
    mr = m - r
    npairs = r * mr
    if npairs == 0:
        return WalkState(X, state.step_count + 1, state.key, state.unit_index)
    w, ui = _rng.uniform_below(npairs * m, state.key, state.unit_index)
    k, v = divmod(w, m)
    e = elements(X)[k // mr]
    f = elements(full_mask(m) & ~X)[k % mr]
    cand = (X ^ (1 << e)) | (1 << f)
    nxt = cand if v < mr and cand in M.basis_set else X
    return WalkState(nxt, state.step_count + 1, state.key, ui)


def _walk_tables(M: ExplicitMatroid):
    """Move table: move[i, a*(m-r)+b] is the vertex reached from basis i by
    swapping its a-th element for the b-th non-element, or -1."""
    m, r = M.m, M.r
    mr = m - r
    npairs = r * mr
    n = len(M.bases)
    index = {mask: i for i, mask in enumerate(M.bases)}
    move = np.full((n, max(npairs, 1)), -1, dtype=np.int32)
    full = full_mask(m)
    for i, X in enumerate(M.bases):
        el = elements(X)
        ce = elements(full & ~X)
        for a, e in enumerate(el):
            base = X ^ (1 << e)
            row = a * mr
            for b, f in enumerate(ce):
                j = index.get(base | (1 << f))
                if j is not None:
                    move[i, row + b] = j
    return move


def sample_bases(M: ExplicitMatroid, steps: int, seed: int, count: int = 1) -> list[int]:
    """Endpoints of ``count`` independent chains of ``steps`` steps each.

    Chain c uses the deterministic key chain_key(seed, c) and starts at the
    lexicographically least basis, so results are reproducible bit-for-bit
    and agree with iterating :func:`walk_step` on the same chain.
    """
    if steps < 0 or count < 1:
        raise GroundSetError("steps must be >= 0 and count >= 1")
    from . import _kernel

    move = _walk_tables(M)
    start_idx = M.bases.index(lex_least_basis(M))
    out = _kernel.run_chains(
        _rng.mix64(seed), count, steps, start_idx, move, M.m, M.m - M.r
    )
    return [M.bases[i] for i in out]


def sample_basis(M: ExplicitMatroid, steps: int, seed: int) -> int:
    return sample_bases(M, steps, seed, 1)[0]


def default_sample_count(epsilon: float) -> int:
    return ceil(75 / (epsilon * epsilon))


def default_walk_length(m: int, r: int, epsilon: float) -> int:
    """Heuristic walk length r*m*(ln r + ln(1/eps) + 5).

    Motivated by the O(r m log r) mixing behavior of balanced matroids; the
    constant is not derivable from theory and is validated empirically by
    the acceptance suite.  Exposed as a knob everywhere it is used.
    """
    if m <= 0 or r <= 0:
        return 0
    return ceil(r * m * (log(r) + log(1 / epsilon) + 5))


@dataclass(frozen=True)
class ChainRecord:
    """One self-reduction stage: which element was pinned and how."""

    element: int
    branch: str  # "delete" or "contract"
    ratio: Fraction
    samples: int
    steps: int


@dataclass(frozen=True)
class CountEstimate:
    estimate: Fraction
    epsilon: float
    chain: tuple[ChainRecord, ...]
    base_count: int
    samples_per_stage: int

    def recomputed_estimate(self) -> Fraction:
        return reduce(lambda acc, rec: acc / rec.ratio, self.chain, Fraction(self.base_count))


def approx_count(
    fam: CircuitFamily,
    epsilon: float,
    seed: int,
    samples: int | None = None,
    steps: int | None = None,
) -> CountEstimate:
    """Estimate the number of bases of the paving matroid given by ``fam``.

    Standard sampling-to-counting self-reduction: at each stage the
    least-index element e that is neither loop nor coloop is pinned, the
    fraction p of near-uniform sampled bases containing e is measured, and
    the recursion continues on the contraction (ratio p) when p >= 1/2, else
    on the deletion (ratio 1 - p), keeping every recorded ratio >= 1/2.
    Loops are deleted and coloops contracted with exact ratio 1.  The base
    case, an empty ground set, has exactly one basis; the estimate is the
    base count divided by the product of the recorded ratios.  Which element
    to pin and the per-stage sample and walk lengths are implementation
    choices, not forced by the theory; the defaults are ceil(75/eps^2)
    samples and the :func:`default_walk_length` heuristic.
    """
    if not 0 < epsilon < 1:
        raise GroundSetError(f"epsilon must be in (0, 1), got {epsilon}")
    if samples is not None and samples < 1:
        raise GroundSetError("samples must be positive")
    if steps is not None and steps < 0:
        raise GroundSetError("steps must be non-negative")
    if not validate_paving(fam):
        raise NotPavingError("circuit family violates the paving condition")
    from . import _kernel

    n_samples = samples if samples is not None else default_sample_count(epsilon)
    records: list[ChainRecord] = []
    cur = fam
    stage = 0
    while True:
        masks = basis_masks_from_circuits(cur)
        if not masks:
            raise InvalidBasisError(
                "family has no bases: every r-subset is a circuit (degenerate m == r case)"
            )
        if cur.m == 0:
            base_count = len(masks)
            break
        union = 0
        inter = full_mask(cur.m)
        for b in masks:
            union |= b
            inter &= b
        loops = [i for i in range(cur.m) if not (union >> i) & 1]
        coloops = elements(inter)
        if loops or coloops:
            for i in sorted(loops + coloops, reverse=True):
                if (inter >> i) & 1:
                    records.append(ChainRecord(cur.labels[i], "contract", Fraction(1), 0, 0))
                    cur = family_contract(cur, i)
                else:
                    records.append(ChainRecord(cur.labels[i], "delete", Fraction(1), 0, 0))
                    cur = family_delete(cur, i)
            continue
        # every element is now neither loop nor coloop; pin the least index
        matroid = ExplicitMatroid(cur.m, cur.r, tuple(masks), cur.labels)
        stage_steps = steps if steps is not None else default_walk_length(cur.m, cur.r, epsilon)
        move = _walk_tables(matroid)
        start_idx = matroid.bases.index(lex_least_basis(matroid))
        endpoints = _kernel.run_chains(
            _rng.mix64(_rng.stage_seed(seed, stage)),
            n_samples,
            stage_steps,
            start_idx,
            move,
            matroid.m,
            matroid.m - matroid.r,
        )
        masks_arr = np.asarray(matroid.bases, dtype=np.uint64)
        hits = int(((masks_arr[endpoints] >> np.uint64(0)) & np.uint64(1)).sum())
        p = Fraction(hits, n_samples)
        if p >= Fraction(1, 2):
            records.append(ChainRecord(cur.labels[0], "contract", p, n_samples, stage_steps))
            cur = family_contract(cur, 0)
        else:
            records.append(ChainRecord(cur.labels[0], "delete", 1 - p, n_samples, stage_steps))
            cur = family_delete(cur, 0)
        stage += 1
    estimate = Fraction(base_count)
    for rec in records:
        estimate /= rec.ratio
    return CountEstimate(
        estimate=estimate,
        epsilon=epsilon,
        chain=tuple(records),
        base_count=base_count,
        samples_per_stage=n_samples,
    )
