"""Paving and sparse paving matroids given by their rank-size circuits.

A paving matroid of rank r is determined by its r-element circuits: every
r-subset of the ground set is either a basis or a circuit.  A family is
"sparse" when distinct circuits differ in more than two elements; sparse
families are automatically paving, and the correlation analysis below shows
they are balanced (negative correlation survives in every minor), while
paving matroids in general are not.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from .bitset import check_element, check_ground_size, check_within, drop_bit, elements, full_mask
from .errors import BudgetError, GroundSetError, InvalidBasisError, LoopError, NotPavingError
from .matroid import ExplicitMatroid, is_loop

DEFAULT_MINOR_LIMIT = 200_000


@dataclass(frozen=True)
class CircuitFamily:
    """An r-uniform circuit family on ground set {0..m-1}."""

    m: int
    r: int
    circuits: tuple[int, ...]
    labels: tuple[int, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        check_ground_size(self.m)
        if not 0 <= self.r <= self.m:
            raise GroundSetError(f"rank {self.r} outside [0, {self.m}]")
        circuits = tuple(sorted(set(self.circuits)))
        for c in circuits:
            check_within(c, self.m)
            if c.bit_count() != self.r:
                raise GroundSetError(
                    f"circuit {elements(c)} has size {c.bit_count()}, expected {self.r}"
                )
        object.__setattr__(self, "circuits", circuits)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(self.m)))
        elif len(self.labels) != self.m:
            raise GroundSetError("labels must have one entry per element")

    @classmethod
    def from_sets(cls, m, r, sets, labels=None):
        return cls(m, r, tuple(sum(1 << e for e in s) for s in sets), labels)

    @cached_property
    def circuit_set(self) -> frozenset:
        return frozenset(self.circuits)


def validate_paving(fam: CircuitFamily) -> bool:
    """Whenever two circuits differ in exactly two elements, every r-subset
    of their union must also be a circuit.

    Distance-2 partners of a circuit C are exactly the sets C - x + y, so
    they are found by membership probes rather than scanning all pairs.
    """
    cs = fam.circuit_set
    full = full_mask(fam.m)
    for c in fam.circuits:
        for x in elements(c):
            base = c ^ (1 << x)
            for y in elements(full & ~c):
                other = base | (1 << y)
                if other <= c or other not in cs:
                    continue
                union = c | other
                for z in elements(union):
                    if (union ^ (1 << z)) not in cs:
                        return False
    return True


def validate_sparse(fam: CircuitFamily) -> bool:
    """True iff all distinct circuits differ in more than two elements."""
    cs = fam.circuit_set
    full = full_mask(fam.m)
    for c in fam.circuits:
        for x in elements(c):
            base = c ^ (1 << x)
            for y in elements(full & ~c):
                if (base | (1 << y)) in cs:
                    return False
    return True


def basis_masks_from_circuits(fam: CircuitFamily) -> list[int]:
    """All r-subset masks that are not circuits (may be empty when m == r)."""
    cs = fam.circuit_set
    out = []
    for c in combinations(range(fam.m), fam.r):
        mask = sum(1 << e for e in c)
        if mask not in cs:
            out.append(mask)
    return out


def bases_from_circuits(fam: CircuitFamily) -> ExplicitMatroid:
    """The paving matroid defined by the family; rejects non-paving input."""
    if not validate_paving(fam):
        raise NotPavingError("circuit family violates the paving condition")
    masks = basis_masks_from_circuits(fam)
    if not masks:
        raise InvalidBasisError(
            "family has no bases: every r-subset is a circuit (degenerate m == r case)"
        )
    return ExplicitMatroid(fam.m, fam.r, tuple(masks), fam.labels)


def family_delete(fam: CircuitFamily, e: int) -> CircuitFamily:
    """Induced circuit family of the deletion minor: circuits avoiding e."""
    check_element(e, fam.m)
    circuits = tuple(drop_bit(c, e) for c in fam.circuits if not (c >> e) & 1)
    return CircuitFamily(fam.m - 1, fam.r, circuits, fam.labels[:e] + fam.labels[e + 1 :])


def family_contract(fam: CircuitFamily, e: int) -> CircuitFamily:
    """Induced circuit family of the contraction minor: {C - e : e in C}."""
    check_element(e, fam.m)
    if fam.r == 0:
        raise GroundSetError("cannot contract in a rank-0 family")
    circuits = tuple(drop_bit(c, e) for c in fam.circuits if (c >> e) & 1)
    return CircuitFamily(fam.m - 1, fam.r - 1, circuits, fam.labels[:e] + fam.labels[e + 1 :])


def random_sparse_family(
    m: int, r: int, n_circuits: int, seed: int, max_tries: int | None = None
) -> CircuitFamily:
    """Greedy seeded packing of r-subsets at pairwise distance > 2.

    Draws r-subsets uniformly and keeps those whose symmetric difference with
    every accepted circuit exceeds 2.  ``n_circuits`` is a target, not a
    promise: the draw budget may run out first (sparse packings saturate).
    """
    check_ground_size(m)
    if not 0 <= r <= m:
        raise GroundSetError(f"rank {r} outside [0, {m}]")
    rng = random.Random(seed)
    if max_tries is None:
        max_tries = 400 * max(1, n_circuits)
    accepted: list[int] = []
    universe = list(range(m))
    for _ in range(max_tries):
        if len(accepted) >= n_circuits:
            break
        cand = sum(1 << e for e in rng.sample(universe, r))
        if all((cand ^ c).bit_count() > 2 for c in accepted):
            accepted.append(cand)
    return CircuitFamily(m, r, tuple(accepted))


@dataclass(frozen=True)
class CorrelationReport:
    """Exact four-way partition of the bases by membership of e and f.

    lhs = n_ef * n_neither and rhs = n_e_not_f * n_f_not_e are exact
    integers; negative correlation of e and f is lhs <= rhs, the cross
    product form of Pr(e in X | f in X) <= Pr(e in X).  ``ratio`` is
    lhs/rhs in lowest terms, or None when rhs = 0 (then negative
    correlation degenerates to lhs = 0).
    """

    e: int
    f: int
    n_ef: int
    n_e_not_f: int
    n_f_not_e: int
    n_neither: int
    lhs: int
    rhs: int
    negatively_correlated: bool
    ratio: Fraction | None

    @property
    def total(self) -> int:
        return self.n_ef + self.n_e_not_f + self.n_f_not_e + self.n_neither


def correlation(M: ExplicitMatroid, e: int, f: int) -> CorrelationReport:
    """Exact correlation report for the pair (e, f); f must not be a loop."""
    check_element(e, M.m)
    check_element(f, M.m)
    if e == f:
        raise GroundSetError("correlation needs two distinct elements")
    if is_loop(M, f):
        raise LoopError(
            f"element {M.labels[f]} is a loop; Pr(f in X) = 0", element=M.labels[f]
        )
    be = 1 << e
    bf = 1 << f
    n_ef = n_e = n_f = n_none = 0
    for b in M.bases:
        if b & be:
            if b & bf:
                n_ef += 1
            else:
                n_e += 1
        elif b & bf:
            n_f += 1
        else:
            n_none += 1
    lhs = n_ef * n_none
    rhs = n_e * n_f
    ratio = Fraction(lhs, rhs) if rhs else None
    return CorrelationReport(
        e=e,
        f=f,
        n_ef=n_ef,
        n_e_not_f=n_e,
        n_f_not_e=n_f,
        n_neither=n_none,
        lhs=lhs,
        rhs=rhs,
        negatively_correlated=lhs <= rhs,
        ratio=ratio,
    )


def _partition(M, e, f):
    be, bf = 1 << e, 1 << f
    parts = {(True, True): [], (True, False): [], (False, True): [], (False, False): []}
    for b in M.bases:
        parts[(bool(b & be), bool(b & bf))].append(b)
    return parts


def lemma2_vertex_degree_bounds(M: ExplicitMatroid, e: int, f: int) -> bool:
    """Degree bounds in the bipartite slices of the exchange graph.

    For a matroid built from a sparse family: every basis containing both e
    and f has at least m-r-1 neighbors containing e only, and every basis
    containing neither has at least r-1 neighbors containing f only; the
    reverse directions are capped at r-1 and m-r-1 respectively by counting
    candidate exchanges.
    """
    check_element(e, M.m)
    check_element(f, M.m)
    if e == f:
        raise GroundSetError("need two distinct elements")
    m, r = M.m, M.r
    bs = M.basis_set
    full = full_mask(m)
    bf = 1 << f
    parts = _partition(M, e, f)

    for X in parts[(True, True)]:
        # neighbors in B_{e,not f} are X - f + g for g outside X
        count = sum(1 for g in elements(full & ~X) if (X ^ bf) | (1 << g) in bs)
        if count < m - r - 1:
            return False
    for X in parts[(True, False)]:
        count = sum(
            1 for g in elements(X & ~(1 << e)) if (X ^ (1 << g)) | bf in bs
        )
        if count > r - 1:
            return False
    for X in parts[(False, False)]:
        count = sum(1 for g in elements(X) if (X ^ (1 << g)) | bf in bs)
        if count < r - 1:
            return False
    for X in parts[(False, True)]:
        count = sum(
            1 for g in elements(full & ~X & ~(1 << e)) if (X ^ bf) | (1 << g) in bs
        )
        if count > m - r - 1:
            return False
    return True


def lemma2_inequalities(M: ExplicitMatroid, e: int, f: int) -> tuple[bool, bool]:
    """Exact truth of the two edge-counting inequalities for the pair (e, f).

    First: (m-r-1) * n_ef <= (r-1) * n_e_not_f  (needs a sparse family).
    Second: (r-1) * n_neither <= (m-r-1) * n_f_not_e  (any paving matroid).
    """
    rep = correlation(M, e, f)
    m, r = M.m, M.r
    first = (m - r - 1) * rep.n_ef <= (r - 1) * rep.n_e_not_f
    second = (r - 1) * rep.n_neither <= (m - r - 1) * rep.n_f_not_e
    return first, second


def dyer_density_bound(M: ExplicitMatroid) -> bool:
    """Diagnostic: |B| >= (1 - (m-r)/(2 m^2)) * C(m, r), in exact rationals.

    Dense-enough basis sets satisfy negative correlation; this predicate only
    reports the density test, the implication itself is checked empirically
    by the test suite and never assumed.
    """
    m, r = M.m, M.r
    threshold = Fraction(2 * m * m - (m - r), 2 * m * m) * comb(m, r)
    return Fraction(len(M.bases)) >= threshold


@dataclass(frozen=True)
class BalanceViolation:
    """Witness of positive correlation: minor spec plus the offending pair.

    Masks and elements are in the labels of the matroid the scan started
    from, not in the re-indexed coordinates of the minor.
    """

    deleted: int
    contracted: int
    e: int
    f: int
    report: CorrelationReport


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    violation: BalanceViolation | None
    minors_checked: int


def _minor_basis_masks(bases, deleted, contracted):
    return [b for b in bases if not (b & deleted) and (b & contracted) == contracted]


def _is_balanced_naive(M: ExplicitMatroid, minor_limit: int = DEFAULT_MINOR_LIMIT) -> BalanceResult:
    """Reference implementation: pure-Python scan, exact integer arithmetic."""
    if 3 ** M.m > minor_limit:
        raise BudgetError(
            f"refused: too large: 3^{M.m} minor specs exceed limit {minor_limit}"
        )
    full = full_mask(M.m)
    checked = 0
    for deleted in range(full + 1):
        comp = full & ~deleted
        contracted = 0
        while True:
            sub = _minor_basis_masks(M.bases, deleted, contracted)
            if sub:
                checked += 1
                alive = elements(full & ~(deleted | contracted))
                for i, e in enumerate(alive):
                    for f in alive[i + 1 :]:
                        be, bf = 1 << e, 1 << f
                        n_ef = n_e = n_f = n_none = 0
                        for b in sub:
                            if b & be:
                                if b & bf:
                                    n_ef += 1
                                else:
                                    n_e += 1
                            elif b & bf:
                                n_f += 1
                            else:
                                n_none += 1
                        if n_ef * n_none > n_e * n_f:
                            rep = CorrelationReport(
                                e=e,
                                f=f,
                                n_ef=n_ef,
                                n_e_not_f=n_e,
                                n_f_not_e=n_f,
                                n_neither=n_none,
                                lhs=n_ef * n_none,
                                rhs=n_e * n_f,
                                negatively_correlated=False,
                                ratio=Fraction(n_ef * n_none, n_e * n_f) if n_e * n_f else None,
                            )
                            return BalanceResult(
                                False,
                                BalanceViolation(deleted, contracted, e, f, rep),
                                checked,
                            )
            contracted = (contracted - comp) & comp
            if contracted == 0:
                break
    return BalanceResult(True, None, checked)


def is_balanced(M: ExplicitMatroid, minor_limit: int = DEFAULT_MINOR_LIMIT) -> BalanceResult:
    """Scan every valid minor for a positively correlated element pair.

    Minors are enumerated as disjoint (deleted, contracted) mask pairs in
    increasing (deleted, contracted) order; specs whose filtered basis set is
    empty correspond to no stepwise-reachable minor and are skipped.  The
    scan stops at the first violation, which by the enumeration order is the
    least witness (deleted, contracted, e, f); a True verdict means the full
    scan ran.  Refuses up front when 3^m exceeds ``minor_limit``.

    Counting is vectorized with 64-bit integers; the n_ef-style counts are
    bounded by |B|, so products stay exact for |B| < 2^31 (enforced).
    """
    if 3 ** M.m > minor_limit:
        raise BudgetError(
            f"refused: too large: 3^{M.m} minor specs exceed limit {minor_limit}"
        )
    if len(M.bases) >= 2**31:
        raise BudgetError("refused: too large: basis count overflows exact vector scan")
    full = full_mask(M.m)
    masks = np.asarray(M.bases, dtype=np.uint64)
    all_bits = np.arange(M.m, dtype=np.uint64)
    checked = 0
    for deleted in range(full + 1):
        sel_d = (masks & np.uint64(deleted)) == 0
        if not sel_d.any():
            continue
        masks_d = masks[sel_d]
        comp = full & ~deleted
        contracted = 0
        while True:
            k = np.uint64(contracted)
            sub = masks_d[(masks_d & k) == k]
            if sub.size:
                checked += 1
                removed = deleted | contracted
                alive = all_bits[[not (removed >> i) & 1 for i in range(M.m)]]
                if alive.size >= 2:
                    memb = ((sub[:, None] >> alive[None, :]) & np.uint64(1)).astype(np.int64)
                    counts = memb.T @ memb  # counts[i, j] = bases containing both
                    per = np.diagonal(counts)
                    total = sub.size
                    n_none = total - per[:, None] - per[None, :] + counts
                    lhs = counts * n_none
                    rhs = (per[:, None] - counts) * (per[None, :] - counts)
                    viol = lhs > rhs
                    np.fill_diagonal(viol, False)
                    if viol.any():
                        i, j = map(int, np.argwhere(viol)[0])
                        e, f = int(alive[i]), int(alive[j])
                        rep = CorrelationReport(
                            e=e,
                            f=f,
                            n_ef=int(counts[i, j]),
                            n_e_not_f=int(per[i] - counts[i, j]),
                            n_f_not_e=int(per[j] - counts[i, j]),
                            n_neither=int(n_none[i, j]),
                            lhs=int(lhs[i, j]),
                            rhs=int(rhs[i, j]),
                            negatively_correlated=False,
                            ratio=Fraction(int(lhs[i, j]), int(rhs[i, j]))
                            if rhs[i, j]
                            else None,
                        )
                        return BalanceResult(
                            False,
                            BalanceViolation(deleted, contracted, e, f, rep),
                            checked,
                        )
            contracted = (contracted - comp) & comp
            if contracted == 0:
                break
    return BalanceResult(True, None, checked)
