"""S(5,8,24) via the extended binary Golay code, and the rank-6 example of a
paving matroid whose distinguished pair is positively correlated.

The 759 octads are the supports of the weight-8 codewords of the extended
[24,12,8] Golay code; taking as circuits all 6-subsets of the octads that
contain exactly one of two distinguished points e, f produces a paving
matroid of rank 6 on 24 points in which e and f are positively correlated,
with exact partition counts 7315 / 22638 / 22638 / 72149 and cross-product
ratio 89015/86436.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from pathlib import Path

from .bitset import elements
from .errors import ConstructionError, FormatError, GroundSetError, VerificationError
from .matroid import ExplicitMatroid
from .paving import CircuitFamily, bases_from_circuits

POINTS = 24
BLOCK_SIZE = 8
N_BLOCKS = 759

# One of the two degree-11 factors of (x^23 + 1)/(x + 1) over GF(2):
# x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1.  Its cyclic shifts generate the
# [23,12,7] quadratic-residue code; a parity column extends it to [24,12,8].
# Correctness does not rest on this constant: the built system is always
# checked by verify_steiner.
GOLAY_GENERATOR = 0b110001110101

_EXPECTED_PARTITION = {"n_ef": 7315, "n_e_not_f": 22638, "n_f_not_e": 22638, "n_neither": 72149}
_EXPECTED_BLOCK_COUNTS = (253, 77, 176)
_EXPECTED_CIRCUIT_COUNTS = (3696, 3696, 2464)
_EXPECTED_RATIO = Fraction(89015, 86436)


@dataclass(frozen=True)
class SteinerSystem:
    """The 759 octads of S(5,8,24) as sorted 24-bit masks."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(sorted(set(self.blocks))))

    @cached_property
    def block_set(self) -> frozenset:
        return frozenset(self.blocks)


def build_steiner_system() -> SteinerSystem:
    """Enumerate the 4096 extended Golay codewords and keep the weight-8 ones.

    The 12 generator rows are shifts of the generator polynomial inside 23
    columns plus an overall parity bit; spanning them by Gray-code XOR visits
    every codeword once.  Aborts if the weight-8 count is not 759.
    """
    parity = 1 << (POINTS - 1)  # generator weight 7 is odd, so parity is always set
    rows = [(GOLAY_GENERATOR << i) | parity for i in range(12)]
    blocks = []
    word = 0
    for i in range(1, 1 << 12):
        word ^= rows[(i & -i).bit_length() - 1]
        if word.bit_count() == BLOCK_SIZE:
            blocks.append(word)
    if len(blocks) != N_BLOCKS:
        raise ConstructionError(
            f"Golay enumeration produced {len(blocks)} octads, expected {N_BLOCKS}"
        )
    return SteinerSystem(tuple(blocks))


def check_steiner(s: SteinerSystem) -> str | None:
    """Exhaustive validity check; returns a failure description or None.

    Checks: 759 distinct blocks of size 8 on 24 points; pairwise
    intersections of at most 4 points; every one of the C(24,5) = 42504
    five-subsets covered by exactly one block.
    """
    if len(s.blocks) != N_BLOCKS:
        return f"block count is {len(s.blocks)}, expected {N_BLOCKS}"
    for b in s.blocks:
        if b >> POINTS:
            return "block contains a point outside 0..23"
        if b.bit_count() != BLOCK_SIZE:
            return f"block {elements(b)} has size {b.bit_count()}, expected {BLOCK_SIZE}"
    blocks = s.blocks
    for i, a in enumerate(blocks):
        for b in blocks[i + 1 :]:
            if (a & b).bit_count() > 4:
                return "two distinct blocks share more than 4 points"
    covered = set()
    for b in blocks:
        for five in combinations(elements(b), 5):
            mask = sum(1 << e for e in five)
            if mask in covered:
                return f"five-subset {list(five)} covered by more than one block"
            covered.add(mask)
    expected = 42504  # C(24, 5)
    if len(covered) != expected:
        return f"only {len(covered)} five-subsets covered, expected {expected}"
    return None


def verify_steiner(s: SteinerSystem) -> bool:
    return check_steiner(s) is None


def block_counts(s: SteinerSystem, e: int, f: int) -> tuple[int, int, int]:
    """(blocks containing e, containing both, containing e but not f)."""
    if e == f:
        raise GroundSetError("need two distinct points")
    if not (0 <= e < POINTS and 0 <= f < POINTS):
        raise GroundSetError("points must lie in 0..23")
    be, bf = 1 << e, 1 << f
    n_e = n_ef = 0
    for b in s.blocks:
        if b & be:
            n_e += 1
            if b & bf:
                n_ef += 1
    return n_e, n_ef, n_e - n_ef


def build_counterexample(s: SteinerSystem, e: int = 0, f: int = 1) -> CircuitFamily:
    """Circuits: all 6-subsets of blocks containing exactly one of e, f.

    Blocks intersect in at most 4 points while each circuit has 6, so no
    circuit can come from two different qualifying blocks; the construction
    asserts this while deduplicating.
    """
    if e == f:
        raise GroundSetError("need two distinct points")
    pair = (1 << e) | (1 << f)
    owner: dict[int, int] = {}
    for block in s.blocks:
        if (block & pair).bit_count() != 1:
            continue
        pts = elements(block)
        for six in combinations(pts, 6):
            mask = sum(1 << p for p in six)
            prev = owner.get(mask)
            if prev is not None and prev != block:
                raise ConstructionError("six-subset contained in two qualifying blocks")
            owner[mask] = block
    return CircuitFamily(POINTS, 6, tuple(owner))


@dataclass(frozen=True)
class CounterexampleReport:
    """All the counts behind the positive-correlation verdict."""

    e: int
    f: int
    n_ef: int
    n_e_not_f: int
    n_f_not_e: int
    n_neither: int
    ratio: Fraction
    block_counts: tuple[int, int, int]
    circuit_counts: tuple[int, int, int]  # circuits with e only, f only, neither

    @property
    def total_bases(self) -> int:
        return self.n_ef + self.n_e_not_f + self.n_f_not_e + self.n_neither

    @property
    def total_circuits(self) -> int:
        return sum(self.circuit_counts)

    @property
    def positively_correlated(self) -> bool:
        return self.ratio > 1


def verify_counterexample(s: SteinerSystem, e: int = 0, f: int = 1) -> CounterexampleReport:
    """Classify all C(24,6) = 134596 six-subsets and check every count.

    Raises VerificationError naming the first mismatched quantity; on
    success the returned report carries the exact partition, the block
    counts (253, 77, 176), the circuit counts (3696, 3696, 2464), and the
    cross-product ratio 89015/86436 > 1.
    """
    fam = build_counterexample(s, e, f)
    cs = fam.circuit_set
    be, bf = 1 << e, 1 << f
    n = {"n_ef": 0, "n_e_not_f": 0, "n_f_not_e": 0, "n_neither": 0}
    c_e = c_f = c_none = c_both = 0
    for six in combinations(range(POINTS), 6):
        mask = sum(1 << p for p in six)
        has_e = bool(mask & be)
        has_f = bool(mask & bf)
        if mask in cs:
            if has_e and has_f:
                c_both += 1
            elif has_e:
                c_e += 1
            elif has_f:
                c_f += 1
            else:
                c_none += 1
        else:
            if has_e and has_f:
                n["n_ef"] += 1
            elif has_e:
                n["n_e_not_f"] += 1
            elif has_f:
                n["n_f_not_e"] += 1
            else:
                n["n_neither"] += 1

    def demand(name, got, expected):
        if got != expected:
            raise VerificationError(f"{name} = {got}, expected {expected}")

    demand("circuits containing both e and f", c_both, 0)
    bc = block_counts(s, e, f)
    demand("blocks containing e", bc[0], _EXPECTED_BLOCK_COUNTS[0])
    demand("blocks containing e and f", bc[1], _EXPECTED_BLOCK_COUNTS[1])
    demand("blocks containing e but not f", bc[2], _EXPECTED_BLOCK_COUNTS[2])
    demand("circuits with e only", c_e, _EXPECTED_CIRCUIT_COUNTS[0])
    demand("circuits with f only", c_f, _EXPECTED_CIRCUIT_COUNTS[1])
    demand("circuits with neither", c_none, _EXPECTED_CIRCUIT_COUNTS[2])
    for key, expected in _EXPECTED_PARTITION.items():
        demand(key, n[key], expected)
    ratio = Fraction(n["n_ef"] * n["n_neither"], n["n_e_not_f"] * n["n_f_not_e"])
    demand("cross-product ratio", ratio, _EXPECTED_RATIO)
    if not ratio > 1:
        raise VerificationError(f"ratio {ratio} does not exceed 1")
    return CounterexampleReport(
        e=e,
        f=f,
        n_ef=n["n_ef"],
        n_e_not_f=n["n_e_not_f"],
        n_f_not_e=n["n_f_not_e"],
        n_neither=n["n_neither"],
        ratio=ratio,
        block_counts=bc,
        circuit_counts=(c_e, c_f, c_none),
    )


def counterexample_matroid(s: SteinerSystem, e: int = 0, f: int = 1) -> ExplicitMatroid:
    """The rank-6 paving matroid on 24 points with 124740 bases."""
    return bases_from_circuits(build_counterexample(s, e, f))


# --- cache / export -------------------------------------------------------

_CHECKSUM_PREFIX = "# sha256="


def _payload(s: SteinerSystem) -> str:
    lines = [str(POINTS)]
    for b in s.blocks:
        lines.append(" ".join(str(p) for p in elements(b)))
    return "\n".join(lines) + "\n"


def save_steiner(s: SteinerSystem, path) -> None:
    """Write the system as a point count line plus one block per line."""
    Path(path).write_text(_payload(s))


def parse_steiner(text: str) -> SteinerSystem:
    blocks = []
    header = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            header = line
            if header != str(POINTS):
                raise FormatError(f"expected point count {POINTS}, got {header!r}")
            continue
        try:
            pts = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise FormatError(f"bad block line {line!r}") from exc
        if any(not 0 <= p < POINTS for p in pts):
            raise FormatError(f"point outside 0..23 in line {line!r}")
        if pts != sorted(set(pts)):
            raise FormatError(f"block line not strictly increasing: {line!r}")
        blocks.append(sum(1 << p for p in pts))
    if header is None:
        raise FormatError("empty Steiner file")
    return SteinerSystem(tuple(blocks))


def load_steiner(path) -> SteinerSystem:
    return parse_steiner(Path(path).read_text())


def default_cache_path() -> Path:
    env = os.environ.get("PAVINGWALK_CACHE_DIR")
    if env:
        base = Path(env)
    else:
        xdg = os.environ.get("XDG_CACHE_HOME")
        base = Path(xdg) if xdg else Path.home() / ".cache"
        base = base / "pavingwalk"
    return base / "steiner_s5_8_24.txt"


def steiner_system_cached(path=None) -> SteinerSystem:
    """Build-once, verify-always access to S(5,8,24).

    The cache file carries a checksum line: on mismatch the system is
    silently rebuilt and re-verified; when the checksum matches but the
    content fails verification, a VerificationError naming the violated
    invariant is raised (the file was deliberately altered, not truncated).
    """
    cache = Path(path) if path is not None else default_cache_path()
    if cache.exists():
        text = cache.read_text()
        first, _, rest = text.partition("\n")
        if first.startswith(_CHECKSUM_PREFIX):
            recorded = first[len(_CHECKSUM_PREFIX) :].strip()
            if recorded == hashlib.sha256(rest.encode()).hexdigest():
                system = parse_steiner(rest)
                reason = check_steiner(system)
                if reason is not None:
                    raise VerificationError(f"cached Steiner system invalid: {reason}")
                return system
        # checksum missing or stale: fall through and rebuild
    system = build_steiner_system()
    reason = check_steiner(system)
    if reason is not None:
        raise ConstructionError(f"freshly built Steiner system invalid: {reason}")
    payload = _payload(system)
    digest = hashlib.sha256(payload.encode()).hexdigest()
    cache.parent.mkdir(parents=True, exist_ok=True)
    cache.write_text(f"{_CHECKSUM_PREFIX}{digest}\n{payload}")
    return system
