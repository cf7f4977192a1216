"""Counter-based pseudo-random generator for the walk simulator.

The generator is a splitmix64 finalizer applied to ``key + (i+1)*GOLDEN``:
output i is a pure function of (key, i), so chains can be replayed, split
across workers, and reproduced exactly regardless of execution order.  The
compiled kernel in ``_kernel`` implements bit-for-bit the same scheme; the
test suite asserts the two paths agree.

Bounded draws use 32-bit units (two per 64-bit output) with Lemire rejection,
so ``uniform_below(n)`` is exactly uniform on range(n), not merely close.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
CHAIN_MULT = 0xA24BAED4963EE407
STAGE_MULT = 0x9FB21C651E98DF25


def mix64(x: int) -> int:
    z = x & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def output64(key: int, index: int) -> int:
    """The index-th 64-bit output of the stream with the given key."""
    return mix64((key + (index + 1) * GOLDEN) & MASK64)


def unit32(key: int, unit_index: int) -> int:
    """The unit_index-th 32-bit unit (low half first, then high half)."""
    o = output64(key, unit_index >> 1)
    return (o >> 32) if (unit_index & 1) else (o & 0xFFFFFFFF)


def chain_key(seed: int, chain: int) -> int:
    return mix64((mix64(seed) + (chain + 1) * CHAIN_MULT) & MASK64)


def stage_seed(seed: int, stage: int) -> int:
    """Derived seed for one stage of a multi-stage estimator."""
    return mix64((seed ^ ((stage + 1) * STAGE_MULT)) & MASK64)


def uniform_below(n: int, key: int, unit_index: int) -> tuple[int, int]:
    """Exact uniform draw from range(n); returns (value, next unit_index).

    Lemire's multiply-shift with rejection on the low 32-bit product, so the
    result is uniform with no modulo bias.  Requires 1 <= n <= 2**32.
    """
    if not 1 <= n <= (1 << 32):
        raise ValueError(f"uniform_below needs 1 <= n <= 2**32, got {n}")
    threshold = ((1 << 32) - n) % n
    while True:
        x = unit32(key, unit_index)
        unit_index += 1
        prod = x * n
        if (prod & 0xFFFFFFFF) >= threshold:
            return prod >> 32, unit_index
