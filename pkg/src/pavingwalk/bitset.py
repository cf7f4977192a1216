"""Bit-set helpers for ground sets of at most 64 elements.

Subsets of {0, ..., m-1} are plain Python ints: bit i set means element i is
in the subset.  All set algebra (union |, intersection &, symmetric
difference ^) and cardinality (int.bit_count) is then exact.
"""

from __future__ import annotations

from typing import Iterable

from .errors import GroundSetError

MAX_GROUND_SIZE = 64


def mask_of(elems: Iterable[int]) -> int:
    mask = 0
    for e in elems:
        mask |= 1 << e
    return mask


def elements(mask: int) -> list[int]:
    """Set bits of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(m: int) -> int:
    return (1 << m) - 1


def drop_bit(mask: int, e: int) -> int:
    """Remove position ``e`` and shift higher bits down by one."""
    low = mask & ((1 << e) - 1)
    high = (mask >> (e + 1)) << e
    return low | high


def check_ground_size(m: int) -> None:
    if not 0 <= m <= MAX_GROUND_SIZE:
        raise GroundSetError(f"ground set size {m} outside [0, {MAX_GROUND_SIZE}]")


def check_element(e: int, m: int) -> None:
    if not 0 <= e < m:
        raise GroundSetError(f"element {e} outside ground set of size {m}")


def check_within(mask: int, m: int) -> None:
    if mask < 0 or mask >> m:
        raise GroundSetError(f"mask {mask:#x} has bits outside ground set of size {m}")
