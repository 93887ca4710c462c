"""Bitmask representation of subsets of the terminal set {1, ..., m}.

A subset is a plain int: bit j-1 set means terminal j is in the subset.
All functions take the terminal count m alongside the mask where it matters.
"""

from __future__ import annotations

from typing import Iterable, Iterator, List

MAX_TERMINALS = 20


def check_terminal_count(m: int) -> None:
    if not 2 <= m <= MAX_TERMINALS:
        raise ValueError(f"terminal count must be in [2, {MAX_TERMINALS}], got {m}")


def full_mask(m: int) -> int:
    return (1 << m) - 1


def check_mask(mask: int, m: int) -> None:
    if not 0 <= mask < (1 << m):
        raise ValueError(f"subset mask {mask:#b} out of range for m={m}")


def complement(mask: int, m: int) -> int:
    return full_mask(m) & ~mask


def mask_from_terminals(terminals: Iterable[int], m: int) -> int:
    mask = 0
    for j in terminals:
        if not 1 <= j <= m:
            raise ValueError(f"terminal {j} out of range for m={m}")
        mask |= 1 << (j - 1)
    return mask


def terminals_of(mask: int) -> List[int]:
    """Sorted 1-based terminal list of a mask."""
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def iter_bits(mask: int) -> Iterator[int]:
    """Yield 0-based bit positions set in mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def format_mask(mask: int) -> str:
    """Render as a sorted 1-based list, e.g. "1,3,4"; empty set as ""."""
    return ",".join(str(j) for j in terminals_of(mask))


def parse_mask_spec(spec: str, m: int) -> int:
    """Parse "1,3,4" (or "" for the empty set) into a mask."""
    spec = spec.strip()
    if not spec:
        return 0
    try:
        terminals = [int(part) for part in spec.split(",")]
    except ValueError as exc:
        raise ValueError(f"bad subset spec {spec!r}") from exc
    return mask_from_terminals(terminals, m)
