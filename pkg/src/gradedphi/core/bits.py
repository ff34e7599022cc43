"""Subsets of a carrier ``0..n-1`` encoded as Python int bitmasks."""

from __future__ import annotations

from typing import Iterable

import numpy as np


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def to_bool(mask: int, n: int) -> np.ndarray:
    arr = np.zeros(n, dtype=bool)
    for i in members(mask):
        arr[i] = True
    return arr


def from_bool(arr) -> int:
    return mask_of(np.flatnonzero(np.asarray(arr)))


def full(n: int) -> int:
    return (1 << n) - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def contains(mask: int, i: int) -> bool:
    return bool((mask >> int(i)) & 1)
