"""Cognition-window bookkeeping: digit tables for x1 windows and blocked super-symbols.

Sequences over an alphabet of size q are coded row-major with the oldest
symbol most significant, so code = sum_j s_j * q**(L-1-j).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=64)
def digit_table(q: int, length: int) -> np.ndarray:
    """All q**length sequences as rows of digits, in code order."""
    codes = np.arange(int(q) ** int(length), dtype=np.int64)
    powers = int(q) ** np.arange(int(length) - 1, -1, -1, dtype=np.int64)
    table = (codes[:, None] // powers[None, :]) % int(q)
    table.setflags(write=False)
    return table


def encode(digits: np.ndarray, q: int) -> np.ndarray:
    """Codes of digit rows (last axis is the sequence)."""
    length = digits.shape[-1]
    powers = int(q) ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return (np.asarray(digits, dtype=np.int64) * powers).sum(axis=-1)


def iid_law(p: np.ndarray, length: int) -> np.ndarray:
    """Product law of `length` i.i.d. symbols, in code order."""
    table = digit_table(len(p), length)
    return np.prod(np.asarray(p)[table], axis=1) if length else np.ones(1)


def vtilde_window(q: int, D: int, i: int) -> np.ndarray:  # noqa: N803
    """Code of the i-th length-D window (0-based) of every super-symbol over 2D-1 symbols."""
    table = digit_table(q, 2 * D - 1)
    return encode(table[:, i : i + D], q)


def vtilde_x1(q: int, D: int, slot: int) -> np.ndarray:  # noqa: N803
    """Digits (U, D) of the blocked x1 read at window slot `slot` for each super-symbol."""
    table = digit_table(q, 2 * D - 1)
    return table[:, slot : slot + D]
