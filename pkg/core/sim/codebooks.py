"""
Random codebooks for the cognitive coding schemes.

Contract:
- codeword l of the uninformed user is drawn i.i.d. p_x1 from default_rng([seed, 1, l])
- codeword k of encoder 2 under uninformed codeword l is drawn symbol by symbol from
  P(x2 | window_i(x1(l))) with default_rng([seed, 2, l, k])
- codewords are generated on demand, so regeneration is bit-identical and huge
  codebooks never need to be materialized
- windows and delays use the cyclic convention: window_i = (x_{i-d_max}, ..., x_{i+d_min}),
  sigma_shift(x, d)_i = x_{i-d}
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.bounds.params import InnerParams
from core.bounds.windows import encode
from core.info.pmf import DelaySet
from core.kernel.types import UsageError


EXACT_SIZE_LOG2 = 62


def sliding_window_v(x1: np.ndarray, ds: DelaySet) -> np.ndarray:
    """Windows of a codeword (last axis), shape (..., n, D)."""
    x1 = np.asarray(x1)
    n = x1.shape[-1]
    if n < ds.D:
        raise UsageError("codeword shorter than the delay window", {"n": n, "D": ds.D})
    idx = (np.arange(n)[:, None] + np.arange(-ds.d_max, ds.d_min + 1)[None, :]) % n
    return x1[..., idx]


def window_codes(x1: np.ndarray, ds: DelaySet, x1_size: int) -> np.ndarray:
    return encode(sliding_window_v(x1, ds), x1_size)


def sigma_shift(x1: np.ndarray, d: int) -> np.ndarray:
    """Cyclic alignment: result_i = x1_{i-d}."""
    return np.roll(np.asarray(x1), int(d), axis=-1)


def codebook_size(log2_size: float) -> Optional[int]:
    """ceil(2^log2_size) when it fits the exact range, else None."""
    if log2_size > EXACT_SIZE_LOG2:
        return None
    return max(1, math.ceil(2.0**log2_size - 1e-9))


def log_others(size: Optional[int], log2_size: float) -> float:
    """Natural log of (size - 1); -inf for a singleton."""
    if size is not None:
        return math.log(size - 1) if size > 1 else -math.inf
    return log2_size * math.log(2.0)


def sample_rows(rng: np.random.Generator, rows: np.ndarray) -> np.ndarray:
    """One draw per row of a stochastic matrix (inverse CDF)."""
    cdf = np.cumsum(rows, axis=-1)
    u = rng.random(rows.shape[:-1])
    out = (u[..., None] >= cdf).sum(axis=-1)
    return np.minimum(out, rows.shape[-1] - 1)


@dataclass(frozen=True, eq=False)
class Codebooks:
    """
    Lazily generated superposition codebooks.

    Attributes:
        - params: generating laws (p_x1, P(x2|window))
        - n: blocklength
        - log2_m1 / log2_m2: log2 of the codebook sizes
        - m1 / m2: exact sizes, None when above 2**EXACT_SIZE_LOG2
        - seed: codebook seed
    """

    params: InnerParams
    ds: DelaySet
    n: int
    log2_m1: float
    log2_m2: float
    seed: int

    @property
    def m1(self) -> Optional[int]:
        return codebook_size(self.log2_m1)

    @property
    def m2(self) -> Optional[int]:
        return codebook_size(self.log2_m2)

    @property
    def x1_size(self) -> int:
        return self.params.p_x1.size

    @property
    def x2_size(self) -> int:
        return self.params.p_x2_given_v.size

    def x1(self, l: int) -> np.ndarray:  # noqa: E741
        rng = np.random.default_rng([self.seed, 1, int(l)])
        rows = np.broadcast_to(self.params.p_x1.probs, (self.n, self.x1_size))
        return sample_rows(rng, rows)

    def x2(self, l: int, k: int) -> np.ndarray:  # noqa: E741
        rng = np.random.default_rng([self.seed, 2, int(l), int(k)])
        v = window_codes(self.x1(l), self.ds, self.x1_size)
        return sample_rows(rng, self.params.p_x2_given_v.rows[v])

    def c1_all(self) -> np.ndarray:
        m1 = self._exact(self.m1)
        return np.stack([self.x1(l) for l in range(m1)])

    def c2_all(self, l: int) -> np.ndarray:  # noqa: E741
        m2 = self._exact(self.m2)
        rng_rows = self.params.p_x2_given_v.rows[window_codes(self.x1(l), self.ds, self.x1_size)]
        out = np.empty((m2, self.n), dtype=np.int64)
        for k in range(m2):
            out[k] = sample_rows(np.random.default_rng([self.seed, 2, int(l), k]), rng_rows)
        return out

    def draw_message(self, which: int, rng: np.random.Generator) -> int:
        """Uniform message index; sizes above the exact range draw from the first 2**62 indices."""
        size = self.m1 if which == 1 else self.m2
        return int(rng.integers(size if size is not None else 2**EXACT_SIZE_LOG2))

    @staticmethod
    def _exact(size: Optional[int]) -> int:
        if size is None:
            raise UsageError("codebook too large to enumerate")
        return size
