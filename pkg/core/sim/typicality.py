"""
Joint typicality tests.

A sequence of symbols over an alphabet of size K is eps-typical for a law P when
every symbol count lies in the box [ceil(n P (1-eps)), floor(n P (1+eps))]; symbols
with P = 0 must not occur. The same box drives both decoding modes:
- exhaustive: count every candidate sequence (typical_mask)
- ensemble: probability that one independent impostor lands in the box
  (log_impostor_typical), combined over M - 1 impostors by prob_any
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from scipy.special import logsumexp
from scipy.stats import binom

from core.kernel.types import UsageError


BOX_SLACK = 1e-9
SMALL_Q = 1e-8
LOG_T_MAX = 700.0


def typical_box(pmf: np.ndarray, n: int, eps: float) -> Tuple[np.ndarray, np.ndarray]:
    """Inclusive (lo, hi) count bounds per symbol."""
    if eps <= 0:
        raise UsageError("eps must be positive", {"eps": eps})
    p = np.asarray(pmf, dtype=float)
    lo = np.maximum(np.ceil(n * p * (1.0 - eps) - BOX_SLACK), 0).astype(np.int64)
    hi = np.floor(n * p * (1.0 + eps) + BOX_SLACK).astype(np.int64)
    zero = p <= 0
    lo[zero] = 0
    hi[zero] = 0
    return lo, hi


def symbol_counts(codes: np.ndarray, size: int) -> np.ndarray:
    """Counts per row of a (M, n) code matrix, shape (M, size)."""
    codes = np.atleast_2d(np.asarray(codes, dtype=np.int64))
    m = codes.shape[0]
    flat = (np.arange(m, dtype=np.int64)[:, None] * size + codes).ravel()
    return np.bincount(flat, minlength=m * size).reshape(m, size)


def typical_mask(codes: np.ndarray, pmf: np.ndarray, eps: float) -> np.ndarray:
    """Row-wise typicality of a (M, n) code matrix against the flat law `pmf`."""
    codes = np.atleast_2d(codes)
    pmf = np.asarray(pmf, dtype=float).ravel()
    lo, hi = typical_box(pmf, codes.shape[1], eps)
    counts = symbol_counts(codes, pmf.size)
    return np.all((counts >= lo) & (counts <= hi), axis=1)


def _log_box_probability(total: int, q: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> float:
    """log P(Multinomial(total, q) counts all inside [lo, hi]) by a chain of binomials."""
    if np.any(lo > hi) or int(lo.sum()) > total or int(hi.sum()) < total:
        return -math.inf
    logp = np.full(total + 1, -math.inf)
    logp[0] = 0.0
    rest = 1.0
    s = np.arange(total + 1)
    for j in range(q.size - 1):
        pj = min(max(q[j] / rest, 0.0), 1.0) if rest > 0 else 0.0
        k = np.arange(lo[j], min(int(hi[j]), total) + 1)
        new = np.full(total + 1, -math.inf)
        if k.size:
            vals = logp[None, :] + binom.logpmf(k[:, None], total - s[None, :], pj)
            target = k[:, None] + s[None, :]
            ok = (target <= total) & np.isfinite(vals)
            np.logaddexp.at(new, target[ok], vals[ok])
        logp = new
        rest -= q[j]
    last = total - s
    ok = (last >= lo[-1]) & (last <= hi[-1]) & ((last == 0) | (q[-1] > 0)) & np.isfinite(logp)
    return float(logsumexp(logp[ok])) if ok.any() else -math.inf


def log_impostor_typical(
    cond: np.ndarray,
    target: np.ndarray,
    impostor: np.ndarray,
    eps: float,
) -> float:
    """
    log P(an impostor sequence is jointly typical with a fixed conditioning sequence).

    Args:
        - cond: conditioning symbols, codes in [0, C), length n
        - target: joint law of (conditioning, impostor symbol), shape (C, A)
        - impostor: impostor law given the conditioning symbol, shape (C, A); symbols
          are independent across positions given cond

    Returns -inf when some conditioning symbol cannot meet its cell boxes.
    """
    target = np.asarray(target, dtype=float)
    impostor = np.asarray(impostor, dtype=float)
    n = int(np.asarray(cond).size)
    lo, hi = typical_box(target.ravel(), n, eps)
    lo = lo.reshape(target.shape)
    hi = hi.reshape(target.shape)
    counts = np.bincount(np.asarray(cond, dtype=np.int64), minlength=target.shape[0])
    total = 0.0
    for c in range(target.shape[0]):
        n_c = int(counts[c])
        if n_c == 0:
            if np.any(lo[c] > 0):
                return -math.inf
            continue
        part = _log_box_probability(n_c, impostor[c], lo[c], hi[c])
        if part == -math.inf:
            return -math.inf
        total += part
    return total


def prob_any(log_q: float, log_count: float) -> float:
    """P(at least one of exp(log_count) independent trials succeeds), success prob exp(log_q)."""
    if log_count == -math.inf or log_q == -math.inf:
        return 0.0
    if log_q >= 0:
        return 1.0
    q = math.exp(log_q)
    log_neg = log_q if q < SMALL_Q else math.log(-math.log1p(-q))
    t = math.exp(min(log_count + log_neg, LOG_T_MAX))
    return float(-math.expm1(-t))
