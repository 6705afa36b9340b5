"""
Transmission and joint-typicality decoding (enterprise-grade).

Contract:
- transmit: y_i ~ W(.|x1_{i-d}, x2_i) with the cyclic alignment of sigma_shift
- ACC-MAC transmit first checks that x1(m1) is unique in the codebook; on failure encoder 2
  sends the (0, 0) codeword and the transmission is flagged
- ACMAC decode is successive (m1 from (sigma(x1), y), then m2 from (v, x2, y));
  ACC-MAC decode is simultaneous over (m1, m2)
- each stage runs exhaustively when its candidate count is <= exhaustive_limit, otherwise in
  ensemble mode: the true codeword is tested literally and the M - 1 impostors are replaced by
  their exact typicality probability under random coding (needs truth and rng)
- a singleton stage is skipped and returns index 0
- decode errors are data: m_hat is None for an erasure (no or several candidates), WRONG for a
  unique but wrong candidate that ensemble mode cannot name
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from core.bounds.acmac import joint_law_inner
from core.info.pmf import DelaySet, DiscreteChannel
from core.kernel.types import UsageError
from core.sim.codebooks import Codebooks, log_others, sample_rows, sigma_shift, window_codes
from core.sim.typicality import log_impostor_typical, prob_any, typical_mask


MODEL_ACMAC = "acmac"
MODEL_ACCMAC = "accmac"
MODELS = (MODEL_ACMAC, MODEL_ACCMAC)

MODE_EXHAUSTIVE = "exhaustive"
MODE_ENSEMBLE = "ensemble"
MODE_SKIPPED = "skipped"

DEFAULT_EXHAUSTIVE_LIMIT = 1024

WRONG = -1

EVENTS = ("miss_1", "false_1", "miss_2", "false_2", "miss_joint", "false_joint", "not_unique")


@dataclass(frozen=True, eq=False)
class Transmission:
    y: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    unique: bool = True


@dataclass(frozen=True)
class Decoded:
    m1_hat: Optional[int]
    m2_hat: Optional[int]
    events: Dict[str, bool] = field(default_factory=dict)
    modes: Dict[str, str] = field(default_factory=dict)

    @property
    def erasure(self) -> bool:
        return self.m1_hat is None or self.m2_hat is None


def _check_model(model: str) -> str:
    if model not in MODELS:
        raise UsageError(f"unknown model {model!r}", {"models": list(MODELS)})
    return model


def channel_output_law(ch: DiscreteChannel, x1: np.ndarray, x2: np.ndarray, d: int) -> np.ndarray:
    """Per-position output law, shape (n, |Y|)."""
    return ch.transition[sigma_shift(x1, d), np.asarray(x2)]


def _fits(size: Optional[int], limit: int) -> bool:
    return size is not None and size <= limit


def _x1_unique(cb: Codebooks, m1: int, x1: np.ndarray, rng: np.random.Generator, limit: int) -> bool:
    m1_size = cb.m1
    if m1_size == 1:
        return True
    if _fits(m1_size, limit):
        others = [l for l in range(m1_size) if l != m1]
        return not any(np.array_equal(cb.x1(l), x1) for l in others)
    log_match = float(np.sum(np.log(cb.params.p_x1.probs[x1])))
    return not (rng.random() < prob_any(log_match, log_others(m1_size, cb.log2_m1)))


def transmit(
    ch: DiscreteChannel,
    ds: DelaySet,
    cb: Codebooks,
    m1: int,
    m2: int,
    d: int,
    rng: np.random.Generator,
    model: str = MODEL_ACMAC,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
) -> Transmission:
    d = ds.check(d)
    _check_model(model)
    for m, size, what in ((m1, cb.m1, "m1"), (m2, cb.m2, "m2")):
        if m < 0 or (size is not None and m >= size):
            raise UsageError(f"{what} out of range", {what: m, "size": size})
    x1 = cb.x1(m1)
    unique = True
    if model == MODEL_ACCMAC:
        unique = _x1_unique(cb, m1, x1, rng, exhaustive_limit)
    x2 = cb.x2(m1, m2) if unique else cb.x2(0, 0)
    y = sample_rows(rng, channel_output_law(ch, x1, x2, d))
    return Transmission(y=y, x1=x1, x2=x2, unique=unique)


class _Laws:
    """Flat typicality laws of one delay, indexed the way the decoder codes its sequences."""

    def __init__(self, ch: DiscreteChannel, ds: DelaySet, d: int, cb: Codebooks) -> None:
        joint = joint_law_inner(ch, ds, d, cb.params)
        self.x1_y = joint.marginal(("x1", "y"))
        self.v_x2_y = joint.marginal(("v", "x2", "y"))
        self.p_v = joint.marginal(("v",))
        self.y_size = ch.y_size
        self.x2_size = ch.x2_size
        self.v_size = self.p_v.size

    def stage2_codes(self, v: np.ndarray, x2: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (v * self.x2_size + x2) * self.y_size + y


def _stage_one(
    laws: _Laws,
    cb: Codebooks,
    y: np.ndarray,
    d: int,
    eps: float,
    limit: int,
    truth: Optional[Tuple[int, int]],
    rng: Optional[np.random.Generator],
    events: Dict[str, bool],
) -> Tuple[Optional[int], str]:
    size = cb.m1
    if size == 1:
        return 0, MODE_SKIPPED
    if _fits(size, limit):
        codes = sigma_shift(cb.c1_all(), d) * laws.y_size + y
        hits = np.flatnonzero(typical_mask(codes, laws.x1_y.ravel(), eps))
        if truth is not None:
            events["miss_1"] = truth[0] not in hits
            events["false_1"] = bool(np.any(hits != truth[0]))
        return (int(hits[0]) if hits.size == 1 else None), MODE_EXHAUSTIVE
    m1 = _need_truth(truth, rng)[0]
    true_ok = bool(typical_mask(sigma_shift(cb.x1(m1), d) * laws.y_size + y, laws.x1_y.ravel(), eps)[0])
    impostor = np.broadcast_to(cb.params.p_x1.probs, (laws.y_size, cb.x1_size))
    log_q = log_impostor_typical(y, laws.x1_y.T, impostor, eps)
    false = bool(rng.random() < prob_any(log_q, log_others(size, cb.log2_m1)))
    events["miss_1"] = not true_ok
    events["false_1"] = false
    return _ensemble_pick(true_ok, false, m1), MODE_ENSEMBLE


def _stage_two(
    laws: _Laws,
    cb: Codebooks,
    y: np.ndarray,
    m1_hat: int,
    eps: float,
    limit: int,
    truth: Optional[Tuple[int, int]],
    rng: Optional[np.random.Generator],
    events: Dict[str, bool],
) -> Tuple[Optional[int], str]:
    size = cb.m2
    if size == 1:
        return 0, MODE_SKIPPED
    if _fits(size, limit):
        v = window_codes(cb.x1(m1_hat), cb.ds, cb.x1_size)
        codes = laws.stage2_codes(v[None, :], cb.c2_all(m1_hat), y[None, :])
        hits = np.flatnonzero(typical_mask(codes, laws.v_x2_y.ravel(), eps))
        if truth is not None and truth[0] == m1_hat:
            events["miss_2"] = truth[1] not in hits
            events["false_2"] = bool(np.any(hits != truth[1]))
        return (int(hits[0]) if hits.size == 1 else None), MODE_EXHAUSTIVE
    m1, m2 = _need_truth(truth, rng)
    if m1_hat != m1:
        return WRONG, MODE_ENSEMBLE
    v = window_codes(cb.x1(m1), cb.ds, cb.x1_size)
    true_ok = bool(typical_mask(laws.stage2_codes(v, cb.x2(m1, m2), y), laws.v_x2_y.ravel(), eps)[0])
    false = bool(rng.random() < prob_any(_log_q_same_column(laws, cb, v, y, eps), log_others(size, cb.log2_m2)))
    events["miss_2"] = not true_ok
    events["false_2"] = false
    return _ensemble_pick(true_ok, false, m2), MODE_ENSEMBLE


def _log_q_same_column(laws: _Laws, cb: Codebooks, v: np.ndarray, y: np.ndarray, eps: float) -> float:
    """Impostor x2 drawn from P(x2|v) along the true window sequence, tested against (v, y)."""
    target = np.transpose(laws.v_x2_y, (0, 2, 1)).reshape(laws.v_size * laws.y_size, laws.x2_size)
    impostor = np.repeat(cb.params.p_x2_given_v.rows, laws.y_size, axis=0)
    return log_impostor_typical(v * laws.y_size + y, target, impostor, eps)


def _log_q_other_column(laws: _Laws, cb: Codebooks, y: np.ndarray, eps: float) -> float:
    """Impostor (window, x2) pair from an independent x1 codeword, windows taken as i.i.d."""
    target = laws.v_x2_y.reshape(laws.v_size * laws.x2_size, laws.y_size).T
    pair = (laws.p_v[:, None] * cb.params.p_x2_given_v.rows).ravel()
    impostor = np.broadcast_to(pair, (laws.y_size, pair.size))
    return log_impostor_typical(y, target, impostor, eps)


def _ensemble_pick(true_ok: bool, false: bool, truth: int) -> Optional[int]:
    if true_ok and not false:
        return truth
    if false and not true_ok:
        return WRONG
    return None


def _need_truth(truth: Optional[Tuple[int, int]], rng: Optional[np.random.Generator]) -> Tuple[int, int]:
    if truth is None or rng is None:
        raise UsageError("ensemble decoding needs the transmitted messages and an rng")
    return int(truth[0]), int(truth[1])


def _decode_accmac(
    laws: _Laws,
    cb: Codebooks,
    y: np.ndarray,
    eps: float,
    limit: int,
    truth: Optional[Tuple[int, int]],
    rng: Optional[np.random.Generator],
    events: Dict[str, bool],
) -> Tuple[Optional[int], Optional[int], str]:
    m1_size, m2_size = cb.m1, cb.m2
    if m1_size == 1 and m2_size == 1:
        return 0, 0, MODE_SKIPPED
    if m1_size is not None and m2_size is not None and m1_size * m2_size <= limit:
        hits = []
        for l in range(m1_size):  # noqa: E741
            v = window_codes(cb.x1(l), cb.ds, cb.x1_size)
            mask = typical_mask(laws.stage2_codes(v[None, :], cb.c2_all(l), y[None, :]), laws.v_x2_y.ravel(), eps)
            hits.extend((l, int(k)) for k in np.flatnonzero(mask))
        if truth is not None:
            events["miss_joint"] = tuple(truth) not in hits
            events["false_joint"] = any(h != tuple(truth) for h in hits)
        if len(hits) == 1:
            return hits[0][0], hits[0][1], MODE_EXHAUSTIVE
        return None, None, MODE_EXHAUSTIVE
    m1, m2 = _need_truth(truth, rng)
    v = window_codes(cb.x1(m1), cb.ds, cb.x1_size)
    true_ok = bool(typical_mask(laws.stage2_codes(v, cb.x2(m1, m2), y), laws.v_x2_y.ravel(), eps)[0])
    p_same = prob_any(_log_q_same_column(laws, cb, v, y, eps), log_others(m2_size, cb.log2_m2))
    log_cross = _log_pair_others(cb)
    p_cross = prob_any(_log_q_other_column(laws, cb, y, eps), log_cross)
    false = bool(rng.random() < 1.0 - (1.0 - p_same) * (1.0 - p_cross))
    events["miss_joint"] = not true_ok
    events["false_joint"] = false
    pick = _ensemble_pick(true_ok, false, 0)
    if pick is None:
        return None, None, MODE_ENSEMBLE
    if pick == WRONG:
        return WRONG, WRONG, MODE_ENSEMBLE
    return m1, m2, MODE_ENSEMBLE


def _log_pair_others(cb: Codebooks) -> float:
    """Natural log of (M1 - 1) * M2."""
    log_m1 = log_others(cb.m1, cb.log2_m1)
    if log_m1 == -math.inf:
        return -math.inf
    m2 = cb.m2
    return log_m1 + (math.log(m2) if m2 is not None else cb.log2_m2 * math.log(2.0))


def decode(
    ch: DiscreteChannel,
    ds: DelaySet,
    cb: Codebooks,
    y: np.ndarray,
    d: int,
    eps: float,
    model: str = MODEL_ACMAC,
    *,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    truth: Optional[Tuple[int, int]] = None,
    rng: Optional[np.random.Generator] = None,
) -> Decoded:
    """Joint-typicality decoding with the true delay known to the receiver."""
    d = ds.check(d)
    _check_model(model)
    if eps <= 0:
        raise UsageError("eps must be positive", {"eps": eps})
    y = np.asarray(y, dtype=np.int64)
    laws = _Laws(ch, ds, d, cb)
    events: Dict[str, bool] = {}
    if model == MODEL_ACCMAC:
        m1_hat, m2_hat, mode = _decode_accmac(laws, cb, y, eps, exhaustive_limit, truth, rng, events)
        return Decoded(m1_hat, m2_hat, events, {"joint": mode})
    m1_hat, mode1 = _stage_one(laws, cb, y, d, eps, exhaustive_limit, truth, rng, events)
    if m1_hat is None or m1_hat == WRONG:
        return Decoded(m1_hat, None if m1_hat is None else WRONG, events, {"stage1": mode1})
    m2_hat, mode2 = _stage_two(laws, cb, y, m1_hat, eps, exhaustive_limit, truth, rng, events)
    return Decoded(m1_hat, m2_hat, events, {"stage1": mode1, "stage2": mode2})

