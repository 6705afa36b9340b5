"""
ACMAC bound evaluators (enterprise-grade): joint laws and per-delay pentagons.

Contract:
- inner: per delay d, sum_cap = I_d(X1;Y) + I_d(X2;Y|V), r2_cap = I_d(X2;Y|V), r1_cap = inf
- outer: per delay d, sum_cap = I_d(X1b,X2b;Yb)/D, r2_cap = I_d(X2b;Yb|Vt)/D, r1_cap = inf
- the pentagon is the componentwise minimum over the delay set
- the blocked outer tensor is capped at |X1|^(2D-1) |X2|^D |Y|^D <= OUTER_CAP (CapacityError)
"""

from __future__ import annotations

import math
from typing import Dict, Tuple

import numpy as np

from core.bounds.params import BoundResult, InnerParams, OuterParams
from core.bounds.windows import digit_table, encode, vtilde_x1
from core.info.functionals import conditional_mutual_information, mutual_information
from core.info.joint import JointTensor
from core.info.pmf import DelaySet, DiscreteChannel
from core.kernel.types import CapacityError


OUTER_CAP = 10**7

INNER_TAGS = ("v", "x1", "x2", "y")
OUTER_TAGS = ("vt", "x1b", "x2b", "yb")


def joint_law_inner(ch: DiscreteChannel, ds: DelaySet, d: int, params: InnerParams) -> JointTensor:
    """P(v) 1{x1 = v[slot(d)]} P(x2|v) P(y|x1,x2), with P(v) the i.i.d. window law."""
    slot = ds.slot(d)
    params.check(ch, ds)
    table = digit_table(ch.x1_size, ds.D)
    p_v = np.prod(params.p_x1.probs[table], axis=1)
    x1_of_v = table[:, slot]
    p_vx2 = p_v[:, None] * params.p_x2_given_v.rows
    values = np.zeros((table.shape[0], ch.x1_size, ch.x2_size, ch.y_size))
    values[np.arange(table.shape[0]), x1_of_v] = p_vx2[:, :, None] * ch.transition[x1_of_v]
    return JointTensor(values, INNER_TAGS, (ds.D, 1, 1, 1))


def inner_caps(ch: DiscreteChannel, ds: DelaySet, d: int, params: InnerParams) -> Tuple[float, float]:
    joint = joint_law_inner(ch, ds, d, params)
    r2 = conditional_mutual_information(joint, "x2", "y", "v")
    return mutual_information(joint, "x1", "y") + r2, r2


def inner_point(ch: DiscreteChannel, ds: DelaySet, params: InnerParams) -> BoundResult:
    per_delay: Dict[int, Tuple[float, float, float]] = {}
    for d in ds.delays:
        s, r2 = inner_caps(ch, ds, d, params)
        per_delay[d] = (s, r2, math.inf)
    return BoundResult.from_caps(per_delay, params)


def outer_size(ch: DiscreteChannel, ds: DelaySet) -> int:
    D = ds.D
    return ch.x1_size ** (2 * D - 1) * ch.x2_size**D * ch.y_size**D


def check_outer_cap(ch: DiscreteChannel, ds: DelaySet) -> None:
    size = outer_size(ch, ds)
    if size > OUTER_CAP:
        raise CapacityError(
            f"blocked outer law needs {size} states (cap {OUTER_CAP})",
            size=size,
            cap=OUTER_CAP,
            details={"D": ds.D, "x1": ch.x1_size, "x2": ch.x2_size, "y": ch.y_size},
        )


def _outer_base(ch: DiscreteChannel, ds: DelaySet, d: int, params: OuterParams) -> Tuple[np.ndarray, np.ndarray]:
    """Dense P(vt, x2b, yb) for delay d, plus the blocked-x1 code of every vt."""
    slot = ds.slot(d)
    check_outer_cap(ch, ds)
    params.check(ch, ds)
    D = ds.D
    x1_digits = vtilde_x1(ch.x1_size, D, slot)
    x2_digits = digit_table(ch.x2_size, D)
    u = x1_digits.shape[0]

    kernel = np.ones((u, x2_digits.shape[0], 1))
    for i in range(D):
        factor = ch.transition[x1_digits[:, i][:, None], x2_digits[None, :, i]]  # (U, X2^D, Y)
        kernel = (kernel[:, :, :, None] * factor[:, :, None, :]).reshape(u, x2_digits.shape[0], -1)

    base = params.p_vtilde.probs[:, None, None] * params.block_conditional(ch.x2_size)[:, :, None] * kernel
    return base, encode(x1_digits, ch.x1_size)


def joint_law_outer(ch: DiscreteChannel, ds: DelaySet, d: int, params: OuterParams) -> JointTensor:
    base, x1b = _outer_base(ch, ds, d, params)
    values = np.zeros((base.shape[0], ch.x1_size**ds.D) + base.shape[1:])
    values[np.arange(base.shape[0]), x1b] = base
    return JointTensor(values, OUTER_TAGS, (2 * ds.D - 1, ds.D, ds.D, ds.D))


def outer_caps(ch: DiscreteChannel, ds: DelaySet, d: int, params: OuterParams) -> Tuple[float, float, np.ndarray]:
    """(sum_cap, r2_cap, law of X1b) for delay d."""
    base, x1b = _outer_base(ch, ds, d, params)
    D = ds.D
    by_window = JointTensor(base, ("vt", "x2b", "yb"), (2 * D - 1, D, D))
    r2 = conditional_mutual_information(by_window, "x2b", "yb", "vt") / D

    pushed = np.zeros((ch.x1_size**D,) + base.shape[1:])
    np.add.at(pushed, x1b, base)
    s = mutual_information(JointTensor(pushed, ("x1b", "x2b", "yb"), (D, D, D)), ("x1b", "x2b"), "yb") / D

    p_x1b = np.bincount(x1b, weights=params.p_vtilde.probs, minlength=ch.x1_size**D)
    return s, r2, p_x1b


def outer_point(ch: DiscreteChannel, ds: DelaySet, params: OuterParams) -> BoundResult:
    per_delay: Dict[int, Tuple[float, float, float]] = {}
    for d in ds.delays:
        s, r2, _ = outer_caps(ch, ds, d, params)
        per_delay[d] = (s, r2, math.inf)
    return BoundResult.from_caps(per_delay, params)
