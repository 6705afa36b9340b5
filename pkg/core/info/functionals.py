"""
Information functionals over Pmf and JointTensor (bits by default).

Contract:
- 0 log 0 = 0
- mutual informations are computed by exact marginalization and clipped at 0
  to absorb float round-off
- axis sets must be disjoint subsets of the tensor's tags (UsageError otherwise)
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np
from scipy.stats import entropy as _scipy_entropy

from core.info.joint import JointTensor, TagSet, as_tags
from core.info.pmf import Pmf
from core.kernel.types import UsageError, ValidationError


def _h(values: np.ndarray, base: float = 2.0) -> float:
    flat = np.ravel(values)
    if flat.size == 0 or float(flat.sum()) <= 0.0:
        return 0.0
    return float(_scipy_entropy(flat, base=base))


def entropy(p: Pmf, log_base: float = 2.0) -> float:
    """Shannon entropy of a Pmf."""
    if not isinstance(p, Pmf):
        p = Pmf(np.asarray(p, dtype=float))
    if log_base <= 0.0 or log_base == 1.0:
        raise ValidationError("log_base must be positive and != 1", {"log_base": log_base})
    return _h(p.probs, log_base)


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValidationError("binary entropy argument outside [0, 1]", {"p": p})
    return _h(np.array([p, 1.0 - p]))


def _disjoint(joint: JointTensor, *sets: TagSet) -> Tuple[Tuple[str, ...], ...]:
    out = tuple(as_tags(s) for s in sets)
    seen: set = set()
    for s in out:
        if not s:
            raise UsageError("empty axis set")
        for tag in s:
            joint.axis(tag)
            if tag in seen:
                raise UsageError(f"axis {tag!r} appears in more than one set")
            seen.add(tag)
    return out


def joint_entropy(joint: JointTensor, axes: TagSet, log_base: float = 2.0) -> float:
    tags = as_tags(axes)
    if not tags:
        return 0.0
    return _h(joint.marginal(tags), log_base)


def conditional_entropy(joint: JointTensor, axes: TagSet, given: TagSet, log_base: float = 2.0) -> float:
    a, c = _disjoint(joint, axes, given)
    return max(0.0, joint_entropy(joint, a + c, log_base) - joint_entropy(joint, c, log_base))


def mutual_information(joint: JointTensor, axes_a: TagSet, axes_b: TagSet, log_base: float = 2.0) -> float:
    """I(A;B) = H(A) + H(B) - H(A,B)."""
    a, b = _disjoint(joint, axes_a, axes_b)
    value = (
        joint_entropy(joint, a, log_base)
        + joint_entropy(joint, b, log_base)
        - joint_entropy(joint, a + b, log_base)
    )
    return max(0.0, value)


def conditional_mutual_information(
    joint: JointTensor, axes_a: TagSet, axes_b: TagSet, axes_c: TagSet, log_base: float = 2.0
) -> float:
    """I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)."""
    a, b, c = _disjoint(joint, axes_a, axes_b, axes_c)
    value = (
        joint_entropy(joint, a + c, log_base)
        + joint_entropy(joint, b + c, log_base)
        - joint_entropy(joint, a + b + c, log_base)
        - joint_entropy(joint, c, log_base)
    )
    return max(0.0, value)


def pushforward(p: Pmf, mapping: np.ndarray, size: int) -> Pmf:
    """Law of f(X) for X ~ p, where f(i) = mapping[i] in range(size)."""
    idx = np.asarray(mapping, dtype=np.int64)
    if idx.shape != (p.size,) or (idx.size and (idx.min() < 0 or idx.max() >= size)):
        raise UsageError("mapping must send every symbol into range(size)")
    return Pmf(np.bincount(idx, weights=p.probs, minlength=int(size)))


def log_alphabet(size: int) -> float:
    return math.log2(int(size))
