"""
Multi-letter evaluator (enterprise-grade): finite-n points of the n-letter regions.

Contract:
- NLetterLaw holds P(x1^n, x2^n) as a (|X1|^n, |X2|^n) matrix, sequences coded oldest-first
- r_n: every output position, out-of-range x1 symbols replaced by symbol index 0
- q_n: only positions d_max+1 .. n-d_min (1-based) are kept; all of them see in-range x1
- both use the 1/n normalization, so |r_n - q_n| <= (d_max + d_min) log|Y| / n per coordinate
- enumeration caps: |X1|^n |X2|^n <= LAW_CAP and |X1|^n |Y|^m <= LAW_CAP (CapacityError)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from core.bounds.params import InnerParams
from core.bounds.windows import digit_table, encode, iid_law
from core.geometry.region import BoundPentagon, intersect_pentagons
from core.info.functionals import entropy, joint_entropy
from core.info.joint import JointTensor
from core.info.pmf import DelaySet, DiscreteChannel, Pmf
from core.kernel.types import CapacityError, UsageError, ValidationError


LAW_CAP = 10**7


def _check_cap(size: int, what: str) -> None:
    if size > LAW_CAP:
        raise CapacityError(f"{what} needs {size} states (cap {LAW_CAP})", size=size, cap=LAW_CAP)


@dataclass(frozen=True, eq=False)
class NLetterLaw:
    n: int
    probs: np.ndarray
    x1_size: int
    x2_size: int

    def __post_init__(self) -> None:
        if int(self.n) < 1:
            raise UsageError("blocklength n must be at least 1", {"n": self.n})
        _check_cap(int(self.x1_size) ** int(self.n) * int(self.x2_size) ** int(self.n), "n-letter input law")
        p = np.asarray(self.probs, dtype=float)
        shape = (int(self.x1_size) ** int(self.n), int(self.x2_size) ** int(self.n))
        if p.shape != shape:
            raise ValidationError("n-letter law must be |X1|^n x |X2|^n", {"shape": list(p.shape), "expected": list(shape)})
        JointTensor(p, ("x1n", "x2n"), (int(self.n), int(self.n)))
        p = p / p.sum()
        p.setflags(write=False)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "probs", p)

    @classmethod
    def from_iid_inner(cls, params: InnerParams, ch: DiscreteChannel, ds: DelaySet, n: int) -> "NLetterLaw":
        """x1 i.i.d. p_x1; x2_i ~ P(x2 | cyclic window around i), independently across i."""
        params.check(ch, ds)
        if int(n) < ds.D:
            raise UsageError("i.i.d. expansion needs n >= D", {"n": n, "D": ds.D})
        _check_cap(ch.x1_size**n * ch.x2_size**n, "n-letter input law")
        x1_seqs = digit_table(ch.x1_size, n)
        x2_seqs = digit_table(ch.x2_size, n)
        p_x1n = iid_law(params.p_x1.probs, n)
        cond = np.ones((x1_seqs.shape[0], x2_seqs.shape[0]))
        offsets = np.arange(-ds.d_max, ds.d_min + 1)
        for i in range(n):
            win = encode(x1_seqs[:, (i + offsets) % n], ch.x1_size)
            cond *= params.p_x2_given_v.rows[win][:, x2_seqs[:, i]]
        return cls(n, p_x1n[:, None] * cond, ch.x1_size, ch.x2_size)

    def tensor(self) -> np.ndarray:
        """Law reshaped to one axis per position: x1_1..x1_n, x2_1..x2_n."""
        return self.probs.reshape((self.x1_size,) * self.n + (self.x2_size,) * self.n)


def output_positions(ds: DelaySet, n: int, truncated: bool) -> List[int]:
    """0-based output positions entering the mutual informations."""
    if truncated:
        return list(range(ds.d_max, n - ds.d_min))
    return list(range(n))


def _caps(ch: DiscreteChannel, ds: DelaySet, d: int, law: NLetterLaw, truncated: bool) -> Tuple[float, float]:
    """(n * sum_cap, n * r2_cap) for delay d."""
    n = law.n
    positions = output_positions(ds, n, truncated)
    _check_cap(ch.x1_size**n * ch.y_size ** len(positions), "n-letter output law")
    t = law.tensor()
    x1_axes = list(range(n))
    x2_axes = list(range(n, 2 * n))
    y_axes = list(range(2 * n, 3 * n))

    h_cond = 0.0
    current = t
    cur_axes = x1_axes + x2_axes
    for i in range(n):
        j = i - d
        if i in positions:
            if 0 <= j < n:
                w, w_axes = ch.transition, [x1_axes[j], x2_axes[i], y_axes[i]]
                pair = law_pair(t, n, j, i)
                h_cond += float(np.sum(pair * _row_entropies(ch.transition)))
            else:
                w, w_axes = ch.transition[0], [x2_axes[i], y_axes[i]]
                single = t.sum(axis=tuple(a for a in range(2 * n) if a != x2_axes[i]))
                h_cond += float(np.sum(single * _row_entropies(ch.transition)[0]))
            out_axes = [a for a in cur_axes if a != x2_axes[i]] + [y_axes[i]]
            current = np.einsum(current, cur_axes, w, w_axes, out_axes)
        else:
            out_axes = [a for a in cur_axes if a != x2_axes[i]]
            current = current.sum(axis=cur_axes.index(x2_axes[i]))
        cur_axes = out_axes

    p_x1y = current.reshape(ch.x1_size**n, -1)
    joint = JointTensor(p_x1y / p_x1y.sum(), ("x1n", "yn"), (n, n))
    h_y = joint_entropy(joint, "yn")
    h_x1y = joint_entropy(joint, ("x1n", "yn"))
    h_x1 = joint_entropy(joint, "x1n")
    sum_cap = max(0.0, h_y - h_cond)
    r2_cap = max(0.0, h_x1y - h_x1 - h_cond)
    return sum_cap, r2_cap


def law_pair(t: np.ndarray, n: int, j: int, i: int) -> np.ndarray:
    """Marginal P(x1_j, x2_i) from the per-position tensor."""
    keep = (j, n + i)
    return t.sum(axis=tuple(a for a in range(2 * n) if a not in keep))


def _row_entropies(transition: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.where(transition > 0.0, np.log2(np.where(transition > 0.0, transition, 1.0)), 0.0)
    return -(transition * logs).sum(axis=2)


def _point(ch: DiscreteChannel, ds: DelaySet, law: NLetterLaw, truncated: bool, c: Optional[float] = None) -> BoundPentagon:
    if law.x1_size != ch.x1_size or law.x2_size != ch.x2_size:
        raise ValidationError("n-letter law alphabets do not match the channel")
    pents = []
    for d in ds.delays:
        s, r2 = _caps(ch, ds, d, law, truncated)
        pents.append(BoundPentagon(a=s / law.n, b=r2 / law.n, c=np.inf if c is None else c))
    return intersect_pentagons(pents)


def r_n_point(ch: DiscreteChannel, ds: DelaySet, law: NLetterLaw) -> BoundPentagon:
    return _point(ch, ds, law, truncated=False)


def q_n_point(ch: DiscreteChannel, ds: DelaySet, law: NLetterLaw) -> BoundPentagon:
    if law.n < ds.D:
        raise UsageError("q_n needs n >= D", {"n": law.n, "D": ds.D})
    return _point(ch, ds, law, truncated=True)


def accmac_multiletter_point(ch: DiscreteChannel, ds: DelaySet, law: NLetterLaw) -> BoundPentagon:
    if law.n < ds.D:
        raise UsageError("n-letter ACC-MAC point needs n >= D", {"n": law.n, "D": ds.D})
    c = entropy(Pmf(law.probs.sum(axis=1))) / law.n
    return _point(ch, ds, law, truncated=True, c=c)


def edge_gap_bound(ch: DiscreteChannel, ds: DelaySet, n: int) -> float:
    """(d_max + d_min) log2|Y| / n."""
    return (ds.d_max + ds.d_min) * float(np.log2(ch.y_size)) / int(n)
