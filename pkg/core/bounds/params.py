"""
Bound parameters (enterprise-grade): InnerParams, OuterParams, BoundResult.

Contract:
- InnerParams.p_x2_given_v has |X1|**D rows, windows coded oldest-first (see windows.py)
- OuterParams.p_vtilde lives on the |X1|**(2D-1) super-symbols of the D overlapping windows;
  p_x2_causal[i] gives P(x2_i | x2_1..x2_{i-1}, vtilde) with rows coded (vtilde, x2 prefix)
- every params type round-trips through a list of row-stochastic blocks (used by the search)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from core.bounds.windows import iid_law, vtilde_window
from core.geometry.region import BoundPentagon
from core.info.pmf import ConditionalPmf, DelaySet, DiscreteChannel, Pmf
from core.kernel.types import ValidationError


@dataclass(frozen=True, eq=False)
class InnerParams:
    p_x1: Pmf
    p_x2_given_v: ConditionalPmf

    def check(self, ch: DiscreteChannel, ds: DelaySet) -> "InnerParams":
        if self.p_x1.size != ch.x1_size:
            raise ValidationError("p_x1 size does not match |X1|", {"size": self.p_x1.size, "x1_size": ch.x1_size})
        rows = ch.x1_size ** ds.D
        if self.p_x2_given_v.n_rows != rows or self.p_x2_given_v.size != ch.x2_size:
            raise ValidationError(
                "p_x2_given_v must be |X1|^D x |X2|",
                {"shape": [self.p_x2_given_v.n_rows, self.p_x2_given_v.size], "expected": [rows, ch.x2_size]},
            )
        return self

    @classmethod
    def uniform(cls, ch: DiscreteChannel, ds: DelaySet) -> "InnerParams":
        return cls(Pmf.uniform(ch.x1_size), ConditionalPmf.constant(ch.x1_size ** ds.D, Pmf.uniform(ch.x2_size)))

    @classmethod
    def independent(cls, ch: DiscreteChannel, ds: DelaySet, p_x1: Sequence[float], p_x2: Sequence[float]) -> "InnerParams":
        """X2 drawn independently of the cognition window."""
        return cls(Pmf(np.asarray(p_x1, dtype=float)), ConditionalPmf.constant(ch.x1_size ** ds.D, Pmf(np.asarray(p_x2, dtype=float))))

    def blocks(self) -> List[np.ndarray]:
        return [self.p_x1.probs[None, :].copy(), self.p_x2_given_v.rows.copy()]

    @classmethod
    def from_blocks(cls, blocks: Sequence[np.ndarray]) -> "InnerParams":
        return cls(Pmf(blocks[0][0]), ConditionalPmf(blocks[1]))

    def to_dict(self) -> Dict[str, Any]:
        return {"p_x1": self.p_x1.to_list(), "p_x2_given_v": self.p_x2_given_v.to_list()}

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "InnerParams":
        try:
            return cls(Pmf(np.asarray(obj["p_x1"], dtype=float)), ConditionalPmf(np.asarray(obj["p_x2_given_v"], dtype=float)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"invalid inner params: {exc}") from exc


@dataclass(frozen=True, eq=False)
class OuterParams:
    p_vtilde: Pmf
    p_x2_causal: Tuple[ConditionalPmf, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_x2_causal", tuple(self.p_x2_causal))

    def check(self, ch: DiscreteChannel, ds: DelaySet) -> "OuterParams":
        D = ds.D
        u = ch.x1_size ** (2 * D - 1)
        if self.p_vtilde.size != u:
            raise ValidationError("p_vtilde must live on |X1|^(2D-1) super-symbols", {"size": self.p_vtilde.size, "expected": u})
        if len(self.p_x2_causal) != D:
            raise ValidationError("p_x2_causal needs one factor per block position", {"factors": len(self.p_x2_causal), "D": D})
        for i, factor in enumerate(self.p_x2_causal):
            rows = u * ch.x2_size ** i
            if factor.n_rows != rows or factor.size != ch.x2_size:
                raise ValidationError(
                    f"causal factor {i} must be {rows} x {ch.x2_size}",
                    {"factor": i, "shape": [factor.n_rows, factor.size]},
                )
        return self

    def block_conditional(self, x2_size: int) -> np.ndarray:
        """P(x2bar | vtilde) as a (U, |X2|**D) matrix, x2bar coded oldest-first."""
        u = self.p_vtilde.size
        q = self.p_x2_causal[0].rows
        for factor in self.p_x2_causal[1:]:
            # q: (U, X2^i) ; factor rows (U * X2^i, X2)
            nxt = factor.rows.reshape(u, q.shape[1], x2_size)
            q = (q[:, :, None] * nxt).reshape(u, -1)
        return q

    @classmethod
    def product_extension(cls, inner: InnerParams, ch: DiscreteChannel, ds: DelaySet) -> "OuterParams":
        """Blocked i.i.d. extension: vtilde i.i.d. p_x1, x2_i ~ P(x2 | i-th window), memoryless in x2."""
        D = ds.D
        q = ch.x1_size
        p_u = iid_law(inner.p_x1.probs, 2 * D - 1)
        factors = []
        for i in range(D):
            rows = inner.p_x2_given_v.rows[vtilde_window(q, D, i)]
            factors.append(ConditionalPmf(np.repeat(rows, ch.x2_size ** i, axis=0)))
        return cls(Pmf(p_u), tuple(factors))

    def blocks(self) -> List[np.ndarray]:
        return [self.p_vtilde.probs[None, :].copy()] + [f.rows.copy() for f in self.p_x2_causal]

    @classmethod
    def from_blocks(cls, blocks: Sequence[np.ndarray]) -> "OuterParams":
        return cls(Pmf(blocks[0][0]), tuple(ConditionalPmf(b) for b in blocks[1:]))

    def to_dict(self) -> Dict[str, Any]:
        return {"p_vtilde": self.p_vtilde.to_list(), "p_x2_causal": [f.to_list() for f in self.p_x2_causal]}

    @classmethod
    def from_dict(cls, obj: Dict[str, Any]) -> "OuterParams":
        try:
            return cls(
                Pmf(np.asarray(obj["p_vtilde"], dtype=float)),
                tuple(ConditionalPmf(np.asarray(f, dtype=float)) for f in obj["p_x2_causal"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"invalid outer params: {exc}") from exc


Params = Union[InnerParams, OuterParams]


@dataclass(frozen=True, eq=False)
class BoundResult:
    """
    Per-delay caps and their intersection.

    Attributes:
        - per_delay: d -> (sum_cap, r2_cap, r1_cap); r1_cap is math.inf when unconstrained
        - pentagon: componentwise minimum over delays
        - params: the generating parameters
    """

    per_delay: Dict[int, Tuple[float, float, float]]
    pentagon: BoundPentagon
    params: Params

    @classmethod
    def from_caps(cls, per_delay: Dict[int, Tuple[float, float, float]], params: Params) -> "BoundResult":
        pent = BoundPentagon(
            a=min(v[0] for v in per_delay.values()),
            b=min(v[1] for v in per_delay.values()),
            c=min(v[2] for v in per_delay.values()),
        )
        return cls(dict(per_delay), pent, params)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "per_delay": {
                str(d): {"sum_cap": s, "r2_cap": r2, "r1_cap": None if math.isinf(r1) else r1}
                for d, (s, r2, r1) in sorted(self.per_delay.items())
            },
            "pentagon": {"a": self.pentagon.a, "b": self.pentagon.b, "c": self.pentagon.c},
            "params": self.params.to_dict(),
        }
