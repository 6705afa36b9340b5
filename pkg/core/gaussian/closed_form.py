"""
Gaussian bounds (enterprise-grade): closed-form regions for y = x1(i-d) + x2(i) + z, d in {0, 1}.

Contract:
- outer, rho in [0, 1/sqrt(2)]:
    sum_cap = 1/2 log2(1 + (P1 + 2 rho sqrt(P1 P2) + P2) / N),  r2_cap = 1/2 log2(1 + P2 (1 - 2 rho^2) / N)
- inner, (rho, P2~) in [0, 1/sqrt(2)] x [0, P2]:
    sum_cap = 1/2 log2((N + P1 + P2~ + 2 rho sqrt(P1 P2~)) / (N + P2~ (1 - rho^2))) + r2_cap,
    r2_cap = 1/2 log2(1 + P2~ (1 - 2 rho^2) / N)
- general inner pentagon with (P1~, P2~, rho1, rho2): minimum over d of the per-delay caps
- all logarithms base 2; the delay set is fixed to {0, 1}
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic import ValidationError as PydanticValidationError

from core.geometry.region import BoundPentagon, RegionHull, union_hull
from core.kernel.types import UsageError, ValidationError, error_from_pydantic


RHO_MAX = 1.0 / math.sqrt(2.0)
DEFAULT_RHO_STEPS = 101
DEFAULT_P2_STEPS = 51


class GaussianSpec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    p1: float = Field(ge=0.0)
    p2: float = Field(ge=0.0)
    n0: float = Field(gt=0.0)
    d_set: Tuple[int, ...] = (0, 1)

    @field_validator("d_set")
    @classmethod
    def _fixed_delays(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if tuple(sorted(v)) != (0, 1):
            raise ValueError("the Gaussian bounds are defined for the delay set {0, 1} only")
        return (0, 1)

    @classmethod
    def build(cls, p1: float, p2: float, n0: float) -> "GaussianSpec":
        try:
            return cls(p1=p1, p2=p2, n0=n0)
        except PydanticValidationError as exc:
            raise error_from_pydantic(exc, "gaussian spec") from exc


@dataclass(frozen=True)
class GaussianSample:
    params: Tuple[float, ...]
    sum_cap: float
    r2_cap: float

    def pentagon(self) -> BoundPentagon:
        return BoundPentagon(a=self.sum_cap, b=self.r2_cap)


@dataclass(frozen=True)
class GaussianCurve:
    samples: List[GaussianSample] = field(default_factory=list)
    hull: Optional[RegionHull] = None


def _half_log2(x: float) -> float:
    return 0.5 * math.log2(x)


def _grid(lo: float, hi: float, steps: int, what: str) -> np.ndarray:
    if int(steps) < 2:
        raise UsageError(f"{what} must be at least 2", {what: steps})
    return np.linspace(lo, hi, int(steps))


def outer_caps(spec: GaussianSpec, rho: float) -> Tuple[float, float]:
    n = spec.n0
    s = _half_log2(1.0 + (spec.p1 + 2.0 * rho * math.sqrt(spec.p1 * spec.p2) + spec.p2) / n)
    r2 = _half_log2(1.0 + spec.p2 * max(0.0, 1.0 - 2.0 * rho * rho) / n)
    return s, r2


def inner_caps(spec: GaussianSpec, rho: float, p2_tilde: float) -> Tuple[float, float]:
    n = spec.n0
    r2 = _half_log2(1.0 + p2_tilde * max(0.0, 1.0 - 2.0 * rho * rho) / n)
    num = n + spec.p1 + p2_tilde + 2.0 * rho * math.sqrt(spec.p1 * p2_tilde)
    den = n + p2_tilde * (1.0 - rho * rho)
    return _half_log2(num / den) + r2, r2


def covariance_inner(p1_tilde: float, p2_tilde: float, rho1: float, rho2: float) -> np.ndarray:
    """Covariance of (V1, V2, X2): independent window symbols, X2 correlated with each."""
    s = math.sqrt(p1_tilde * p2_tilde)
    return np.array(
        [
            [p1_tilde, 0.0, rho1 * s],
            [0.0, p1_tilde, rho2 * s],
            [rho1 * s, rho2 * s, p2_tilde],
        ]
    )


def is_psd(m: np.ndarray, tol: float = 1e-12) -> bool:
    return bool(np.min(np.linalg.eigvalsh(m)) >= -tol)


def gaussian_inner_point(spec: GaussianSpec, p1_tilde: float, p2_tilde: float, rho1: float, rho2: float) -> BoundPentagon:
    if not (0.0 <= p1_tilde <= spec.p1 and 0.0 <= p2_tilde <= spec.p2):
        raise ValidationError("powers must satisfy 0 <= P~i <= Pi", {"p1_tilde": p1_tilde, "p2_tilde": p2_tilde})
    if abs(rho1) > 1.0 or abs(rho2) > 1.0 or rho1 * rho1 + rho2 * rho2 > 1.0 + 1e-12:
        raise ValidationError("correlations must satisfy rho1^2 + rho2^2 <= 1", {"rho1": rho1, "rho2": rho2})
    n = spec.n0
    r2 = _half_log2(1.0 + p2_tilde * max(0.0, 1.0 - rho1 * rho1 - rho2 * rho2) / n)
    sums = []
    for lam in (rho2, rho1):  # d = 0 reads V2, d = 1 reads V1
        num = n + p1_tilde + p2_tilde + 2.0 * math.sqrt(p1_tilde * p2_tilde) * lam
        den = n + p2_tilde * (1.0 - lam * lam)
        sums.append(_half_log2(num / den) + r2)
    return BoundPentagon(a=min(sums), b=r2)


def gaussian_outer(spec: GaussianSpec, rho_steps: int = DEFAULT_RHO_STEPS) -> GaussianCurve:
    samples = []
    for rho in _grid(0.0, RHO_MAX, rho_steps, "rho_steps"):
        s, r2 = outer_caps(spec, float(rho))
        samples.append(GaussianSample((float(rho),), s, r2))
    return GaussianCurve(samples, union_hull(x.pentagon() for x in samples))


def gaussian_inner(spec: GaussianSpec, rho_steps: int = DEFAULT_RHO_STEPS, p2_steps: int = DEFAULT_P2_STEPS) -> GaussianCurve:
    samples = []
    for rho in _grid(0.0, RHO_MAX, rho_steps, "rho_steps"):
        for p2t in _grid(0.0, spec.p2, p2_steps, "p2_steps"):
            s, r2 = inner_caps(spec, float(rho), float(p2t))
            samples.append(GaussianSample((float(rho), float(p2t)), s, r2))
    return GaussianCurve(samples, union_hull(x.pentagon() for x in samples))
