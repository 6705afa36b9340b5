"""
Bundled channels with known regions, used for regression and acceptance runs.

- mod channel: X1 = {2, 4}, X2 = Y = {0, 1, 2, 3}, y = x2 mod x1 (deterministic)
- binary additive: y = x1 xor x2 xor z, z ~ Bernoulli(p)
- tiny random channels for property checks
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np

from core.geometry.region import BoundPentagon, RegionHull, pentagon_vertices
from core.info.functionals import binary_entropy
from core.info.pmf import DelaySet, DiscreteChannel
from core.kernel.types import ValidationError


@dataclass(frozen=True)
class KnownRegion:
    hull: RegionHull
    citation: str


@dataclass(frozen=True, eq=False)
class NamedChannel:
    id: str
    channel: DiscreteChannel
    delays: DelaySet
    known_regions: Dict[str, KnownRegion] = field(default_factory=dict)
    sum_rate_cap: Optional[float] = None


MOD_X1 = (2, 4)
MOD_X2 = (0, 1, 2, 3)


def build_mod_channel(delays: Optional[DelaySet] = None) -> NamedChannel:
    delays = delays or DelaySet(0, 0)
    t = np.zeros((len(MOD_X1), len(MOD_X2), len(MOD_X2)))
    for i, x1 in enumerate(MOD_X1):
        for j, x2 in enumerate(MOD_X2):
            t[i, j, MOD_X2.index(x2 % x1)] = 1.0
    labels = (tuple(str(s) for s in MOD_X1), tuple(str(s) for s in MOD_X2), tuple(str(s) for s in MOD_X2))
    return NamedChannel(
        id="mod",
        channel=DiscreteChannel(t, labels),
        delays=delays,
        known_regions={
            "cmac": KnownRegion(
                pentagon_vertices(BoundPentagon(a=2.0, b=2.0)),
                "message cognition: R1 + R2 <= 2 (triangle)",
            ),
            "cc-mac": KnownRegion(
                pentagon_vertices(BoundPentagon(a=2.0, b=2.0, c=1.0)),
                "codeword cognition: R1 <= 1, R1 + R2 <= 2 (trapezoid)",
            ),
        },
        sum_rate_cap=2.0,
    )


def build_binary_additive(p: float, delays: Optional[DelaySet] = None) -> NamedChannel:
    delays = delays or DelaySet(0, 1)
    if not 0.0 <= float(p) <= 0.5:
        raise ValidationError("crossover must lie in [0, 0.5]", {"p": p})
    p = float(p)
    t = np.zeros((2, 2, 2))
    for x1 in range(2):
        for x2 in range(2):
            t[x1, x2, x1 ^ x2] = 1.0 - p
            t[x1, x2, 1 - (x1 ^ x2)] += p
    cap = 1.0 - binary_entropy(p)
    return NamedChannel(
        id=f"binary-additive-p{p:g}",
        channel=DiscreteChannel(t, (("0", "1"), ("0", "1"), ("0", "1"))),
        delays=delays,
        known_regions={
            "acmac-sum-cap": KnownRegion(
                pentagon_vertices(BoundPentagon(a=cap, b=cap)),
                "additive noise: R1 + R2 <= 1 - H(Z)",
            )
        },
        sum_rate_cap=cap,
    )


def random_channel(rng: np.random.Generator, x1_size: int = 2, x2_size: int = 2, y_size: int = 2) -> DiscreteChannel:
    t = rng.dirichlet(np.ones(y_size), size=(x1_size, x2_size))
    return DiscreteChannel(t / t.sum(axis=2, keepdims=True))


BUNDLED: Dict[str, Callable[..., NamedChannel]] = {
    "mod": build_mod_channel,
    "binary-additive": build_binary_additive,
}
