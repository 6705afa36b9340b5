"""
Region search (enterprise-grade): trace inner/outer regions as hulls of evaluated pentagons.

Contract:
- evaluation order is fixed: mandatory seeds, structured seeds (uniform law first),
  random samples, then projected ascent per restart and direction
- `budget` caps the points the search adds on its own; mandatory seeds are always evaluated
- restart r draws from default_rng([seed, 1, r]); results are merged in restart order,
  so the worker count never changes the trace
- the outer search is seeded with the blocked product extension of every inner point of
  the same run; each extension's outer pentagon covers its inner pentagon
- an ascent direction is skipped once an evaluated point already meets the channel's
  alphabet cap in that direction (no pentagon can go further)
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as PydanticValidationError
from tqdm import tqdm

from core.bounds.accmac import accmac_inner_point, accmac_outer_point
from core.bounds.acmac import check_outer_cap, inner_point, outer_point
from core.bounds.params import BoundResult, InnerParams, OuterParams, Params
from core.geometry.region import BoundPentagon, RegionHull, support, union_hull
from core.info.pmf import ConditionalPmf, DelaySet, DiscreteChannel, Pmf
from core.kernel.manifest_store import read_json
from core.kernel.types import UsageError, error_from_pydantic


_log = logging.getLogger(__name__)

FD_STEP = 1e-6
MAX_HALVINGS = 8
IMPROVE_TOL = 1e-12
CAP_TOL = 1e-9


class SearchConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(default=0, ge=0)
    restarts: int = Field(default=2, ge=0)
    ascent_steps: int = Field(default=25, ge=0)
    step_size: float = Field(default=0.1, gt=0.0)
    n_dirs: int = Field(default=181, ge=3)
    random_samples: int = Field(default=32, ge=0)
    ascent_directions: int = Field(default=5, ge=2)
    ascent_coords: int = Field(default=16, ge=1)
    budget: Optional[int] = Field(default=None, ge=0)
    structured_seeds: bool = True
    structured_limit: int = Field(default=256, ge=1)

    @classmethod
    def from_mapping(cls, obj: Dict[str, Any]) -> "SearchConfig":
        try:
            return cls.model_validate(obj)
        except PydanticValidationError as exc:
            raise error_from_pydantic(exc, "search config") from exc

    @classmethod
    def from_file(cls, path: str) -> "SearchConfig":
        return cls.from_mapping(read_json(path))


@dataclass(frozen=True)
class TraceEntry:
    origin: str
    result: BoundResult


@dataclass
class SearchTrace:
    model: str
    entries: List[TraceEntry] = field(default_factory=list)

    def params(self) -> List[Params]:
        return [e.result.params for e in self.entries]

    def pentagons(self) -> List[BoundPentagon]:
        return [e.result.pentagon for e in self.entries]

    def hull(self) -> RegionHull:
        return union_hull(self.pentagons())


def alphabet_cap(ch: DiscreteChannel, codeword: bool = False) -> BoundPentagon:
    """Pentagon holding every per-letter point: a <= log|Y|, b <= log|X2|, and c <= log|X1| under codeword cognition."""
    c = math.log2(ch.x1_size) if codeword else math.inf
    return BoundPentagon(math.log2(ch.y_size), math.log2(ch.x2_size), c)


def _subset_masks(size: int, limit_ok: bool) -> List[Tuple[int, ...]]:
    full = tuple(range(size))
    if limit_ok:
        masks = [tuple(i for i in range(size) if m >> i & 1) for m in range(1, 2**size)]
    else:
        masks = [(i,) for i in range(size)]
    return [full] + [m for m in masks if m != full]


def _uniform_on(size: int, support_set: Sequence[int]) -> np.ndarray:
    p = np.zeros(size)
    p[list(support_set)] = 1.0 / len(support_set)
    return p


def _random_rows(rng: np.random.Generator, shape: Tuple[int, int], alpha: float) -> np.ndarray:
    rows = rng.dirichlet(np.full(shape[1], alpha), size=shape[0])
    return rows / rows.sum(axis=1, keepdims=True)


class InnerModel:
    def __init__(self, ch: DiscreteChannel, ds: DelaySet, codeword: bool = False) -> None:
        self.ch = ch
        self.ds = ds
        self.codeword = codeword
        self.name = "accmac_inner" if codeword else "inner"
        self.cap = alphabet_cap(ch, codeword)

    def evaluate(self, params: InnerParams) -> BoundResult:
        if self.codeword:
            return accmac_inner_point(self.ch, self.ds, params)
        return inner_point(self.ch, self.ds, params)

    def from_blocks(self, blocks: Sequence[np.ndarray]) -> InnerParams:
        return InnerParams.from_blocks(blocks)

    def structured_seeds(self, cfg: SearchConfig) -> List[InnerParams]:
        uniform = InnerParams.uniform(self.ch, self.ds)
        if not cfg.structured_seeds:
            return [uniform]
        x1, x2 = self.ch.x1_size, self.ch.x2_size
        small = (2**x1 - 1) * (2**x2 - 1) <= cfg.structured_limit
        seeds = [uniform]
        for s1, s2 in itertools.product(_subset_masks(x1, small), _subset_masks(x2, small)):
            if len(s1) == x1 and len(s2) == x2:
                continue
            seeds.append(InnerParams.independent(self.ch, self.ds, _uniform_on(x1, s1), _uniform_on(x2, s2)))
        return seeds

    def random_params(self, rng: np.random.Generator, alpha: float = 1.0) -> InnerParams:
        rows = self.ch.x1_size**self.ds.D
        return InnerParams(
            Pmf(_random_rows(rng, (1, self.ch.x1_size), alpha)[0]),
            ConditionalPmf(_random_rows(rng, (rows, self.ch.x2_size), alpha)),
        )


class OuterModel:
    def __init__(self, ch: DiscreteChannel, ds: DelaySet, codeword: bool = False) -> None:
        check_outer_cap(ch, ds)
        self.ch = ch
        self.ds = ds
        self.codeword = codeword
        self.name = "accmac_outer" if codeword else "outer"
        self.cap = alphabet_cap(ch, codeword)

    def evaluate(self, params: OuterParams) -> BoundResult:
        if self.codeword:
            return accmac_outer_point(self.ch, self.ds, params)
        return outer_point(self.ch, self.ds, params)

    def from_blocks(self, blocks: Sequence[np.ndarray]) -> OuterParams:
        return OuterParams.from_blocks(blocks)

    def extend(self, inner: InnerParams) -> OuterParams:
        return OuterParams.product_extension(inner, self.ch, self.ds)

    def structured_seeds(self, cfg: SearchConfig) -> List[OuterParams]:
        return [self.extend(p) for p in InnerModel(self.ch, self.ds).structured_seeds(cfg)]

    def random_params(self, rng: np.random.Generator, alpha: float = 1.0) -> OuterParams:
        D = self.ds.D
        u = self.ch.x1_size ** (2 * D - 1)
        p_u = _random_rows(rng, (1, u), alpha)[0]
        factors = tuple(
            ConditionalPmf(_random_rows(rng, (u * self.ch.x2_size**i, self.ch.x2_size), alpha)) for i in range(D)
        )
        return OuterParams(Pmf(p_u), factors)


def project_rows(y: np.ndarray) -> np.ndarray:
    """Euclidean projection of every row onto the probability simplex."""
    m, k = y.shape
    u = -np.sort(-y, axis=1)
    css = np.cumsum(u, axis=1) - 1.0
    ind = np.arange(1, k + 1)
    cond = u - css / ind > 0
    rho = k - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(m), rho] / (rho + 1)
    x = np.maximum(y - theta[:, None], 0.0)
    return x / x.sum(axis=1, keepdims=True)


def _directions(n: int) -> List[Tuple[float, float]]:
    out = []
    for k in range(n):
        theta = 0.5 * math.pi * k / (n - 1)
        out.append((max(0.0, math.cos(theta)), max(0.0, math.sin(theta))))
    return out


def _ascend(model: Any, start: Params, w: Tuple[float, float], cfg: SearchConfig, rng: np.random.Generator) -> List[BoundResult]:
    """Monotone projected ascent of support(pentagon, w); returns every accepted point."""
    blocks = [b.astype(float) for b in start.blocks()]
    f = support(model.evaluate(start).pentagon, *w)
    ceiling = support(model.cap, *w)
    coords = [(bi, r, c) for bi, b in enumerate(blocks) for r in range(b.shape[0]) for c in range(b.shape[1])]
    accepted: List[BoundResult] = []

    for _ in range(cfg.ascent_steps):
        if f >= ceiling - CAP_TOL:
            break
        if len(coords) > cfg.ascent_coords:
            pick = [coords[i] for i in sorted(rng.choice(len(coords), cfg.ascent_coords, replace=False))]
        else:
            pick = coords
        grad = [np.zeros_like(b) for b in blocks]
        for bi, r, c in pick:
            moved = blocks[bi].copy()
            row = moved[r].copy()
            row[c] += FD_STEP
            moved[r] = project_rows(row[None, :])[0]
            trial = blocks[:bi] + [moved] + blocks[bi + 1 :]
            grad[bi][r, c] = (support(model.evaluate(model.from_blocks(trial)).pentagon, *w) - f) / FD_STEP
        if not any(np.any(g != 0.0) for g in grad):
            break

        step = cfg.step_size
        improved = False
        for _ in range(MAX_HALVINGS):
            cand = [project_rows(b + step * g) for b, g in zip(blocks, grad)]
            res = model.evaluate(model.from_blocks(cand))
            fc = support(res.pentagon, *w)
            if fc > f + IMPROVE_TOL:
                blocks, f = cand, fc
                accepted.append(res)
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    return accepted


def run_search(
    model: Any,
    cfg: SearchConfig,
    mandatory: Sequence[Params] = (),
    workers: int = 1,
    progress: bool = False,
) -> SearchTrace:
    trace = SearchTrace(model=model.name)
    for p in mandatory:
        trace.entries.append(TraceEntry("seed-extension", model.evaluate(p)))

    room = math.inf if cfg.budget is None else int(cfg.budget)
    if room <= 0 and not mandatory:
        raise UsageError("search budget must be positive", {"budget": cfg.budget})

    rng = np.random.default_rng([cfg.seed, 0])
    candidates: List[Tuple[str, Params]] = [("structured", p) for p in model.structured_seeds(cfg)]
    for j in range(cfg.random_samples):
        candidates.append(("random", model.random_params(rng, 1.0 if j % 2 == 0 else 0.3)))

    for origin, p in candidates:
        if room <= 0:
            break
        trace.entries.append(TraceEntry(origin, model.evaluate(p)))
        room -= 1

    if room > 0 and cfg.restarts > 0 and cfg.ascent_steps > 0:
        pool = [e.result for e in trace.entries]
        dirs = [
            w
            for w in _directions(cfg.ascent_directions)
            if max((support(res.pentagon, *w) for res in pool), default=0.0) < support(model.cap, *w) - CAP_TOL
        ]

        def restart(r: int) -> List[BoundResult]:
            rng_r = np.random.default_rng([cfg.seed, 1, r])
            out: List[BoundResult] = []
            for w in dirs:
                if r == 0:
                    start = max(pool, key=lambda res: support(res.pentagon, *w)).params
                else:
                    start = model.random_params(rng_r)
                out.extend(_ascend(model, start, w, cfg, rng_r))
            return out

        with ThreadPoolExecutor(max_workers=max(1, int(workers))) as executor:
            futures = [executor.submit(restart, r) for r in range(cfg.restarts)]
            for fut in tqdm(futures, desc=model.name, disable=not progress, leave=False):
                for res in fut.result():
                    if room <= 0:
                        break
                    trace.entries.append(TraceEntry("ascent", res))
                    room -= 1

    _log.info(
        "search done",
        extra={"model": model.name, "seed": cfg.seed, "n_params": len(trace.entries), "mandatory": len(mandatory)},
    )
    return trace


def _seeding_config(cfg: SearchConfig) -> SearchConfig:
    if cfg.budget is None:
        return cfg
    return cfg.model_copy(update={"budget": max(1, cfg.budget)})


def search_inner(
    ch: DiscreteChannel, ds: DelaySet, search: SearchConfig, codeword: bool = False, workers: int = 1, progress: bool = False
) -> SearchTrace:
    return run_search(InnerModel(ch, ds, codeword), search, workers=workers, progress=progress)


def search_outer(
    ch: DiscreteChannel,
    ds: DelaySet,
    search: SearchConfig,
    inner_trace: Optional[SearchTrace] = None,
    codeword: bool = False,
    workers: int = 1,
    progress: bool = False,
) -> SearchTrace:
    model = OuterModel(ch, ds, codeword)
    inner_model = InnerModel(ch, ds, codeword)
    if inner_trace is None:
        inner_trace = run_search(inner_model, _seeding_config(search), workers=workers, progress=progress)
    inner_params = [p for p in inner_trace.params() if isinstance(p, InnerParams)]
    return run_search(model, search, [model.extend(p) for p in inner_params], workers=workers, progress=progress)


def evaluate_params(model: Any, params: Sequence[Params]) -> SearchTrace:
    """Evaluate a fixed parameter list (shared-trace comparisons)."""
    return SearchTrace(model=model.name, entries=[TraceEntry("given", model.evaluate(p)) for p in params])


def inner_region(ch: DiscreteChannel, ds: DelaySet, search: SearchConfig) -> RegionHull:
    return search_inner(ch, ds, search).hull()


def outer_region(ch: DiscreteChannel, ds: DelaySet, search: SearchConfig) -> RegionHull:
    return search_outer(ch, ds, search).hull()


def accmac_inner_region(ch: DiscreteChannel, ds: DelaySet, search: SearchConfig) -> RegionHull:
    return search_inner(ch, ds, search, codeword=True).hull()


def accmac_outer_region(ch: DiscreteChannel, ds: DelaySet, search: SearchConfig) -> RegionHull:
    return search_outer(ch, ds, search, codeword=True).hull()
