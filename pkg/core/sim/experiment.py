"""
Monte-Carlo experiments (enterprise-grade): SimConfig -> SimReport.

Contract:
- trial t draws everything (delay, codebook seed, messages, channel noise, ensemble
  false alarms) from default_rng([seed, t]); the report is a function of (cfg, params)
  and never of the worker count
- ACMAC splits R1 into a directly decoded part r1_direct and a part carried by encoder 2:
  log2 M1 = n r1_direct, log2 M2 = n (r2 + r1 - r1_direct); r1_direct defaults to
  min(r1, split_fraction * min_d I_d(X1;Y))
- ACC-MAC uses log2 M1 = n r1, log2 M2 = n r2
- a trial errs when the transmission is flagged or the decoded pair differs from the sent one
"""

from __future__ import annotations

import csv
import io
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as PydanticValidationError
from scipy.stats import norm
from tqdm import tqdm

from core.bounds.acmac import joint_law_inner
from core.bounds.params import InnerParams
from core.info.functionals import mutual_information
from core.info.pmf import DelaySet, DiscreteChannel
from core.kernel.manifest_store import atomic_write_json, atomic_write_text, clean, fmt, read_json
from core.kernel.types import ValidationError, error_from_pydantic
from core.sim.codebooks import Codebooks
from core.sim.coding import (
    DEFAULT_EXHAUSTIVE_LIMIT,
    EVENTS,
    MODEL_ACCMAC,
    MODEL_ACMAC,
    decode,
    transmit,
)


_log = logging.getLogger(__name__)

CONFIDENCE = 0.95
OUTCOMES = ("correct", "erasure", "wrong")
REPORT_JSON = "report.json"
REPORT_CSV = "per_delay.csv"


class SimConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    r1: float = Field(ge=0.0)
    r2: float = Field(ge=0.0)
    eps: float = Field(default=0.5, gt=0.0)
    trials: int = Field(default=200, ge=1)
    seed: int = Field(default=0, ge=0)
    delay_policy: Union[Literal["uniform"], int] = "uniform"
    model: Literal["acmac", "accmac"] = MODEL_ACMAC
    r1_direct: Optional[float] = Field(default=None, ge=0.0)
    split_fraction: float = Field(default=0.85, ge=0.0, le=1.0)
    exhaustive_limit: int = Field(default=DEFAULT_EXHAUSTIVE_LIMIT, ge=1)

    @classmethod
    def from_mapping(cls, obj: Dict[str, Any]) -> "SimConfig":
        try:
            return cls.model_validate(obj)
        except PydanticValidationError as exc:
            raise error_from_pydantic(exc, "simulation config") from exc

    @classmethod
    def from_file(cls, path: str, **overrides: Any) -> "SimConfig":
        obj = dict(read_json(path))
        obj.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_mapping(obj)

    def check(self, ds: DelaySet) -> "SimConfig":
        if self.n < ds.D:
            raise ValidationError("blocklength must be at least D", {"n": self.n, "D": ds.D})
        if self.delay_policy != "uniform" and int(self.delay_policy) not in ds.delays:
            raise ValidationError(
                f"fixed delay {self.delay_policy} not in delay set", {"delay": self.delay_policy, "delays": list(ds.delays)}
            )
        if self.r1_direct is not None and self.r1_direct > self.r1:
            raise ValidationError("r1_direct cannot exceed r1", {"r1_direct": self.r1_direct, "r1": self.r1})
        return self


@dataclass(frozen=True)
class TrialRecord:
    index: int
    delay: int
    error: bool
    outcome: str
    events: Dict[str, bool]
    modes: Dict[str, str]


@dataclass
class DelayTally:
    trials: int = 0
    errors: int = 0

    @property
    def error_rate(self) -> float:
        return self.errors / self.trials if self.trials else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {"trials": self.trials, "errors": self.errors, "error_rate": self.error_rate}


@dataclass
class SimReport:
    """Aggregated trial outcomes; per-delay trials sum to `trials`."""

    config: Dict[str, Any]
    r1_direct: float
    log2_m1: float
    log2_m2: float
    trials: int = 0
    errors: int = 0
    per_delay: Dict[int, DelayTally] = field(default_factory=dict)
    outcomes: Dict[str, int] = field(default_factory=lambda: {k: 0 for k in OUTCOMES})
    events: Dict[str, int] = field(default_factory=lambda: {k: 0 for k in EVENTS})
    modes: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def error_rate(self) -> float:
        return self.errors / self.trials if self.trials else 0.0

    @property
    def ci_half_width(self) -> float:
        """Normal-approximation half-width of the error-rate interval."""
        if not self.trials:
            return 0.0
        p = self.error_rate
        z = float(norm.ppf(0.5 + CONFIDENCE / 2.0))
        return z * math.sqrt(p * (1.0 - p) / self.trials)

    def add(self, rec: TrialRecord) -> None:
        self.trials += 1
        self.errors += int(rec.error)
        tally = self.per_delay.setdefault(rec.delay, DelayTally())
        tally.trials += 1
        tally.errors += int(rec.error)
        self.outcomes[rec.outcome] += 1
        for k, hit in rec.events.items():
            self.events[k] += int(hit)
        for stage, mode in rec.modes.items():
            counts = self.modes.setdefault(stage, {})
            counts[mode] = counts.get(mode, 0) + 1

    def to_dict(self) -> Dict[str, Any]:
        return clean(
            {
                "config": self.config,
                "r1_direct": self.r1_direct,
                "log2_m1": self.log2_m1,
                "log2_m2": self.log2_m2,
                "trials": self.trials,
                "errors": self.errors,
                "error_rate": self.error_rate,
                "ci_half_width": self.ci_half_width,
                "confidence": CONFIDENCE,
                "per_delay": {str(d): t.to_dict() for d, t in sorted(self.per_delay.items())},
                "outcomes": dict(self.outcomes),
                "events": dict(self.events),
                "modes": self.modes,
            }
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["delay", "trials", "errors", "error_rate"])
        for d, t in sorted(self.per_delay.items()):
            w.writerow([d, t.trials, t.errors, fmt(t.error_rate)])
        return buf.getvalue()

    def write(self, out_dir: str) -> List[str]:
        atomic_write_json(os.path.join(out_dir, REPORT_JSON), self.to_dict())
        atomic_write_text(os.path.join(out_dir, REPORT_CSV), self.to_csv())
        return [REPORT_JSON, REPORT_CSV]


def direct_rate(ch: DiscreteChannel, ds: DelaySet, cfg: SimConfig, params: InnerParams) -> float:
    """Part of R1 decoded directly from y in the successive scheme."""
    if cfg.model == MODEL_ACCMAC:
        return cfg.r1
    if cfg.r1_direct is not None:
        return cfg.r1_direct
    i1 = min(mutual_information(joint_law_inner(ch, ds, d, params), "x1", "y") for d in ds.delays)
    return min(cfg.r1, cfg.split_fraction * max(i1, 0.0))


def _outcome(decoded_pair: tuple, truth: tuple, erasure: bool) -> str:
    if erasure:
        return "erasure"
    return "correct" if decoded_pair == truth else "wrong"


def run_trial(
    ch: DiscreteChannel,
    ds: DelaySet,
    cfg: SimConfig,
    params: InnerParams,
    log2_m1: float,
    log2_m2: float,
    t: int,
) -> TrialRecord:
    rng = np.random.default_rng([cfg.seed, t])
    if cfg.delay_policy == "uniform":
        d = int(ds.delays[int(rng.integers(len(ds.delays)))])
    else:
        d = int(cfg.delay_policy)
    cb = Codebooks(params, ds, cfg.n, log2_m1, log2_m2, int(rng.integers(2**63 - 1)))
    m1 = cb.draw_message(1, rng)
    m2 = cb.draw_message(2, rng)
    tx = transmit(ch, ds, cb, m1, m2, d, rng, model=cfg.model, exhaustive_limit=cfg.exhaustive_limit)
    out = decode(
        ch, ds, cb, tx.y, d, cfg.eps, cfg.model, exhaustive_limit=cfg.exhaustive_limit, truth=(m1, m2), rng=rng
    )
    events = {k: bool(out.events.get(k, False)) for k in EVENTS}
    events["not_unique"] = not tx.unique
    outcome = _outcome((out.m1_hat, out.m2_hat), (m1, m2), out.erasure)
    error = outcome != "correct" or not tx.unique
    if error and outcome == "correct":
        outcome = "wrong"
    return TrialRecord(t, d, error, outcome, events, dict(out.modes))


def run_experiment(
    ch: DiscreteChannel,
    ds: DelaySet,
    cfg: SimConfig,
    params: InnerParams,
    workers: int = 1,
    progress: bool = False,
) -> SimReport:
    cfg.check(ds)
    params.check(ch, ds)
    r1_direct = direct_rate(ch, ds, cfg, params)
    if cfg.model == MODEL_ACCMAC:
        log2_m1, log2_m2 = cfg.n * cfg.r1, cfg.n * cfg.r2
    else:
        log2_m1, log2_m2 = cfg.n * r1_direct, cfg.n * (cfg.r2 + cfg.r1 - r1_direct)

    report = SimReport(config=cfg.model_dump(), r1_direct=r1_direct, log2_m1=log2_m1, log2_m2=log2_m2)
    with ThreadPoolExecutor(max_workers=max(1, int(workers))) as executor:
        records = executor.map(lambda t: run_trial(ch, ds, cfg, params, log2_m1, log2_m2, t), range(cfg.trials))
        for rec in tqdm(records, total=cfg.trials, desc="simulate", disable=not progress, leave=False):
            report.add(rec)

    _log.info(
        "simulation done",
        extra={
            "model": cfg.model,
            "n": cfg.n,
            "seed": cfg.seed,
            "trials": report.trials,
            "error_rate": report.error_rate,
        },
    )
    return report
