"""
Channel JSON format.

    {"x1_alphabet": [...], "x2_alphabet": [...], "y_alphabet": [...],
     "transition": [[[P(y|x1,x2) for y] for x2] for x1],
     "d_min": 0, "d_max": 1, "id": "optional"}

Rows within ROW_TOL of stochastic are re-normalized; anything further off is
rejected with the offending (x1, x2) row.
"""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from core.channels.examples import NamedChannel
from core.info.pmf import MAX_ALPHABET, DelaySet, DiscreteChannel
from core.kernel.manifest_store import atomic_write_json, read_json
from core.kernel.types import ValidationError, error_from_pydantic


ROW_TOL = 1e-9


class ChannelFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: Optional[str] = None
    description: Optional[str] = None
    x1_alphabet: List[str] = Field(min_length=1, max_length=MAX_ALPHABET)
    x2_alphabet: List[str] = Field(min_length=1, max_length=MAX_ALPHABET)
    y_alphabet: List[str] = Field(min_length=1, max_length=MAX_ALPHABET)
    transition: List[List[List[float]]]
    d_min: int = Field(ge=0)
    d_max: int = Field(ge=0)

    @model_validator(mode="after")
    def _shape(self) -> "ChannelFile":
        expected = (len(self.x1_alphabet), len(self.x2_alphabet), len(self.y_alphabet))
        if len(self.transition) != expected[0] or any(len(r) != expected[1] for r in self.transition):
            raise ValueError(f"transition must be indexed [x1][x2][y] with shape {list(expected)}")
        for i, plane in enumerate(self.transition):
            for j, row in enumerate(plane):
                if len(row) != expected[2]:
                    raise ValueError(f"row (x1={i}, x2={j}) has {len(row)} entries, expected {expected[2]}")
        return self

    def row_report(self) -> Tuple[np.ndarray, Dict[str, Any]]:
        """Re-normalized transition tensor and a stochasticity report."""
        t = np.asarray(self.transition, dtype=float)
        if not np.all(np.isfinite(t)) or np.any(t < 0.0):
            i, j, _ = (int(x) for x in np.argwhere(~np.isfinite(t) | (t < 0.0))[0])
            raise ValidationError(f"row (x1={i}, x2={j}) has a negative or non-finite entry", {"row": [i, j]})
        sums = t.sum(axis=2)
        dev = np.abs(sums - 1.0)
        bad = np.argwhere(dev > ROW_TOL)
        if bad.size:
            i, j = (int(x) for x in bad[0])
            raise ValidationError(
                f"row (x1={i}, x2={j}) sums to {sums[i, j]:.9g}, not 1 within {ROW_TOL:g}",
                {"row": [i, j], "sum": float(sums[i, j])},
            )
        report = {
            "max_row_deviation": float(dev.max()),
            "renormalized_rows": int(np.count_nonzero(dev > 0.0)),
        }
        return t / sums[:, :, None], report

    def to_channel(self) -> Tuple[DiscreteChannel, DelaySet]:
        t, _ = self.row_report()
        labels = (tuple(self.x1_alphabet), tuple(self.x2_alphabet), tuple(self.y_alphabet))
        return DiscreteChannel(t, labels), DelaySet(self.d_min, self.d_max)

    def diagnostics(self) -> Dict[str, Any]:
        ch, ds = self.to_channel()
        _, report = self.row_report()
        out = {
            "x1_symbols": ch.x1_size,
            "x2_symbols": ch.x2_size,
            "y_symbols": ch.y_size,
            "D": ds.D,
            "delays": list(ds.delays),
            "status": "OK",
        }
        out.update(report)
        return out

    @classmethod
    def from_named(cls, named: NamedChannel) -> "ChannelFile":
        x1, x2, y = named.channel.symbol_labels()
        return cls(
            id=named.id,
            x1_alphabet=list(x1),
            x2_alphabet=list(x2),
            y_alphabet=list(y),
            transition=named.channel.transition.tolist(),
            d_min=named.delays.d_min,
            d_max=named.delays.d_max,
        )

    @classmethod
    def from_mapping(cls, obj: Any) -> "ChannelFile":
        try:
            return cls.model_validate(obj)
        except PydanticValidationError as exc:
            raise error_from_pydantic(exc, "channel file") from exc

    def save(self, path: str) -> int:
        return atomic_write_json(path, self.model_dump(exclude_none=True))


def load_channel_file(path: str) -> ChannelFile:
    return ChannelFile.from_mapping(read_json(path))
