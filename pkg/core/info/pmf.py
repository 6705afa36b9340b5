"""Finite-alphabet probability laws: Pmf, ConditionalPmf, DiscreteChannel, DelaySet.

All types are immutable value objects. Constructors validate and raise
`core.kernel.types.ValidationError`; arrays are stored read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from core.kernel.types import UsageError, ValidationError


PMF_TOL = 1e-12
MAX_ALPHABET = 16


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def _check_rows(rows: np.ndarray, what: str, tol: float = PMF_TOL) -> None:
    if not np.all(np.isfinite(rows)):
        raise ValidationError(f"{what}: non-finite entry")
    if np.any(rows < 0.0):
        idx = np.argwhere(rows < 0.0)[0].tolist()
        raise ValidationError(f"{what}: negative entry at {idx}", {"index": idx})
    sums = rows.sum(axis=-1)
    bad = np.argwhere(np.abs(sums - 1.0) > tol)
    if bad.size:
        idx = bad[0].tolist()
        raise ValidationError(
            f"{what}: row {idx} sums to {float(sums[tuple(idx)]):.12g}",
            {"row": idx, "sum": float(sums[tuple(idx)])},
        )


@dataclass(frozen=True, eq=False)
class Pmf:
    """Probability vector over an indexed finite alphabet."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValidationError("pmf must be a nonempty vector", {"shape": list(p.shape)})
        _check_rows(p, "pmf")
        object.__setattr__(self, "probs", _frozen(p / p.sum()))

    @property
    def size(self) -> int:
        return int(self.probs.size)

    @classmethod
    def uniform(cls, size: int) -> "Pmf":
        return cls(np.full(int(size), 1.0 / int(size)))

    @classmethod
    def point(cls, size: int, index: int) -> "Pmf":
        p = np.zeros(int(size))
        p[int(index)] = 1.0
        return cls(p)

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "Pmf":
        w = np.asarray(weights, dtype=float)
        total = float(w.sum())
        if total <= 0.0 or np.any(w < 0.0):
            raise ValidationError("weights must be nonnegative with positive sum")
        return cls(w / total)

    def to_list(self) -> list:
        return [float(x) for x in self.probs]


@dataclass(frozen=True, eq=False)
class ConditionalPmf:
    """Stochastic matrix: one Pmf row per conditioning symbol."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        r = np.asarray(self.rows, dtype=float)
        if r.ndim != 2 or r.shape[0] == 0 or r.shape[1] == 0:
            raise ValidationError("conditional pmf must be a nonempty matrix", {"shape": list(r.shape)})
        _check_rows(r, "conditional pmf")
        object.__setattr__(self, "rows", _frozen(r / r.sum(axis=1, keepdims=True)))

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])

    @property
    def size(self) -> int:
        return int(self.rows.shape[1])

    def row(self, i: int) -> Pmf:
        return Pmf(self.rows[int(i)])

    @classmethod
    def constant(cls, n_rows: int, p: Pmf) -> "ConditionalPmf":
        return cls(np.tile(p.probs, (int(n_rows), 1)))

    def to_list(self) -> list:
        return [[float(x) for x in row] for row in self.rows]


@dataclass(frozen=True, eq=False)
class DiscreteChannel:
    """
    Memoryless two-input channel P(y|x1,x2).

    Attributes:
        - transition: array indexed (x1, x2, y); every (x1, x2) slice is a Pmf
        - labels: optional display names per alphabet ('x1', 'x2', 'y')
    """

    transition: np.ndarray
    labels: Optional[Tuple[Tuple[str, ...], Tuple[str, ...], Tuple[str, ...]]] = None

    def __post_init__(self) -> None:
        t = np.asarray(self.transition, dtype=float)
        if t.ndim != 3 or min(t.shape) == 0:
            raise ValidationError("transition must be a 3-d tensor indexed (x1, x2, y)", {"shape": list(t.shape)})
        if max(t.shape) > MAX_ALPHABET:
            raise ValidationError(
                f"alphabet larger than {MAX_ALPHABET} symbols",
                {"shape": list(t.shape), "max_alphabet": MAX_ALPHABET},
            )
        _check_rows(t, "transition")
        object.__setattr__(self, "transition", _frozen(t / t.sum(axis=2, keepdims=True)))
        if self.labels is not None:
            labels = tuple(tuple(str(s) for s in axis) for axis in self.labels)
            if tuple(len(x) for x in labels) != t.shape:
                raise ValidationError("labels do not match alphabet sizes")
            object.__setattr__(self, "labels", labels)

    @property
    def x1_size(self) -> int:
        return int(self.transition.shape[0])

    @property
    def x2_size(self) -> int:
        return int(self.transition.shape[1])

    @property
    def y_size(self) -> int:
        return int(self.transition.shape[2])

    def symbol_labels(self) -> Tuple[Tuple[str, ...], Tuple[str, ...], Tuple[str, ...]]:
        if self.labels is not None:
            return self.labels
        return tuple(tuple(str(i) for i in range(n)) for n in self.transition.shape)  # type: ignore[return-value]


@dataclass(frozen=True)
class DelaySet:
    """Delays {-d_min, ..., d_max}; D = d_max + d_min + 1."""

    d_min: int = 0
    d_max: int = 0
    delays: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if int(self.d_min) < 0 or int(self.d_max) < 0:
            raise ValidationError("d_min and d_max must be nonnegative", {"d_min": self.d_min, "d_max": self.d_max})
        object.__setattr__(self, "d_min", int(self.d_min))
        object.__setattr__(self, "d_max", int(self.d_max))
        object.__setattr__(self, "delays", tuple(range(-self.d_min, self.d_max + 1)))

    @property
    def D(self) -> int:  # noqa: N802
        return self.d_max + self.d_min + 1

    def check(self, d: int) -> int:
        if int(d) not in self.delays:
            raise UsageError(f"delay {d} not in delay set {list(self.delays)}", {"delay": int(d)})
        return int(d)

    def slot(self, d: int) -> int:
        """0-based window coordinate read by the channel under delay d (oldest symbol first)."""
        return self.d_max - self.check(d)
