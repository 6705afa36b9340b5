"""JointTensor: a dense joint law with one semantic tag per axis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from core.info.pmf import MAX_ALPHABET
from core.kernel.types import UsageError, ValidationError


JOINT_TOL = 1e-10

TagSet = Union[str, Iterable[str]]


def as_tags(tags: TagSet) -> Tuple[str, ...]:
    if isinstance(tags, str):
        return (tags,)
    return tuple(tags)


@dataclass(frozen=True, eq=False)
class JointTensor:
    """
    Dense joint law, one tag per axis.

    `letters` gives the number of channel letters an axis spans (default 1); an axis may hold
    at most MAX_ALPHABET ** letters symbols.
    """

    values: np.ndarray
    tags: Tuple[str, ...]
    letters: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        tags = as_tags(self.tags)
        if v.ndim != len(tags):
            raise ValidationError("one tag per axis required", {"ndim": v.ndim, "tags": list(tags)})
        if len(set(tags)) != len(tags):
            raise ValidationError("duplicate axis tags", {"tags": list(tags)})
        letters = tuple(int(k) for k in self.letters) if self.letters is not None else (1,) * len(tags)
        if len(letters) != len(tags) or min(letters, default=1) < 1:
            raise ValidationError("one positive letter count per axis required", {"letters": list(letters)})
        for tag, size, k in zip(tags, v.shape, letters):
            if size > MAX_ALPHABET**k:
                raise ValidationError(
                    f"axis {tag!r} larger than {MAX_ALPHABET} symbols per letter",
                    {"tag": tag, "size": int(size), "letters": k, "max_alphabet": MAX_ALPHABET},
                )
        if not np.all(np.isfinite(v)) or np.any(v < 0.0):
            raise ValidationError("joint law must be finite and nonnegative")
        total = float(v.sum())
        if abs(total - 1.0) > JOINT_TOL:
            raise ValidationError(f"joint law sums to {total:.12g}", {"sum": total})
        v = v / total
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "tags", tags)
        object.__setattr__(self, "letters", letters)

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(int(n) for n in self.values.shape)

    def axis(self, tag: str) -> int:
        try:
            return self.tags.index(tag)
        except ValueError:
            raise UsageError(f"unknown axis tag {tag!r}", {"tags": list(self.tags)}) from None

    def marginal(self, tags: Sequence[str]) -> np.ndarray:
        """Marginal over `tags`, axes in the given order."""
        keep = [self.axis(t) for t in tags]
        drop = tuple(i for i in range(self.values.ndim) if i not in keep)
        m = self.values.sum(axis=drop) if drop else self.values
        remaining = [i for i in range(self.values.ndim) if i in keep]
        return np.transpose(m, [remaining.index(i) for i in keep])

    def permuted(self, tags: Sequence[str]) -> "JointTensor":
        order = [self.axis(t) for t in tags]
        if sorted(order) != list(range(self.values.ndim)):
            raise UsageError("permutation must name every axis exactly once")
        return JointTensor(np.transpose(self.values, order), tuple(tags), tuple(self.letters[i] for i in order))
