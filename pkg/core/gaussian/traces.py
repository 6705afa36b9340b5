"""Boundary traces for plotting: CSV columns trace, param1, param2, r1, r2.

Rates are in bits (log base 2); the run manifest records the units.

Traces:
  outer / inner           dominant corner (a - b, b) of every sampled pentagon
  outer_hull / inner_hull hull vertices, param1 = vertex index
"""

from __future__ import annotations

import csv
import io
from typing import List, Sequence

from core.gaussian.closed_form import (
    DEFAULT_P2_STEPS,
    DEFAULT_RHO_STEPS,
    GaussianCurve,
    GaussianSpec,
    gaussian_inner,
    gaussian_outer,
)
from core.kernel.manifest_store import atomic_write_text, fmt

COLUMNS = ("trace", "param1", "param2", "r1", "r2")


def _corner_rows(trace: str, curve: GaussianCurve) -> List[Sequence[str]]:
    rows = []
    for s in curve.samples:
        p = s.pentagon()
        params = [fmt(x) for x in s.params] + [""] * (2 - len(s.params))
        rows.append([trace, *params, fmt(p.a - p.b), fmt(p.b)])
    return rows


def _hull_rows(trace: str, curve: GaussianCurve) -> List[Sequence[str]]:
    assert curve.hull is not None
    return [[trace, str(i), "", fmt(v.r1), fmt(v.r2)] for i, v in enumerate(curve.hull.vertices)]


def traces_csv(spec: GaussianSpec, rho_steps: int = DEFAULT_RHO_STEPS, p2_steps: int = DEFAULT_P2_STEPS) -> str:
    outer = gaussian_outer(spec, rho_steps)
    inner = gaussian_inner(spec, rho_steps, p2_steps)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for rows in (
        _corner_rows("outer", outer),
        _corner_rows("inner", inner),
        _hull_rows("outer_hull", outer),
        _hull_rows("inner_hull", inner),
    ):
        writer.writerows(rows)
    return buf.getvalue()


def write_gaussian_traces(spec: GaussianSpec, path: str, rho_steps: int = DEFAULT_RHO_STEPS, p2_steps: int = DEFAULT_P2_STEPS) -> int:
    """Write the inner/outer boundary traces to `path`; returns the number of data rows."""
    text = traces_csv(spec, rho_steps, p2_steps)
    atomic_write_text(path, text)
    return text.count("\n") - 1
