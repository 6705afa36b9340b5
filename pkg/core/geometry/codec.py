"""RegionHull and BoundPentagon serialization (CSV: vertex_index,r1,r2; JSON: ordered vertex array)."""

from __future__ import annotations

import csv
import io
import math
from typing import Any, Dict

from core.geometry.region import DEFAULT_N_DIRS, BoundPentagon, RatePair, RegionHull, support_profile
from core.kernel.manifest_store import atomic_write_text, fmt
from core.kernel.types import ValidationError


def hull_to_csv(h: RegionHull) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["vertex_index", "r1", "r2"])
    for i, v in enumerate(h.vertices):
        writer.writerow([i, fmt(v.r1), fmt(v.r2)])
    return buf.getvalue()


def write_hull_csv(path: str, h: RegionHull) -> int:
    return atomic_write_text(path, hull_to_csv(h))


def hull_to_dict(h: RegionHull, n_dirs: int | None = DEFAULT_N_DIRS) -> Dict[str, Any]:
    out: Dict[str, Any] = {"vertices": [[v.r1, v.r2] for v in h.vertices]}
    if n_dirs:
        out["support"] = [
            {"angle": theta, "w1": w1, "w2": w2, "value": value}
            for theta, w1, w2, value in support_profile(h, n_dirs)
        ]
    return out


def hull_from_dict(obj: Dict[str, Any]) -> RegionHull:
    verts = obj.get("vertices") if isinstance(obj, dict) else None
    if not isinstance(verts, list) or not verts:
        raise ValidationError("region JSON needs a nonempty 'vertices' array")
    return RegionHull(tuple(RatePair(float(r1), float(r2)) for r1, r2 in verts))


def pentagon_to_dict(p: BoundPentagon) -> Dict[str, Any]:
    return {"a": p.a, "b": p.b, "c": None if math.isinf(p.c) else p.c}

