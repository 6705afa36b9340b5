from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from core.kernel.types import ValidationError


SCHEMA_VERSION = 1
TOOL_NAME = "acmac-bounds"
TOOL_VERSION = "1.0.0"
RATE_UNITS = {"log_base": 2, "rate": "bits per channel use"}
SIG_DIGITS = 9
MANIFEST_NAME = "manifest.json"


def fmt(x: float) -> str:
    """Float text with 9 significant digits ('inf' for unbounded caps)."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.{SIG_DIGITS}g}"


def clean(obj: Any, digits: Optional[int] = SIG_DIGITS) -> Any:
    """JSON-ready copy: floats rounded to `digits` significant digits (None keeps them exact), numpy scalars unwrapped."""
    if isinstance(obj, dict):
        return {str(k): clean(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return clean(obj.tolist(), digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x) or math.isnan(x):
            return fmt(x) if not math.isnan(x) else "nan"
        if digits is None:
            return x
        return float(f"{x:.{digits}g}") + 0.0
    return obj


def _ensure_dir(path: str) -> None:
    os.makedirs(path, exist_ok=True)


def atomic_write_bytes(path: str, data: bytes) -> int:
    # Deterministic, crash-safe: write temp, flush, replace
    dirpath = os.path.dirname(os.path.abspath(path))
    _ensure_dir(dirpath)

    tmp = path + ".tmp"
    with open(tmp, "wb") as f:
        f.write(data)
        f.flush()
        os.fsync(f.fileno())

    os.replace(tmp, path)
    return len(data)


def dumps(obj: Any, digits: Optional[int] = SIG_DIGITS) -> bytes:
    return (json.dumps(clean(obj, digits), ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode("utf-8")


def atomic_write_json(path: str, obj: Any) -> int:
    return atomic_write_bytes(path, dumps(obj))


def atomic_write_text(path: str, text: str) -> int:
    return atomic_write_bytes(path, text.encode("utf-8"))


def read_json(path: str) -> Any:
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", {"path": path}) from exc
    try:
        return json.loads(raw.decode("utf-8", errors="replace"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})", {"path": path}) from exc


def _validate_manifest(obj: Dict[str, Any]) -> None:
    if not isinstance(obj, dict):
        raise ValidationError("manifest must be an object")

    if obj.get("schema_version") != SCHEMA_VERSION:
        raise ValidationError("unsupported manifest schema_version", {"schema_version": obj.get("schema_version")})

    for key in ("tool", "version", "command", "config", "outputs"):
        if key not in obj:
            raise ValidationError(f"manifest missing key: {key}")

    if not isinstance(obj["command"], str) or not obj["command"]:
        raise ValidationError("manifest command must be non-empty string")

    if not isinstance(obj["config"], dict):
        raise ValidationError("manifest config must be object")

    if not isinstance(obj["outputs"], list):
        raise ValidationError("manifest outputs must be list")


@dataclass(frozen=True)
class SaveResult:
    ok: bool
    path: str
    bytes: int


class ManifestStore:
    """
    Deterministic run manifests: everything needed to re-run a command.
    No timestamps and sorted keys. The config block keeps exact floats (it is
    the run input), everything else is written with 9 significant digits, so a
    replay reproduces the manifest byte for byte.
    """

    def __init__(self, out_dir: str) -> None:
        self.out_dir = out_dir

    def path(self) -> str:
        return os.path.join(self.out_dir, MANIFEST_NAME)

    def wrap(self, command: str, config: Dict[str, Any], outputs: List[str], extra: Dict[str, Any] | None = None) -> Dict[str, Any]:
        manifest: Dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "command": command,
            "config": config,
            "outputs": sorted(outputs),
            "units": dict(RATE_UNITS),
        }
        if extra:
            manifest.update(extra)
        _validate_manifest(manifest)
        return manifest

    def save(self, manifest: Dict[str, Any]) -> SaveResult:
        _validate_manifest(manifest)
        path = self.path()
        body = clean({k: v for k, v in manifest.items() if k != "config"})
        body["config"] = clean(manifest["config"], digits=None)
        n = atomic_write_bytes(path, dumps(body, digits=None))
        return SaveResult(ok=True, path=os.path.abspath(path), bytes=n)

    @staticmethod
    def load(path: str) -> Dict[str, Any]:
        if os.path.isdir(path):
            path = os.path.join(path, MANIFEST_NAME)
        obj = read_json(path)
        _validate_manifest(obj)
        return obj
