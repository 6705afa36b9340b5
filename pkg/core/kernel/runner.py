"""
Command runner (enterprise-grade): config dict -> files in an output directory + manifest.

Contract:
- every command is described by (command, config); config is JSON-canonicalized (exact floats,
  numpy unwrapped) BEFORE the run, so re-running a saved manifest reproduces every output
  file byte for byte
- run() never raises: it returns {ok, command, error, details, outputs, summary}, with error one
  of the codes in core.kernel.types (anything unexpected becomes INTERNAL)
- worker count and progress bars come from Settings and never enter the manifest
"""

from __future__ import annotations

import json
import logging
import os
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from core.bounds.params import InnerParams
from core.bounds.search import SearchConfig, SearchTrace, search_inner, search_outer
from core.channels.channel_file import ChannelFile
from core.channels.examples import BUNDLED
from core.gaussian.closed_form import GaussianSpec
from core.gaussian.traces import write_gaussian_traces
from core.geometry.codec import hull_to_dict, pentagon_to_dict, write_hull_csv
from core.geometry.region import support_hull
from core.info.pmf import DelaySet, DiscreteChannel
from core.kernel.manifest_store import RATE_UNITS, ManifestStore, atomic_write_json, clean, dumps
from core.kernel.settings import Settings
from core.kernel.types import ERROR_INTERNAL, AcmacError, UsageError, ValidationError
from core.multiletter.nletter import (
    NLetterLaw,
    accmac_multiletter_point,
    edge_gap_bound,
    q_n_point,
    r_n_point,
)
from core.sim.experiment import SimConfig, run_experiment


_log = logging.getLogger(__name__)

REGION_CSV = "region.csv"
REGION_JSON = "region.json"
GAUSSIAN_CSV = "gaussian.csv"
MULTILETTER_JSON = "multiletter.json"

REGION_COMMANDS = {
    "inner": (False, False),
    "outer": (True, False),
    "accmac_inner": (False, True),
    "accmac_outer": (True, True),
}

Outputs = Tuple[List[str], Dict[str, Any]]


def canonical(obj: Any) -> Any:
    """The value a manifest round trip yields."""
    return json.loads(dumps(obj, digits=None).decode("utf-8"))


def command_name(name: str) -> str:
    return name.strip().replace("-", "_")


def _channel(config: Dict[str, Any]) -> Tuple[ChannelFile, DiscreteChannel, DelaySet]:
    if "channel" not in config:
        raise ValidationError("config is missing the channel document")
    cf = ChannelFile.from_mapping(config["channel"])
    ch, ds = cf.to_channel()
    return cf, ch, ds


def _inner_params(config: Dict[str, Any], ch: DiscreteChannel, ds: DelaySet) -> InnerParams:
    raw = config.get("params")
    if raw is None:
        return InnerParams.uniform(ch, ds)
    return InnerParams.from_dict(raw).check(ch, ds)


class CommandRunner:
    def __init__(self, settings: Optional[Settings] = None) -> None:
        self.settings = settings or Settings()
        self._handlers: Dict[str, Callable[[Dict[str, Any], str], Outputs]] = {
            "validate": self._validate,
            "gaussian": self._gaussian,
            "multiletter": self._multiletter,
            "simulate": self._simulate,
        }
        for name in REGION_COMMANDS:
            self._handlers[name] = self._region_handler(name)

    def commands(self) -> List[str]:
        return sorted(self._handlers)

    def run(self, command: str, config: Dict[str, Any], out_dir: Optional[str] = None) -> Dict[str, Any]:
        command = command_name(command)
        out: Dict[str, Any] = {
            "ok": False,
            "command": command,
            "error": None,
            "details": None,
            "outputs": [],
            "summary": {},
        }
        t0 = time.perf_counter()
        try:
            handler = self._handlers.get(command)
            if handler is None:
                raise UsageError(f"unknown command {command!r}", {"commands": self.commands()})
            config = canonical(config)
            if command != "validate" and not out_dir:
                raise UsageError("an output directory is required", {"command": command})
            outputs, summary = handler(config, out_dir or "")
            if command != "validate":
                store = ManifestStore(out_dir)
                store.save(store.wrap(command, config, outputs))
                outputs = sorted(outputs) + [os.path.basename(store.path())]
            out.update(ok=True, outputs=outputs, summary=clean(summary))
        except AcmacError as exc:
            out.update(error=exc.code, details=exc.to_dict(), exit_code=exc.exit_code)
        except Exception as exc:  # noqa: BLE001
            _log.exception("command failed", extra={"command": command})
            out.update(error=ERROR_INTERNAL, details={"type": type(exc).__name__, "message": str(exc)})
        out["elapsed_ms"] = int((time.perf_counter() - t0) * 1000)
        _log.info("command done", extra={"command": command, "ok": out["ok"], "error": out["error"], "elapsed_ms": out["elapsed_ms"]})
        return out

    def replay(self, manifest_path: str, out_dir: Optional[str] = None) -> Dict[str, Any]:
        try:
            manifest = ManifestStore.load(manifest_path)
        except AcmacError as exc:
            return {
                "ok": False,
                "command": "replay",
                "error": exc.code,
                "details": exc.to_dict(),
                "exit_code": exc.exit_code,
                "outputs": [],
                "summary": {},
            }
        if out_dir is None:
            out_dir = manifest_path if os.path.isdir(manifest_path) else os.path.dirname(os.path.abspath(manifest_path))
        return self.run(manifest["command"], manifest["config"], out_dir)

    @staticmethod
    def export_channel(name: str, out_path: str, p: Optional[float] = None) -> Dict[str, Any]:
        out: Dict[str, Any] = {"ok": False, "command": "export_channel", "error": None, "details": None, "outputs": [], "summary": {}}
        try:
            key = name.strip().replace("_", "-")
            builder = BUNDLED.get(key)
            if builder is None:
                raise UsageError(f"unknown bundled channel {name!r}", {"channels": sorted(BUNDLED)})
            if key == "binary-additive":
                named = builder(0.0 if p is None else float(p))
            elif p is not None:
                raise UsageError("--p applies to binary-additive only")
            else:
                named = builder()
            n = ChannelFile.from_named(named).save(out_path)
            out.update(ok=True, outputs=[out_path], summary={"id": named.id, "bytes": n})
        except AcmacError as exc:
            out.update(error=exc.code, details=exc.to_dict(), exit_code=exc.exit_code)
        return out

    def _validate(self, config: Dict[str, Any], out_dir: str) -> Outputs:
        cf, _, _ = _channel(config)
        return [], cf.diagnostics()

    def _region_handler(self, name: str) -> Callable[[Dict[str, Any], str], Outputs]:
        is_outer, codeword = REGION_COMMANDS[name]

        def handler(config: Dict[str, Any], out_dir: str) -> Outputs:
            _, ch, ds = _channel(config)
            search = SearchConfig.from_mapping(config.get("search") or {})
            kw = {"codeword": codeword, "workers": self.settings.threads, "progress": self.settings.progress}
            trace = search_outer(ch, ds, search, **kw) if is_outer else search_inner(ch, ds, search, **kw)
            return self._write_region(trace, search, out_dir)

        return handler

    def _write_region(self, trace: SearchTrace, search: SearchConfig, out_dir: str) -> Outputs:
        hull = trace.hull()
        doc = {
            "model": trace.model,
            "hull": hull_to_dict(hull, search.n_dirs),
            "evaluated": [dict(e.result.to_dict(), origin=e.origin) for e in trace.entries],
        }
        write_hull_csv(os.path.join(out_dir, REGION_CSV), hull)
        atomic_write_json(os.path.join(out_dir, REGION_JSON), doc)
        summary = {
            "model": trace.model,
            "vertices": len(hull.vertices),
            "evaluated": len(trace.entries),
            "max_sum_rate": support_hull(hull, 1.0, 1.0),
            "max_r1": max(v.r1 for v in hull.vertices),
            "max_r2": max(v.r2 for v in hull.vertices),
        }
        return [REGION_CSV, REGION_JSON], summary

    def _gaussian(self, config: Dict[str, Any], out_dir: str) -> Outputs:
        try:
            spec = GaussianSpec.build(float(config["p1"]), float(config["p2"]), float(config["n0"]))
            rho_steps = int(config["rho_steps"])
            p2_steps = int(config["p2_steps"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"invalid gaussian config: {exc}") from exc
        rows = write_gaussian_traces(spec, os.path.join(out_dir, GAUSSIAN_CSV), rho_steps, p2_steps)
        summary = {"rows": rows, "p1": spec.p1, "p2": spec.p2, "n0": spec.n0, **RATE_UNITS}
        return [GAUSSIAN_CSV], summary

    def _multiletter(self, config: Dict[str, Any], out_dir: str) -> Outputs:
        _, ch, ds = _channel(config)
        try:
            n = int(config["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError("multiletter config needs an integer n") from exc
        params = _inner_params(config, ch, ds)
        law = NLetterLaw.from_iid_inner(params, ch, ds, n)
        r_n = r_n_point(ch, ds, law)
        q_n = q_n_point(ch, ds, law)
        acc = accmac_multiletter_point(ch, ds, law)
        gap = {"a": abs(r_n.a - q_n.a), "b": abs(r_n.b - q_n.b)}
        bound = edge_gap_bound(ch, ds, n)
        doc = {
            "n": n,
            "params": params.to_dict(),
            "r_n": pentagon_to_dict(r_n),
            "q_n": pentagon_to_dict(q_n),
            "accmac_q_n": pentagon_to_dict(acc),
            "gap": gap,
            "gap_bound": bound,
        }
        atomic_write_json(os.path.join(out_dir, MULTILETTER_JSON), doc)
        return [MULTILETTER_JSON], {"n": n, "gap": gap, "gap_bound": bound, "within_bound": max(gap.values()) <= bound + 1e-9}

    def _simulate(self, config: Dict[str, Any], out_dir: str) -> Outputs:
        _, ch, ds = _channel(config)
        cfg = SimConfig.from_mapping(config.get("sim") or {})
        params = _inner_params(config, ch, ds)
        report = run_experiment(ch, ds, cfg, params, workers=self.settings.threads, progress=self.settings.progress)
        files = report.write(out_dir)
        summary = {
            "trials": report.trials,
            "errors": report.errors,
            "error_rate": report.error_rate,
            "ci_half_width": report.ci_half_width,
            "r1_direct": report.r1_direct,
        }
        return files, summary
