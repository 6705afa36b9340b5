"""
Command-line gateway (enterprise-grade): the single public entry point.

Contract:
- `acmac <command> ...`; hyphenated and underscored command names are equivalent
- exit codes: 0 ok, 2 input/usage error, 3 size cap exceeded, 4 internal error
- stdout carries the command's summary only (one JSON object, 9 significant digits);
  diagnostics go to stderr and logging
- --log-json emits one JSON object per log record (extra fields merged in)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from core.bounds.search import SearchConfig
from core.channels.channel_file import load_channel_file
from core.gaussian.closed_form import DEFAULT_P2_STEPS, DEFAULT_RHO_STEPS
from core.kernel.manifest_store import clean, read_json
from core.kernel.runner import CommandRunner
from core.kernel.settings import load_settings
from core.kernel.types import EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, AcmacError, ValidationError
from core.sim.experiment import SimConfig


_log = logging.getLogger(__name__)

_RECORD_FIELDS = set(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}

SEARCH_FLAGS = ("seed", "restarts", "ascent_steps", "step_size", "n_dirs", "random_samples", "budget")
SIM_FLAGS = ("n", "r1", "r2", "eps", "trials", "seed", "model", "r1_direct", "exhaustive_limit")


class JsonLineFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        obj: Dict[str, Any] = {
            "ts": datetime.fromtimestamp(record.created, timezone.utc).isoformat(timespec="milliseconds"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        for key, value in record.__dict__.items():
            if key not in _RECORD_FIELDS and not key.startswith("_"):
                obj[key] = value
        if record.exc_info:
            obj["exc"] = self.formatException(record.exc_info)
        return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), default=str)


def configure_logging(level: str, as_json: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(JsonLineFormatter() if as_json else logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    root = logging.getLogger()
    for h in list(root.handlers):
        root.removeHandler(h)
    root.addHandler(handler)
    root.setLevel(level)


def _channel_doc(path: str) -> Dict[str, Any]:
    return load_channel_file(path).model_dump(exclude_none=True)


def _overrides(args: argparse.Namespace, names: tuple) -> Dict[str, Any]:
    return {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}


def _search_config(args: argparse.Namespace) -> Dict[str, Any]:
    base = read_json(args.config) if args.config else {}
    cfg = SearchConfig.from_mapping({**base, **_overrides(args, SEARCH_FLAGS)})
    return cfg.model_dump()


def _sim_config(args: argparse.Namespace) -> Dict[str, Any]:
    base = read_json(args.config) if args.config else {}
    merged = {**base, **_overrides(args, SIM_FLAGS)}
    if args.delay is not None:
        merged["delay_policy"] = "uniform" if args.delay == "uniform" else _int(args.delay, "--delay")
    return SimConfig.from_mapping(merged).model_dump()


def _int(text: str, flag: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"{flag} expects an integer or 'uniform'", {"value": text}) from None


def _params(path: Optional[str]) -> Optional[Dict[str, Any]]:
    return read_json(path) if path else None


def build_config(args: argparse.Namespace) -> Dict[str, Any]:
    command = args.command.replace("-", "_")
    if command == "validate":
        return {"channel": read_json(args.path)}
    if command in ("inner", "outer", "accmac_inner", "accmac_outer"):
        return {"channel": _channel_doc(args.path), "search": _search_config(args)}
    if command == "gaussian":
        base = read_json(args.config) if args.config else {}
        return {
            "p1": args.p1,
            "p2": args.p2,
            "n0": args.n0,
            "rho_steps": args.rho_steps if args.rho_steps is not None else base.get("rho_steps", DEFAULT_RHO_STEPS),
            "p2_steps": args.p2_steps if args.p2_steps is not None else base.get("p2_steps", DEFAULT_P2_STEPS),
        }
    if command == "multiletter":
        cfg: Dict[str, Any] = {"channel": _channel_doc(args.path), "n": args.n}
        if not args.iid_uniform and args.params:
            cfg["params"] = _params(args.params)
        return cfg
    if command == "simulate":
        cfg = {"channel": _channel_doc(args.path), "sim": _sim_config(args)}
        if args.params:
            cfg["params"] = _params(args.params)
        return cfg
    raise ValidationError(f"unknown command {args.command!r}")


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", help="channel JSON file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--config", help="search config JSON (flags override it)")
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--ascent-steps", dest="ascent_steps", type=int)
    p.add_argument("--step-size", dest="step_size", type=float)
    p.add_argument("--n-dirs", dest="n_dirs", type=int)
    p.add_argument("--random-samples", dest="random_samples", type=int)
    p.add_argument("--budget", type=int, help="points the search may add beyond its mandatory seeds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acmac", description="Capacity-region bounds and coding simulations for the asynchronous cognitive MAC")
    parser.add_argument("--threads", type=int, help="worker threads (env ACMAC_THREADS); never changes results")
    parser.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING, ERROR (env ACMAC_LOG_LEVEL)")
    parser.add_argument("--log-json", dest="log_json", action="store_true", help="JSON-lines log records on stderr")
    parser.add_argument("--progress", action="store_true", default=None, help="progress bars on stderr (env ACMAC_PROGRESS)")
    parser.add_argument("--settings", help="settings JSON file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a channel file")
    p.add_argument("path")

    for name in ("inner", "outer", "accmac-inner", "accmac-outer"):
        p = sub.add_parser(name, aliases=[name.replace("-", "_")] if "-" in name else [], help=f"{name} bound region")
        _add_search_flags(p)

    p = sub.add_parser("gaussian", help="Gaussian outer/inner traces")
    p.add_argument("p1", type=float)
    p.add_argument("p2", type=float)
    p.add_argument("n0", type=float)
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="gaussian config JSON (rho_steps, p2_steps)")
    p.add_argument("--rho-steps", dest="rho_steps", type=int)
    p.add_argument("--p2-steps", dest="p2_steps", type=int)

    p = sub.add_parser("multiletter", help="n-letter pentagons of an i.i.d. law")
    p.add_argument("path")
    p.add_argument("--n", type=int, required=True)
    law = p.add_mutually_exclusive_group()
    law.add_argument("--iid-uniform", dest="iid_uniform", action="store_true", help="uniform p_x1 and p_x2 (default)")
    law.add_argument("--params", help="inner params JSON (p_x1, p_x2_given_v)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("simulate", help="Monte-Carlo coding experiment")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="simulation config JSON (flags override it)")
    p.add_argument("--n", type=int)
    p.add_argument("--r1", type=float)
    p.add_argument("--r2", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--delay", help="'uniform' or a fixed delay")
    p.add_argument("--model", choices=["acmac", "accmac"])
    p.add_argument("--r1-direct", dest="r1_direct", type=float)
    p.add_argument("--exhaustive-limit", dest="exhaustive_limit", type=int)
    p.add_argument("--params", help="inner params JSON (default: uniform laws)")

    p = sub.add_parser("replay", help="re-run a command from its manifest")
    p.add_argument("manifest")
    p.add_argument("--out")

    p = sub.add_parser("export-channel", aliases=["export_channel"], help="write a bundled channel file")
    p.add_argument("name", choices=["mod", "binary-additive"])
    p.add_argument("--p", type=float, help="crossover of binary-additive")
    p.add_argument("--out", required=True)
    return parser


def _emit(res: Dict[str, Any]) -> int:
    if res.get("ok"):
        print(json.dumps(clean(res.get("summary") or {}), sort_keys=True))
        return EXIT_OK
    details = res.get("details") or {}
    message = details.get("message") or res.get("error")
    print(f"acmac {res.get('command')}: {res.get('error')}: {message}", file=sys.stderr)
    return int(res.get("exit_code", EXIT_INTERNAL))


def _emit_validate(res: Dict[str, Any]) -> int:
    if not res.get("ok"):
        return _emit(res)
    s = res["summary"]
    print(f"{s['x1_symbols']} x {s['x2_symbols']} input symbols, {s['y_symbols']} output symbols, D={s['D']}, {s['status']}")
    print(f"delays: {s['delays']}; max row deviation {s['max_row_deviation']:.3g}; renormalized rows {s['renormalized_rows']}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT

    try:
        settings = load_settings(threads=args.threads, log_level=args.log_level, progress=args.progress, settings_path=args.settings)
    except AcmacError as exc:
        print(f"acmac: {exc.code}: {exc.message}", file=sys.stderr)
        return exc.exit_code
    configure_logging(settings.log_level, args.log_json)

    runner = CommandRunner(settings)
    command = args.command.replace("-", "_")
    try:
        if command == "replay":
            return _emit(runner.replay(args.manifest, args.out))
        if command == "export_channel":
            return _emit(runner.export_channel(args.name, args.out, args.p))
        config = build_config(args)
    except AcmacError as exc:
        return _emit({"ok": False, "command": command, "error": exc.code, "details": exc.to_dict(), "exit_code": exc.exit_code})

    res = runner.run(command, config, getattr(args, "out", None))
    if command == "validate":
        return _emit_validate(res)
    return _emit(res)


if __name__ == "__main__":
    sys.exit(main())
