"""Acceptance gate for acmac-bounds: known regions, error paths and replay.

Run:
  python ops/acceptance_gate.py

Exit codes:
  0 = GREEN
  2 = RED (a check failed)
"""

from __future__ import annotations

import json
import os
import sys
import tempfile


ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

CHANNELS = os.path.join(ROOT, "data", "channels")
SEARCH = {"seed": 0, "restarts": 1, "ascent_steps": 5, "random_samples": 4, "n_dirs": 61}


def fail(msg: str) -> None:
    print("ACCEPTANCE_GATE: RED")
    print(msg)
    sys.exit(2)


def ok(msg: str) -> None:
    print("ACCEPTANCE_GATE: GREEN")
    print(msg)
    sys.exit(0)


def assert_true(cond: bool, msg: str) -> None:
    if not cond:
        fail(msg)


def close(x: float, y: float, tol: float) -> bool:
    return abs(float(x) - float(y)) <= tol


def main() -> None:
    try:
        from core.channels.channel_file import load_channel_file
        from core.channels.examples import build_mod_channel
        from core.gaussian.closed_form import RHO_MAX, GaussianSpec, outer_caps
        from core.geometry.codec import hull_from_dict
        from core.geometry.region import direction_grid, support_hull
        from core.info.functionals import binary_entropy
        from core.kernel.runner import CommandRunner
    except Exception as e:
        fail(f"import failed: {type(e).__name__}: {e}")

    runner = CommandRunner()

    def matches_known(run_dir: str, known) -> bool:
        with open(os.path.join(run_dir, "region.json"), "r", encoding="utf-8") as f:
            hull = hull_from_dict(json.load(f)["hull"])
        return all(close(support_hull(hull, w1, w2), support_hull(known.hull, w1, w2), 1e-6) for _, w1, w2 in direction_grid(61))

    def channel(name: str) -> dict:
        return load_channel_file(os.path.join(CHANNELS, name)).model_dump(exclude_none=True)

    with tempfile.TemporaryDirectory() as tmp:
        res = runner.run("inner", {"channel": channel("mod.json"), "search": SEARCH}, os.path.join(tmp, "inner"))
        assert_true(res.get("ok") is True, f"inner on mod failed: {res.get('details')}")
        assert_true(close(res["summary"]["max_sum_rate"], 2.0, 1e-9), f"mod inner sum rate {res['summary']['max_sum_rate']} != 2")
        mod = build_mod_channel()
        assert_true(
            matches_known(os.path.join(tmp, "inner"), mod.known_regions["cmac"]),
            f"mod inner region differs from {mod.known_regions['cmac'].citation}",
        )

        res = runner.run("accmac_inner", {"channel": channel("mod.json"), "search": SEARCH}, os.path.join(tmp, "acc"))
        assert_true(res.get("ok") is True, f"accmac_inner on mod failed: {res.get('details')}")
        assert_true(close(res["summary"]["max_r1"], 1.0, 1e-9), f"mod ACC-MAC R1 cap {res['summary']['max_r1']} != 1")
        assert_true(
            matches_known(os.path.join(tmp, "acc"), mod.known_regions["cc-mac"]),
            f"mod ACC-MAC inner region differs from {mod.known_regions['cc-mac'].citation}",
        )

        res = runner.run("inner", {"channel": channel("binary_additive_p0.11.json"), "search": SEARCH}, os.path.join(tmp, "bsc"))
        assert_true(res.get("ok") is True, f"inner on binary additive failed: {res.get('details')}")
        cap = 1.0 - binary_entropy(0.11)
        best = res["summary"]["max_sum_rate"]
        assert_true(cap - 1e-3 <= best <= cap + 1e-6, f"binary additive sum rate {best} vs 1-H2(p) = {cap}")

        spec = GaussianSpec.build(0.5, 1.0, 1.0)
        s0, r20 = outer_caps(spec, 0.0)
        s1, r21 = outer_caps(spec, RHO_MAX)
        assert_true(close(s0, 0.660964, 1e-6) and close(r20, 0.5, 1e-9), f"gaussian outer at rho=0: ({s0}, {r20})")
        assert_true(close(s1, 0.903677, 1e-6) and close(r21, 0.0, 1e-9), f"gaussian outer at rho max: ({s1}, {r21})")

        bad = channel("binary_additive.json")
        bad["transition"][0][1] = [0.0, 0.98]
        res = runner.run("validate", {"channel": bad})
        assert_true(res.get("ok") is False and res.get("exit_code") == 2, "a 0.98 row was not rejected with exit code 2")

        first = os.path.join(tmp, "inner", "manifest.json")
        res = runner.replay(first, os.path.join(tmp, "replay"))
        assert_true(res.get("ok") is True, f"replay failed: {res.get('details')}")
        for name in ("region.csv", "region.json", "manifest.json"):
            with open(os.path.join(tmp, "inner", name), "rb") as a, open(os.path.join(tmp, "replay", name), "rb") as b:
                assert_true(a.read() == b.read(), f"replay changed {name}")

    ok(f"known_regions(mod)=match sum_rate(mod)=2 accmac_r1(mod)=1 sum_rate(bsc 0.11)={best:.6f} replay=identical")


if __name__ == "__main__":
    main()
