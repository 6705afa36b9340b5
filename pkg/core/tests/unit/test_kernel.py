'''Unit tests for the manifest store, settings, error types and the command runner'''

import os
import tempfile
import unittest
from unittest import mock

from core.channels.channel_file import ChannelFile
from core.channels.examples import build_binary_additive
from core.kernel.manifest_store import ManifestStore, clean, dumps, fmt, read_json
from core.kernel.runner import CommandRunner, canonical, command_name
from core.kernel.settings import ENV_LOG_LEVEL, ENV_THREADS, load_settings
from core.kernel.types import EXIT_INPUT, EXIT_SIZE_CAP, CapacityError, UsageError, ValidationError


class TestManifestStore(unittest.TestCase):
    def test_clean(self):
        self.assertEqual(clean({"x": 0.1234567891234, "c": float("inf")}), {"x": 0.123456789, "c": "inf"})
        self.assertEqual(clean([0.1234567891234], digits=None), [0.1234567891234])
        self.assertEqual(fmt(2.0), "2")

    def test_dumps_sorted(self):
        self.assertEqual(dumps({"b": 1, "a": 2}), b'{\n  "a": 2,\n  "b": 1\n}\n')

    def test_save_keeps_config_exact(self):
        with tempfile.TemporaryDirectory() as tmp:
            store = ManifestStore(tmp)
            res = store.save(store.wrap("gaussian", {"p1": 0.1234567891234}, ["gaussian.csv"], {"note": 0.1234567891234}))
            self.assertTrue(res.ok)
            obj = ManifestStore.load(tmp)
        self.assertEqual(obj["config"]["p1"], 0.1234567891234)
        self.assertEqual(obj["note"], 0.123456789)
        self.assertEqual(obj["outputs"], ["gaussian.csv"])
        self.assertEqual(obj["units"], {"log_base": 2, "rate": "bits per channel use"})

    def test_load_rejects_bad_manifest(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "manifest.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write('{"schema_version": 1}')
            with self.assertRaises(ValidationError):
                ManifestStore.load(path)
            with self.assertRaises(ValidationError):
                read_json(os.path.join(tmp, "missing.json"))


class TestSettings(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dotenv = os.path.join(self.tmp.name, "none.env")

    def tearDown(self):
        self.tmp.cleanup()

    def test_defaults(self):
        with mock.patch.dict(os.environ, {}, clear=True):
            s = load_settings(dotenv_path=self.dotenv)
        self.assertEqual((s.threads, s.log_level, s.progress), (1, "WARNING", False))

    def test_shipped_file_matches_defaults(self):
        path = os.path.join(os.path.dirname(__file__), "..", "..", "..", "config", "settings.json")
        with mock.patch.dict(os.environ, {}, clear=True):
            self.assertEqual(load_settings(settings_path=path, dotenv_path=self.dotenv), load_settings(dotenv_path=self.dotenv))

    def test_precedence(self):
        """Argument beats environment, which beats the settings file."""
        path = os.path.join(self.tmp.name, "settings.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write('{"threads": 2, "log_level": "error"}')
        with mock.patch.dict(os.environ, {ENV_THREADS: "6"}, clear=True):
            s = load_settings(settings_path=path, dotenv_path=self.dotenv)
            self.assertEqual((s.threads, s.log_level), (6, "ERROR"))
            s = load_settings(threads=3, settings_path=path, dotenv_path=self.dotenv)
            self.assertEqual(s.threads, 3)

    def test_bad_level(self):
        with mock.patch.dict(os.environ, {ENV_LOG_LEVEL: "chatty"}, clear=True):
            with self.assertRaises(ValidationError):
                load_settings(dotenv_path=self.dotenv)


class TestErrors(unittest.TestCase):
    def test_codes(self):
        err = CapacityError("too big", size=10, cap=5, details={"D": 4})
        self.assertEqual(err.exit_code, EXIT_SIZE_CAP)
        self.assertEqual(err.to_dict(), {"code": "SIZE_CAP", "message": "too big", "details": {"size": 10, "cap": 5, "D": 4}})
        self.assertEqual(UsageError("x").exit_code, EXIT_INPUT)
        self.assertEqual(ValidationError("x").code, "INVALID_INPUT")


class TestCommandRunner(unittest.TestCase):
    def setUp(self):
        self.runner = CommandRunner()
        self.channel = ChannelFile.from_named(build_binary_additive(0.11)).model_dump(exclude_none=True)

    def test_names(self):
        self.assertEqual(command_name("accmac-inner"), "accmac_inner")
        self.assertIn("simulate", self.runner.commands())
        self.assertEqual(canonical({"a": (1, 2.5)}), {"a": [1, 2.5]})

    def test_unknown_command(self):
        res = self.runner.run("plot", {})
        self.assertFalse(res["ok"])
        self.assertEqual(res["error"], "USAGE")
        self.assertEqual(res["exit_code"], EXIT_INPUT)

    def test_validate(self):
        res = self.runner.run("validate", {"channel": self.channel})
        self.assertTrue(res["ok"])
        self.assertEqual(res["summary"]["D"], 2)
        self.assertEqual(res["outputs"], [])

    def test_needs_out_dir(self):
        res = self.runner.run("gaussian", {"p1": 0.5, "p2": 1.0, "n0": 1.0, "rho_steps": 3, "p2_steps": 2})
        self.assertEqual(res["error"], "USAGE")

    def test_gaussian_records_units(self):
        """Gaussian summaries and manifests name the log base of the rates."""
        config = {"p1": 0.5, "p2": 1.0, "n0": 1.0, "rho_steps": 3, "p2_steps": 2}
        with tempfile.TemporaryDirectory() as tmp:
            res = self.runner.run("gaussian", config, tmp)
            self.assertTrue(res["ok"], res)
            manifest = ManifestStore.load(tmp)
        self.assertEqual(res["summary"]["log_base"], 2)
        self.assertEqual(res["summary"]["rate"], "bits per channel use")
        self.assertEqual(manifest["units"]["log_base"], 2)

    def test_replay_is_byte_identical(self):
        config = {
            "channel": self.channel,
            "search": {"seed": 1, "restarts": 1, "ascent_steps": 2, "random_samples": 2, "n_dirs": 31},
        }
        with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
            first = self.runner.run("inner", config, a)
            self.assertTrue(first["ok"], first)
            self.assertEqual(first["outputs"], ["region.csv", "region.json", "manifest.json"])
            second = self.runner.replay(os.path.join(a, "manifest.json"), b)
            self.assertTrue(second["ok"], second)
            for name in first["outputs"]:
                with open(os.path.join(a, name), "rb") as fa, open(os.path.join(b, name), "rb") as fb:
                    self.assertEqual(fa.read(), fb.read(), name)

    def test_export_channel(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "mod.json")
            res = CommandRunner.export_channel("mod", path)
            self.assertTrue(res["ok"])
            self.assertEqual(res["summary"]["id"], "mod")
            bad = CommandRunner.export_channel("mod", path, p=0.1)
            self.assertEqual(bad["error"], "USAGE")


if __name__ == "__main__":
    unittest.main()
