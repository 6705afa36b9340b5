'''Unit tests for the Gaussian closed-form bounds'''

import os
import tempfile
import unittest

import numpy as np

from core.gaussian.closed_form import (
    RHO_MAX,
    GaussianSpec,
    covariance_inner,
    gaussian_inner,
    gaussian_inner_point,
    gaussian_outer,
    inner_caps,
    is_psd,
    outer_caps,
)
from core.gaussian.traces import COLUMNS, traces_csv, write_gaussian_traces
from core.geometry.region import contains
from core.kernel.types import UsageError, ValidationError


class TestGaussianCaps(unittest.TestCase):
    def setUp(self):
        self.spec = GaussianSpec.build(0.5, 1.0, 1.0)

    def test_outer_endpoints(self):
        s, r2 = outer_caps(self.spec, 0.0)
        self.assertAlmostEqual(s, 0.660964, delta=1e-6)
        self.assertAlmostEqual(r2, 0.5, delta=1e-12)
        s, r2 = outer_caps(self.spec, RHO_MAX)
        self.assertAlmostEqual(s, 0.903677, delta=1e-6)
        self.assertAlmostEqual(r2, 0.0, delta=1e-12)

    def test_inner_r2(self):
        _, r2 = inner_caps(self.spec, 0.5, 1.0)
        self.assertAlmostEqual(r2, 0.29248, delta=1e-5)

    def test_inner_point_matches_symmetric_caps(self):
        """Equal correlations with both window symbols reproduce the inner caps."""
        for rho in (0.0, 0.3, 0.5, RHO_MAX):
            for p2t in (0.0, 0.4, 1.0):
                s, r2 = inner_caps(self.spec, rho, p2t)
                p = gaussian_inner_point(self.spec, self.spec.p1, p2t, rho, rho)
                self.assertAlmostEqual(p.a, s, delta=1e-12)
                self.assertAlmostEqual(p.b, min(r2, s), delta=1e-12)

    def test_inner_point_limits(self):
        with self.assertRaises(ValidationError):
            gaussian_inner_point(self.spec, 0.6, 1.0, 0.0, 0.0)
        with self.assertRaises(ValidationError):
            gaussian_inner_point(self.spec, 0.5, 1.0, 0.8, 0.8)

    def test_covariance_psd(self):
        self.assertTrue(is_psd(covariance_inner(0.5, 1.0, 0.6, 0.8)))
        self.assertTrue(is_psd(covariance_inner(0.5, 1.0, RHO_MAX, RHO_MAX)))
        self.assertFalse(is_psd(covariance_inner(0.5, 1.0, 0.8, 0.8)))

    def test_bad_spec(self):
        with self.assertRaises(ValidationError):
            GaussianSpec.build(0.5, 1.0, 0.0)
        with self.assertRaises(ValidationError):
            GaussianSpec.build(-1.0, 1.0, 1.0)


class TestGaussianCurves(unittest.TestCase):
    def setUp(self):
        self.spec = GaussianSpec.build(0.5, 1.0, 1.0)

    def test_inner_inside_outer(self):
        outer = gaussian_outer(self.spec, 401)
        inner = gaussian_inner(self.spec, 21, 11)
        self.assertTrue(contains(outer.hull, inner.hull, tol=1e-6))

    def test_inner_meets_outer_without_correlation(self):
        """At rho=0 and full P2 the inner sum equals the outer sum."""
        s_in, _ = inner_caps(self.spec, 0.0, self.spec.p2)
        s_out, _ = outer_caps(self.spec, 0.0)
        self.assertAlmostEqual(s_in, s_out, delta=1e-9)

    def test_sample_counts(self):
        self.assertEqual(len(gaussian_outer(self.spec, 2).samples), 2)
        self.assertEqual(len(gaussian_inner(self.spec, 3, 4).samples), 12)
        with self.assertRaises(UsageError):
            gaussian_outer(self.spec, 1)

    def test_outer_sum_grows_with_rho(self):
        sums = [s.sum_cap for s in gaussian_outer(self.spec, 11).samples]
        self.assertTrue(all(np.diff(sums) > 0.0))

    def test_csv_layout(self):
        text = traces_csv(self.spec, 3, 2)
        lines = text.splitlines()
        self.assertEqual(lines[0], ",".join(COLUMNS))
        traces = [line.split(",")[0] for line in lines[1:]]
        self.assertEqual(traces.count("outer"), 3)
        self.assertEqual(traces.count("inner"), 6)
        self.assertIn("outer_hull", traces)
        self.assertIn("inner_hull", traces)

    def test_write(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "g.csv")
            rows = write_gaussian_traces(self.spec, path, 3, 2)
            with open(path, encoding="utf-8") as fh:
                self.assertEqual(len(fh.read().splitlines()), rows + 1)


if __name__ == "__main__":
    unittest.main()
