'''Unit tests for the ACMAC and ACC-MAC single-letter bound evaluators'''

import math
import unittest

import numpy as np

from core.bounds.accmac import accmac_inner_point, accmac_outer_point
from core.bounds.acmac import (
    check_outer_cap,
    inner_caps,
    inner_point,
    joint_law_inner,
    joint_law_outer,
    outer_caps,
    outer_point,
)
from core.bounds.params import BoundResult, InnerParams, OuterParams
from core.bounds.search import InnerModel
from core.bounds.windows import digit_table
from core.channels.examples import build_binary_additive, build_mod_channel, random_channel
from core.info.functionals import binary_entropy, conditional_mutual_information, entropy, mutual_information
from core.info.pmf import ConditionalPmf, DelaySet, DiscreteChannel, Pmf
from core.kernel.types import CapacityError, ValidationError


class TestInnerJointLaw(unittest.TestCase):
    def test_synchronous_collapse(self):
        """With D=1 the window is x1 itself."""
        named = build_mod_channel()
        params = InnerParams.independent(named.channel, named.delays, [0.3, 0.7], [0.1, 0.2, 0.3, 0.4])
        joint = joint_law_inner(named.channel, named.delays, 0, params)
        vx1 = joint.marginal(("v", "x1"))
        np.testing.assert_allclose(vx1, np.diag([0.3, 0.7]), atol=1e-15)

    def test_uniform_output_on_xor(self):
        """Uniform inputs on the XOR channel give a uniform output."""
        named = build_binary_additive(0.11)
        joint = joint_law_inner(named.channel, named.delays, 0, InnerParams.uniform(named.channel, named.delays))
        np.testing.assert_allclose(joint.marginal(("y",)), [0.5, 0.5], atol=1e-15)

    def test_window_slot(self):
        """Under delay d the channel reads window slot d_max - d (0-based, oldest first)."""
        ch = build_binary_additive(0.0).channel
        ds = DelaySet(0, 1)
        params = InnerModel(ch, ds).random_params(np.random.default_rng(3))
        table = digit_table(2, 2)
        for d, slot in ((1, 0), (0, 1)):
            vx1 = joint_law_inner(ch, ds, d, params).marginal(("v", "x1"))
            for v in range(4):
                self.assertEqual(int(np.flatnonzero(vx1[v] > 0)[0]), int(table[v, slot]))

    def test_param_shape_checked(self):
        """A conditional with the wrong number of rows is rejected."""
        named = build_binary_additive(0.0)
        bad = InnerParams.independent(named.channel, DelaySet(0, 0), [0.5, 0.5], [0.5, 0.5])
        with self.assertRaises(ValidationError):
            inner_point(named.channel, named.delays, bad)


class TestInnerPoint(unittest.TestCase):
    def test_synchronous_cmac_pentagon(self):
        """D=1: sum cap I(X1,X2;Y) and R2 cap I(X2;Y|X1)."""
        rng = np.random.default_rng(11)
        ds = DelaySet(0, 0)
        for _ in range(5):
            ch = random_channel(rng, 2, 3, 2)
            params = InnerModel(ch, ds).random_params(rng)
            joint = joint_law_inner(ch, ds, 0, params)
            s, r2 = inner_caps(ch, ds, 0, params)
            self.assertAlmostEqual(s, mutual_information(joint, ("x1", "x2"), "y"), delta=1e-9)
            self.assertAlmostEqual(r2, conditional_mutual_information(joint, "x2", "y", "x1"), delta=1e-9)

    def test_binary_additive_pentagon(self):
        """Independent uniform X2 on the XOR channel: a = b = 1 - H2(p)."""
        for p in (0.0, 0.11, 0.25, 0.5):
            named = build_binary_additive(p)
            params = InnerParams.independent(named.channel, named.delays, [0.3, 0.7], [0.5, 0.5])
            pent = inner_point(named.channel, named.delays, params).pentagon
            cap = 1.0 - binary_entropy(p)
            self.assertAlmostEqual(pent.a, cap, delta=1e-9)
            self.assertAlmostEqual(pent.b, cap, delta=1e-9)

    def test_per_delay_caps_ordered(self):
        """Every delay gives r2_cap <= sum_cap <= log2 |Y|."""
        rng = np.random.default_rng(21)
        ds = DelaySet(1, 1)
        for k in range(10):
            ch = random_channel(rng, 2, 2 + k % 2, 2 + k % 3)
            res = inner_point(ch, ds, InnerModel(ch, ds).random_params(rng))
            self.assertEqual(sorted(res.per_delay), [-1, 0, 1])
            for s, r2, _ in res.per_delay.values():
                self.assertLessEqual(r2, s + 1e-9)
                self.assertLessEqual(s, math.log2(ch.y_size) + 1e-9)

    def test_more_delays_never_widen(self):
        """Lifting synchronous params to a larger delay set keeps delay 0 and can only shrink a and b."""
        rng = np.random.default_rng(4)
        sync = DelaySet(0, 0)
        for _ in range(10):
            ch = random_channel(rng, 2, 3, 2)
            small = InnerModel(ch, sync).random_params(rng)
            base = inner_point(ch, sync, small)
            for ds in (DelaySet(0, 1), DelaySet(1, 1)):
                table = digit_table(ch.x1_size, ds.D)
                rows = small.p_x2_given_v.rows[table[:, ds.slot(0)]]
                lifted = inner_point(ch, ds, InnerParams(small.p_x1, ConditionalPmf(rows)))
                self.assertAlmostEqual(lifted.per_delay[0][0], base.per_delay[0][0], delta=1e-9)
                self.assertAlmostEqual(lifted.per_delay[0][1], base.per_delay[0][1], delta=1e-9)
                self.assertLessEqual(lifted.pentagon.a, base.pentagon.a + 1e-9)
                self.assertLessEqual(lifted.pentagon.b, base.pentagon.b + 1e-9)

    def test_subsets_of_delays(self):
        """Intersecting over more of the per-delay caps never raises a or b."""
        rng = np.random.default_rng(8)
        ds = DelaySet(1, 1)
        ch = random_channel(rng, 2, 2, 3)
        res = inner_point(ch, ds, InnerModel(ch, ds).random_params(rng))
        for sub in ((0,), (-1, 0), (0, 1), (-1, 1)):
            part = BoundResult.from_caps({d: res.per_delay[d] for d in sub}, res.params).pentagon
            self.assertGreaterEqual(part.a, res.pentagon.a - 1e-12)
            self.assertGreaterEqual(part.b, res.pentagon.b - 1e-12)


class TestOuterPoint(unittest.TestCase):
    def test_coincides_with_inner_when_synchronous(self):
        """On 200 random channels with D=1 the outer and inner pentagons agree."""
        rng = np.random.default_rng(2024)
        ds = DelaySet(0, 0)
        for _ in range(200):
            ch = random_channel(rng, 2, 2, 2)
            inner = InnerModel(ch, ds).random_params(rng)
            a = inner_point(ch, ds, inner).pentagon
            b = outer_point(ch, ds, OuterParams.product_extension(inner, ch, ds)).pentagon
            self.assertAlmostEqual(a.a, b.a, delta=1e-9)
            self.assertAlmostEqual(a.b, b.b, delta=1e-9)

    def test_product_extension_on_xor(self):
        """The blocked i.i.d. extension of uniform laws reaches 1 - H2(p) on the XOR channel."""
        for p in (0.0, 0.11):
            named = build_binary_additive(p)
            ext = OuterParams.product_extension(InnerParams.uniform(named.channel, named.delays), named.channel, named.delays)
            pent = outer_point(named.channel, named.delays, ext).pentagon
            self.assertAlmostEqual(pent.a, 1.0 - binary_entropy(p), delta=1e-9)

    def test_point_mass_cognition(self):
        """A deterministic super-symbol gives X1b no entropy and sum cap equal to the R2 cap."""
        named = build_binary_additive(0.11)
        ch, ds = named.channel, named.delays
        ext = OuterParams.product_extension(InnerParams.uniform(ch, ds), ch, ds)
        params = OuterParams(Pmf.point(ext.p_vtilde.size, 5), ext.p_x2_causal)
        for d in ds.delays:
            s, r2, p_x1b = outer_caps(ch, ds, d, params)
            self.assertEqual(entropy(Pmf(p_x1b)), 0.0)
            self.assertAlmostEqual(s, r2, delta=1e-9)
            joint = joint_law_outer(ch, ds, d, params)
            self.assertAlmostEqual(
                s, mutual_information(joint, "x2b", "yb") / ds.D, delta=1e-9
            )

    def test_size_cap(self):
        """Blocked tensors beyond the cap raise CapacityError with the size."""
        ch = DiscreteChannel(np.full((4, 4, 4), 0.25))
        with self.assertRaises(CapacityError) as ctx:
            check_outer_cap(ch, DelaySet(0, 3))
        self.assertEqual(ctx.exception.details["size"], 4**15)
        check_outer_cap(ch, DelaySet(0, 1))


class TestAccmacPoints(unittest.TestCase):
    def setUp(self):
        named = build_mod_channel()
        self.ch, self.ds = named.channel, named.delays

    def test_corner_law(self):
        """Pr(x1=2)=Pr(x1=4)=1/2 with X2 uniform on {2,3} gives the (1,1) corner."""
        params = InnerParams.independent(self.ch, self.ds, [0.5, 0.5], [0.0, 0.0, 0.5, 0.5])
        pent = accmac_inner_point(self.ch, self.ds, params).pentagon
        self.assertAlmostEqual(pent.a, 2.0, delta=1e-12)
        self.assertAlmostEqual(pent.b, 1.0, delta=1e-12)
        self.assertAlmostEqual(pent.c, 1.0, delta=1e-12)

    def test_deterministic_uninformed_user(self):
        """A deterministic p_x1 leaves R1 no room."""
        params = InnerParams.independent(self.ch, self.ds, [0.0, 1.0], [0.25] * 4)
        pent = accmac_inner_point(self.ch, self.ds, params).pentagon
        self.assertEqual(pent.c, 0.0)
        self.assertAlmostEqual(pent.b, 2.0, delta=1e-12)

    def test_acmac_intersection(self):
        """The ACC-MAC pentagon is the ACMAC one with R1 <= H(X1)."""
        rng = np.random.default_rng(5)
        params = InnerModel(self.ch, self.ds).random_params(rng)
        acmac = inner_point(self.ch, self.ds, params).pentagon
        acc = accmac_inner_point(self.ch, self.ds, params).pentagon
        self.assertEqual((acmac.a, acmac.b), (acc.a, acc.b))
        self.assertAlmostEqual(acc.c, min(entropy(params.p_x1), acmac.a), delta=1e-12)

    def test_outer_block_entropy(self):
        """D=1: the outer R1 cap is H(X1); a point-mass super-symbol gives 0."""
        inner = InnerParams.independent(self.ch, self.ds, [0.25, 0.75], [0.25] * 4)
        ext = OuterParams.product_extension(inner, self.ch, self.ds)
        self.assertAlmostEqual(accmac_outer_point(self.ch, self.ds, ext).pentagon.c, entropy(inner.p_x1), delta=1e-12)
        point = OuterParams(Pmf.point(ext.p_vtilde.size, 1), ext.p_x2_causal)
        self.assertEqual(accmac_outer_point(self.ch, self.ds, point).pentagon.c, 0.0)


if __name__ == "__main__":
    unittest.main()
