'''Unit tests for probability laws and information functionals'''

import math
import unittest

import numpy as np

from core.bounds.acmac import joint_law_inner
from core.bounds.params import InnerParams
from core.channels.examples import build_binary_additive, build_mod_channel, random_channel
from core.info.functionals import (
    binary_entropy,
    conditional_entropy,
    conditional_mutual_information,
    entropy,
    joint_entropy,
    mutual_information,
    pushforward,
)
from core.info.joint import JointTensor
from core.info.pmf import ConditionalPmf, DelaySet, DiscreteChannel, Pmf
from core.kernel.types import UsageError, ValidationError


class TestPmf(unittest.TestCase):
    def test_rejects_bad_vectors(self):
        """Negative entries and wrong sums are rejected with the offending index."""
        with self.assertRaises(ValidationError):
            Pmf(np.array([0.5, 0.6]))
        with self.assertRaises(ValidationError) as ctx:
            Pmf(np.array([1.2, -0.2]))
        self.assertEqual(ctx.exception.details["index"], [1])

    def test_arrays_are_read_only(self):
        """Stored probability arrays cannot be mutated in place."""
        p = Pmf.uniform(3)
        with self.assertRaises(ValueError):
            p.probs[0] = 1.0

    def test_conditional_rows(self):
        """ConditionalPmf.constant repeats one row."""
        c = ConditionalPmf.constant(4, Pmf.point(3, 2))
        self.assertEqual((c.n_rows, c.size), (4, 3))
        self.assertEqual(c.row(3).to_list(), [0.0, 0.0, 1.0])

    def test_channel_alphabet_cap(self):
        """Alphabets above 16 symbols are refused."""
        with self.assertRaises(ValidationError):
            DiscreteChannel(np.full((17, 1, 1), 1.0))

    def test_delay_set(self):
        """Delays run from -d_min to d_max; unknown delays are usage errors."""
        ds = DelaySet(d_min=1, d_max=2)
        self.assertEqual(ds.delays, (-1, 0, 1, 2))
        self.assertEqual(ds.D, 4)
        self.assertEqual(ds.slot(2), 0)
        self.assertEqual(ds.slot(-1), 3)
        with self.assertRaises(UsageError):
            ds.check(3)
        with self.assertRaises(ValidationError):
            DelaySet(d_min=-1)


class TestEntropy(unittest.TestCase):
    def test_examples(self):
        """Uniform binary, degenerate and (0.11, 0.89) entropies."""
        self.assertAlmostEqual(entropy(Pmf.uniform(2)), 1.0, delta=1e-12)
        self.assertEqual(entropy(Pmf(np.array([1.0, 0.0, 0.0, 0.0]))), 0.0)
        self.assertAlmostEqual(entropy(Pmf(np.array([0.11, 0.89]))), 0.499916, delta=1e-5)
        self.assertAlmostEqual(binary_entropy(0.11), 0.499916, delta=1e-5)

    def test_log_base(self):
        """Entropy in nats for base e."""
        self.assertAlmostEqual(entropy(Pmf.uniform(4), log_base=math.e), math.log(4), delta=1e-12)
        with self.assertRaises(ValidationError):
            entropy(Pmf.uniform(2), log_base=1.0)


class TestMutualInformation(unittest.TestCase):
    def test_independent_and_copy(self):
        """Product joints carry no information; a 4-ary copy carries 2 bits."""
        prod = JointTensor(np.outer([0.3, 0.7], [0.2, 0.8]), ("a", "b"))
        self.assertAlmostEqual(mutual_information(prod, "a", "b"), 0.0, delta=1e-12)
        copy = JointTensor(np.eye(4) / 4.0, ("a", "b"))
        self.assertAlmostEqual(mutual_information(copy, "a", "b"), 2.0, delta=1e-12)

    def test_overlapping_axes(self):
        """Overlapping axis sets are usage errors."""
        copy = JointTensor(np.eye(2) / 2.0, ("a", "b"))
        with self.assertRaises(UsageError):
            mutual_information(copy, "a", ("a", "b"))
        with self.assertRaises(UsageError):
            conditional_entropy(copy, "a", "z")

    def test_mod_channel_sum_information(self):
        """Pr(x1=4)=1 with x2 uniform reaches I(X1,X2;Y) = 2 bits."""
        named = build_mod_channel()
        ds = named.delays
        params = InnerParams.independent(named.channel, ds, [0.0, 1.0], [0.25] * 4)
        joint = joint_law_inner(named.channel, ds, 0, params)
        self.assertAlmostEqual(mutual_information(joint, ("x1", "x2"), "y"), 2.0, delta=1e-12)

    def test_irrelevant_conditioning(self):
        """Conditioning on an independent variable leaves I(A;B) unchanged."""
        ab = np.array([[0.4, 0.1], [0.1, 0.4]])
        joint = JointTensor(ab[:, :, None] * np.array([0.3, 0.7])[None, None, :], ("a", "b", "c"))
        self.assertAlmostEqual(
            conditional_mutual_information(joint, "a", "b", "c"),
            mutual_information(joint, "a", "b"),
            delta=1e-12,
        )

    def test_binary_additive_conditional(self):
        """X2 uniform on the XOR channel: I(X2;Y|V) = 1 - H2(p)."""
        for p in (0.0, 0.11, 0.25, 0.5):
            named = build_binary_additive(p)
            params = InnerParams.uniform(named.channel, named.delays)
            for d in named.delays.delays:
                joint = joint_law_inner(named.channel, named.delays, d, params)
                self.assertAlmostEqual(
                    conditional_mutual_information(joint, "x2", "y", "v"), 1.0 - binary_entropy(p), delta=1e-9
                )

    def test_mod_channel_half_half(self):
        """Pr(x1=2)=Pr(x1=4)=1/2, X2 uniform on {2,3}: I(X2;Y|X1) = 1 bit."""
        named = build_mod_channel()
        params = InnerParams.independent(named.channel, named.delays, [0.5, 0.5], [0.0, 0.0, 0.5, 0.5])
        joint = joint_law_inner(named.channel, named.delays, 0, params)
        self.assertAlmostEqual(conditional_mutual_information(joint, "x2", "y", "x1"), 1.0, delta=1e-12)

    def test_pushforward(self):
        """Law of a function of X."""
        q = pushforward(Pmf(np.array([0.1, 0.2, 0.3, 0.4])), np.array([0, 1, 0, 1]), 2)
        np.testing.assert_allclose(q.probs, [0.4, 0.6])
        with self.assertRaises(UsageError):
            pushforward(Pmf.uniform(2), np.array([0, 3]), 2)


class TestJointTensor(unittest.TestCase):
    def test_marginal_order(self):
        """Marginals come back in the requested axis order."""
        values = np.arange(1, 9, dtype=float).reshape(2, 2, 2)
        joint = JointTensor(values / values.sum(), ("a", "b", "c"))
        m = joint.marginal(("c", "a"))
        np.testing.assert_allclose(m, joint.values.sum(axis=1).T)

    def test_rejects_bad_tags(self):
        """Tag count must match the tensor rank."""
        with self.assertRaises((UsageError, ValidationError)):
            JointTensor(np.full((2, 2), 0.25), ("a",))

    def test_axis_alphabet_cap(self):
        """An axis of more than 16 symbols per letter is rejected; block axes scale the cap."""
        values = np.full((17, 2), 1.0 / 34.0)
        with self.assertRaises(ValidationError) as ctx:
            JointTensor(values, ("a", "b"))
        self.assertEqual(ctx.exception.details["tag"], "a")
        self.assertEqual(ctx.exception.details["size"], 17)
        block = JointTensor(values, ("a", "b"), (2, 1))
        self.assertEqual(block.permuted(("b", "a")).letters, (1, 2))
        with self.assertRaises(ValidationError):
            JointTensor(values, ("a", "b"), (2,))


class TestIdentities(unittest.TestCase):
    def setUp(self):
        rng = np.random.default_rng(11)
        self.joints = []
        for _ in range(20):
            v = rng.dirichlet(np.ones(3 * 2 * 4)).reshape(3, 2, 4)
            self.joints.append(JointTensor(v / v.sum(), ("a", "b", "c")))

    def test_chain_rule(self):
        """I(A,B;C) = I(A;C) + I(B;C|A) on random joints."""
        for j in self.joints:
            lhs = mutual_information(j, ("a", "b"), "c")
            rhs = mutual_information(j, "a", "c") + conditional_mutual_information(j, "b", "c", "a")
            self.assertAlmostEqual(lhs, rhs, delta=1e-9)

    def test_axis_permutation_invariance(self):
        for j in self.joints:
            p = j.permuted(("c", "a", "b"))
            self.assertAlmostEqual(mutual_information(j, "a", "c"), mutual_information(p, "a", "c"), delta=1e-12)
            self.assertAlmostEqual(
                conditional_mutual_information(j, "b", "c", "a"),
                conditional_mutual_information(p, "b", "c", "a"),
                delta=1e-12,
            )
            self.assertAlmostEqual(joint_entropy(j, ("b", "c")), joint_entropy(p, ("c", "b")), delta=1e-12)

    def test_data_processing_on_channel(self):
        """I(X1,X2;Y) <= H(Y) <= log2 |Y| for random channels and product inputs."""
        rng = np.random.default_rng(5)
        for k in range(20):
            ch = random_channel(rng, 2 + k % 2, 2 + k % 3, 2 + k % 4)
            p1 = rng.dirichlet(np.ones(ch.x1_size))
            p2 = rng.dirichlet(np.ones(ch.x2_size))
            v = p1[:, None, None] * p2[None, :, None] * ch.transition
            j = JointTensor(v / v.sum(), ("x1", "x2", "y"))
            i_sum = mutual_information(j, ("x1", "x2"), "y")
            h_y = joint_entropy(j, "y")
            self.assertGreaterEqual(i_sum, -1e-12)
            self.assertLessEqual(i_sum, h_y + 1e-12)
            self.assertLessEqual(h_y, math.log2(ch.y_size) + 1e-12)


if __name__ == "__main__":
    unittest.main()
