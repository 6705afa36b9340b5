'''Unit tests for the n-letter region points'''

import itertools
import unittest

import numpy as np

from core.bounds.acmac import inner_point
from core.bounds.params import InnerParams
from core.bounds.search import InnerModel
from core.bounds.windows import encode
from core.channels.examples import build_binary_additive, build_mod_channel, random_channel
from core.info.pmf import DelaySet
from core.kernel.types import CapacityError, UsageError, ValidationError
from core.multiletter.nletter import (
    NLetterLaw,
    accmac_multiletter_point,
    edge_gap_bound,
    output_positions,
    q_n_point,
    r_n_point,
)
from core.sim.codebooks import window_codes


def _random_law(rng, n, x1, x2):
    return NLetterLaw(n, rng.dirichlet(np.ones(x1**n * x2**n)).reshape(x1**n, x2**n), x1, x2)


class TestNLetterLaw(unittest.TestCase):
    def test_shape_checked(self):
        with self.assertRaises(ValidationError):
            NLetterLaw(2, np.ones((4, 2)), 2, 2)

    def test_cap(self):
        """Enumerating 16^4 x 16^4 sequences is refused."""
        with self.assertRaises(CapacityError):
            NLetterLaw(4, np.ones((1, 1)), 16, 16)

    def test_iid_law_matches_enumeration(self):
        """Every (x1^n, x2^n) entry equals the product over cyclic windows, n up to 6."""
        rng = np.random.default_rng(9)
        ds = DelaySet(1, 1)
        ch = random_channel(rng, 2, 2, 2)
        params = InnerModel(ch, ds).random_params(rng)
        for n in (3, 4, 6):
            law = NLetterLaw.from_iid_inner(params, ch, ds, n)
            for x1 in itertools.product(range(2), repeat=n):
                x1 = np.array(x1)
                v = window_codes(x1, ds, 2)
                p1 = float(np.prod(params.p_x1.probs[x1]))
                for x2 in itertools.product(range(2), repeat=n):
                    x2 = np.array(x2)
                    p = p1 * float(np.prod(params.p_x2_given_v.rows[v, x2]))
                    self.assertAlmostEqual(law.probs[encode(x1, 2), encode(x2, 2)], p, delta=1e-14)

    def test_iid_needs_window(self):
        named = build_binary_additive(0.0)
        with self.assertRaises(UsageError):
            NLetterLaw.from_iid_inner(InnerParams.uniform(named.channel, named.delays), named.channel, named.delays, 1)

    def test_iid_marginal(self):
        """The x1 marginal of the expansion is the product law."""
        named = build_binary_additive(0.0)
        params = InnerParams.independent(named.channel, named.delays, [0.25, 0.75], [0.5, 0.5])
        law = NLetterLaw.from_iid_inner(params, named.channel, named.delays, 3)
        self.assertAlmostEqual(float(law.probs.sum()), 1.0, delta=1e-12)
        self.assertAlmostEqual(float(law.probs.sum(axis=1)[-1]), 0.75**3, delta=1e-12)


class TestPoints(unittest.TestCase):
    def test_single_letter_matches_inner(self):
        """n=1 with D=1 reproduces the single-letter pentagon."""
        rng = np.random.default_rng(8)
        ds = DelaySet(0, 0)
        for _ in range(10):
            ch = random_channel(rng, 2, 2, 3)
            params = InnerModel(ch, ds).random_params(rng)
            law = NLetterLaw.from_iid_inner(params, ch, ds, 1)
            a = r_n_point(ch, ds, law)
            b = inner_point(ch, ds, params).pentagon
            self.assertAlmostEqual(a.a, b.a, delta=1e-9)
            self.assertAlmostEqual(a.b, b.b, delta=1e-9)

    def test_noiseless_xor_two_letters(self):
        """Uniform inputs on the noiseless XOR channel give one bit per letter."""
        named = build_binary_additive(0.0)
        law = NLetterLaw.from_iid_inner(InnerParams.uniform(named.channel, named.delays), named.channel, named.delays, 2)
        r = r_n_point(named.channel, named.delays, law)
        q = q_n_point(named.channel, named.delays, law)
        self.assertAlmostEqual(r.a, 1.0, delta=1e-9)
        self.assertAlmostEqual(r.b, 1.0, delta=1e-9)
        # one of the two outputs survives truncation
        self.assertAlmostEqual(q.a, 0.5, delta=1e-9)

    def test_synchronous_truncation_is_identity(self):
        rng = np.random.default_rng(4)
        ds = DelaySet(0, 0)
        ch = random_channel(rng, 2, 2, 2)
        law = _random_law(rng, 3, 2, 2)
        r = r_n_point(ch, ds, law)
        q = q_n_point(ch, ds, law)
        self.assertEqual((r.a, r.b), (q.a, q.b))
        self.assertEqual(output_positions(ds, 3, True), [0, 1, 2])

    def test_edge_gap(self):
        """|r_n - q_n| stays within (d_max + d_min) log2|Y| / n on random laws."""
        rng = np.random.default_rng(21)
        cases = [(DelaySet(0, 1), 4)] * 15 + [(DelaySet(1, 1), 4)] * 15 + [(DelaySet(1, 1), 6)] * 15 + [(DelaySet(0, 1), 8)] * 5
        for ds, n in cases:
            ch = random_channel(rng, 2, 2, 2)
            law = _random_law(rng, n, 2, 2)
            r = r_n_point(ch, ds, law)
            q = q_n_point(ch, ds, law)
            bound = edge_gap_bound(ch, ds, n)
            self.assertLessEqual(abs(r.a - q.a), bound + 1e-9)
            self.assertLessEqual(abs(r.b - q.b), bound + 1e-9)

    def test_gap_bound_value(self):
        ch = build_binary_additive(0.0).channel
        self.assertEqual(edge_gap_bound(ch, DelaySet(0, 1), 4), 0.25)

    def test_q_n_needs_window(self):
        rng = np.random.default_rng(1)
        ch = random_channel(rng)
        with self.assertRaises(UsageError):
            q_n_point(ch, DelaySet(0, 1), _random_law(rng, 1, 2, 2))

    def test_alphabet_mismatch(self):
        rng = np.random.default_rng(1)
        ch = random_channel(rng, 2, 3, 2)
        with self.assertRaises(ValidationError):
            r_n_point(ch, DelaySet(0, 0), _random_law(rng, 2, 2, 2))


class TestAccmacMultiletter(unittest.TestCase):
    def test_uninformed_cap_is_block_entropy(self):
        """With Pr(x1 = 4) = 1/2 i.i.d. the R1 cap is one bit per letter."""
        named = build_mod_channel()
        params = InnerParams.independent(named.channel, named.delays, [0.5, 0.5], [0.0, 0.0, 0.5, 0.5])
        law = NLetterLaw.from_iid_inner(params, named.channel, named.delays, 2)
        point = accmac_multiletter_point(named.channel, named.delays, law)
        self.assertAlmostEqual(point.c, 1.0, delta=1e-9)
        self.assertAlmostEqual(point.a, 2.0, delta=1e-9)


if __name__ == "__main__":
    unittest.main()
