import unittest

import numpy as np
from numpy import testing

from radialchannels import capacity, channel, oracle
from radialchannels.errors import DimensionError, InvalidRequest, InvalidState, NotAQuantumChannel
from radialchannels.hypercube import HypercubeFunction, MultiplierSymbol, walsh_analyze, walsh_synthesize

FAST = oracle.OptimizerConfig(seed=3, restarts=4, max_iters=400)


def random_state(rng, N):
    factor = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))

    return oracle.DensityOperator.from_factor(factor)


class DensityOperatorTest(unittest.TestCase):
    def test_maximally_mixed(self):
        rho = oracle.DensityOperator.maximally_mixed(4)

        self.assertEqual(rho.dim, 4)
        self.assertAlmostEqual(oracle.von_neumann_entropy(rho), 2.0, places=12)

    def test_pure_state(self):
        rho = oracle.DensityOperator.pure([1.0, 1j])

        self.assertAlmostEqual(oracle.von_neumann_entropy(rho), 0.0, places=12)
        testing.assert_allclose(rho.matrix, [[0.5, -0.5j], [0.5j, 0.5]], atol=1e-15)

    def test_invalid_states(self):
        self.assertRaisesRegex(InvalidState, 'not Hermitian', oracle.DensityOperator, [[0.5, 1.0], [0.0, 0.5]])
        self.assertRaisesRegex(InvalidState, 'negative eigenvalue', oracle.DensityOperator, [[1.5, 0.0], [0.0, -0.5]])
        self.assertRaisesRegex(InvalidState, 'trace', oracle.DensityOperator, np.eye(2))
        self.assertRaises(InvalidState, oracle.DensityOperator, np.ones(3))

    def test_invalid_state_is_invalid_request(self):
        with self.assertRaises(InvalidRequest):
            oracle.DensityOperator(np.eye(3))


class NaiveWalshTest(unittest.TestCase):
    def test_agrees_with_fast_transform(self):
        rng = np.random.default_rng(41)

        for n in range(2, 13):
            for _ in range(50):
                symbol = MultiplierSymbol(n, rng.standard_normal(2 ** n))

                testing.assert_allclose(
                    walsh_synthesize(symbol).values, oracle.naive_walsh(symbol).values, atol=1e-12
                )

    def test_size_limit(self):
        self.assertRaises(DimensionError, oracle.naive_walsh, MultiplierSymbol.radial(np.ones(16)))


class ChoiTest(unittest.TestCase):
    def test_spectrum_law(self):
        rng = np.random.default_rng(42)

        for n in (2, 4, 6, 8):
            for _ in range(100):
                ch = channel.from_symbol(MultiplierSymbol(n, rng.standard_normal(2 ** n)))
                passed, details = oracle.choi_spectrum_check(ch)

                self.assertTrue(passed, details)

    def test_spectrum_report(self):
        passed, details = oracle.choi_spectrum_check(channel.dephasing(0.25))

        self.assertTrue(passed)
        self.assertEqual(details['N'], 2)
        self.assertLess(details['max_deviation'], 1e-12)

    def test_complex_symbol_spectrum(self):
        rng = np.random.default_rng(43)
        coeffs = rng.standard_normal(16) + 1j * rng.standard_normal(16)

        self.assertTrue(oracle.choi_spectrum_check(channel.from_symbol(MultiplierSymbol(4, coeffs)))[0])

    def test_cp_equivalence(self):
        rng = np.random.default_rng(44)

        for n in (2, 4, 6):
            for k in range(200):
                values = rng.uniform(-1.0, 1.0, 2 ** n)

                if k % 2:
                    # minimum just below or just above zero
                    values = values - values.min() + (1e-3 if k % 4 == 1 else -1e-3)

                ch = channel.from_symbol(walsh_analyze(HypercubeFunction(n, values)))

                self.assertEqual(ch.is_completely_positive(), oracle.cp_check_choi(ch), (n, k))

    def test_needs_matrix_realization(self):
        self.assertRaises(DimensionError, oracle.cp_check_choi, channel.radial([1.0, 0.5, 0.25, 0.1]))


class PurificationTest(unittest.TestCase):
    def test_marginal_is_the_state(self):
        rng = np.random.default_rng(45)

        for N in (2, 4):
            rho = random_state(rng, N)
            psi = oracle.purify(rho).reshape(N, N)

            testing.assert_allclose(psi @ psi.conj().T, rho.matrix, atol=1e-12)
            self.assertAlmostEqual(np.linalg.norm(psi), 1.0, places=12)

    def test_deterministic_phases(self):
        rho = random_state(np.random.default_rng(46), 4)

        testing.assert_array_equal(oracle.purify(rho), oracle.purify(oracle.DensityOperator(rho.matrix.copy())))


DEPHASING_T = [round(0.1 * k, 1) for k in range(1, 10)]


class MutualInformationTest(unittest.TestCase):
    def test_maximally_mixed_input_reaches_capacity(self):
        channels = [channel.dephasing(t) for t in DEPHASING_T] + [channel.ou_semigroup(4, t) for t in (0.3, 1.0)]

        for ch in channels:
            value = oracle.bsst_mutual_information(ch, oracle.DensityOperator.maximally_mixed(ch.N))

            self.assertAlmostEqual(value, capacity.c_ea(ch), delta=1e-8)

    def test_maximize(self):
        channels = [channel.dephasing(t) for t in DEPHASING_T] + [channel.ou_semigroup(4, t) for t in (0.3, 1.0)]

        for ch in channels:
            value, rho = oracle.bsst_maximize(ch)
            c_ea = capacity.c_ea(ch)

            self.assertGreaterEqual(value, c_ea - 1e-4)
            self.assertLessEqual(value, c_ea + 1e-6)
            self.assertEqual(rho.dim, ch.N)

    def test_random_states_stay_below_capacity(self):
        rng = np.random.default_rng(47)
        ch = channel.ou_semigroup(4, 0.5)

        for _ in range(20):
            self.assertLessEqual(oracle.bsst_mutual_information(ch, random_state(rng, 4)), capacity.c_ea(ch) + 1e-9)

    def test_maximize_is_deterministic(self):
        ch = channel.dephasing(0.3)

        self.assertEqual(oracle.bsst_maximize(ch, FAST)[0], oracle.bsst_maximize(ch, FAST)[0])

    def test_requires_quantum_channel(self):
        rho = oracle.DensityOperator.maximally_mixed(2)

        self.assertRaises(NotAQuantumChannel, oracle.bsst_mutual_information, channel.radial([1.0, -2.0, 1.0]), rho)

    def test_state_dimension(self):
        rho = oracle.DensityOperator.maximally_mixed(4)

        self.assertRaises(InvalidState, oracle.bsst_mutual_information, channel.dephasing(0.2), rho)


class CoherentInformationTest(unittest.TestCase):
    def test_maximize_reaches_lower_bound(self):
        for ch in (channel.dephasing(0.05), channel.dephasing(0.4), channel.ou_semigroup(2, 0.3)):
            value, _ = oracle.coherent_information_maximize(ch, FAST)

            self.assertGreaterEqual(value, capacity.q1_lower_bound(ch) - 1e-9)

    def test_identity_channel(self):
        ch = channel.identity_channel(2)
        rho = oracle.DensityOperator.maximally_mixed(2)

        self.assertAlmostEqual(oracle.coherent_information(ch, rho), 1.0, places=10)


class MinimalOutputEntropyTest(unittest.TestCase):
    def test_matrix_trace_bound(self):
        channels = [channel.dephasing(round(0.05 * k, 2)) for k in range(21)]
        channels += [channel.ou_semigroup(2, t) for t in (0.1, 0.5, 1, 2, 5)]

        for ch in channels:
            self.assertLessEqual(
                capacity.hcb_min_matrix_trace(ch), oracle.min_output_entropy_numeric(ch, FAST) + 1e-6
            )

    def test_dephasing_has_pure_outputs(self):
        self.assertAlmostEqual(oracle.min_output_entropy_numeric(channel.dephasing(0.3), FAST), 0.0, delta=1e-8)

    def test_cb_numeric_matches_closed_form(self):
        for t in (0.1, 0.3, 0.5):
            ch = channel.dephasing(t)
            value = oracle.cb_min_output_entropy_numeric(ch, FAST)

            self.assertAlmostEqual(value, capacity.hcb_min_matrix_trace(ch), delta=1e-6)


class IndependentRoutesTest(unittest.TestCase):
    def test_schur_multiplier_entropy(self):
        for t in (0.0, 0.2, 0.5, 0.9):
            ch = channel.dephasing(t)

            self.assertAlmostEqual(oracle.schur_multiplier_entropy(ch), capacity.hcb_min_matrix_trace(ch), delta=1e-10)

    def test_not_a_schur_multiplier(self):
        self.assertRaises(InvalidRequest, oracle.schur_multiplier_entropy, channel.ou_semigroup(2, 0.5))

    def test_relative_entropy_check(self):
        for ch in (channel.dephasing(0.3), channel.ou_semigroup(4, 0.5), channel.identity_channel(6)):
            passed, details = oracle.relative_entropy_check(ch)

            self.assertTrue(passed, details)


class OptimizerConfigTest(unittest.TestCase):
    def test_defaults(self):
        config = oracle.OptimizerConfig()

        self.assertEqual((config.seed, config.restarts, config.max_iters), (0, 32, 2000))
        self.assertEqual(config.step_tolerance, 1e-10)

    def test_invalid(self):
        self.assertRaises(InvalidRequest, oracle.OptimizerConfig, restarts=0)
        self.assertRaises(InvalidRequest, oracle.OptimizerConfig, max_iters=0)

    def test_matrix_size_limit(self):
        self.assertRaises(DimensionError, oracle.bsst_maximize, channel.identity_channel(10), FAST)
