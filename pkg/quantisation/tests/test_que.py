"""
Tests for truncated QUEs, B', admissibility and quantum Verma modules.
"""
from django.test import SimpleTestCase

from quantisation.dy_lie import trivial_module, validate_dy_lie
from quantisation.ek import ek_bialgebra, ek_dy_lift, que_split_pair
from quantisation.fixtures import load_fixture
from quantisation.hopf import (
    radford_split, trivial_hopf_module, unit_split, validate_dy_hopf, validate_split_hopf_pair,
)
from quantisation.liebialg import zero_lie_bialgebra
from quantisation.que import (
    bprime_factorisation_check, check_admissible, compute_Bprime, coverma_closure, default_samples,
    divisibility_failure, in_bprime, quantum_coverma, quantum_restriction_triviality, quantum_verma_M,
    relative_quantum_vermas, semiclassical_limit, universal_property_checks, validate_que,
)
from quantisation.scalar import TruncSeries


class UniversalPropertyTest(SimpleTestCase):
    """Test cases for M_B and the co-Verma module over finite-dimensional Hopf algebras."""

    def test_universal_properties(self):
        """Test both Hom identities on k[Z/2] and Sweedler's algebra."""
        for name in ('z2', 'sweedler_h4'):
            h = load_fixture(name).with_inverse()
            report = universal_property_checks(h)
            self.assertTrue(report.passed, (name, report.failures()))
            self.assertIn('M_B[k]', report)
            self.assertIn(f'coverma[{default_samples(h)[-1].name}]', report)

    def test_default_samples(self):
        """Test that the seeded perturbation of k⊕k is a DY module and reproducible."""
        h = load_fixture('z2').with_inverse()
        samples = default_samples(h, seed=5)
        self.assertEqual([v.name for v in samples[:3]], ['k', f'M_{h.name}', f'Mv_{h.name}'])
        perturbed = samples[-1]
        self.assertEqual(perturbed.dim, 2)
        self.assertTrue(validate_dy_hopf(perturbed).passed)
        again = default_samples(h, seed=5)[-1]
        self.assertEqual(again.action.entries, perturbed.action.entries)
        self.assertEqual(again.coaction.entries, perturbed.coaction.entries)

    def test_verma_is_a_dy_module(self):
        """Test the DY axioms on M_B for Sweedler's algebra."""
        M = quantum_verma_M(load_fixture('sweedler_h4').with_inverse())
        self.assertEqual(M.dim, 4)
        self.assertTrue(validate_dy_hopf(M).passed)

    def test_coverma_is_a_dy_module(self):
        """Test the DY axioms on the co-Verma module of H4."""
        self.assertTrue(validate_dy_hopf(quantum_coverma(load_fixture('sweedler_h4'))).passed)

    def test_relative_vermas(self):
        """Test L, N and the restriction property on k[Z/2] ⊂ H4 for every default sample."""
        rel = relative_quantum_vermas(load_fixture('sweedler_split'))
        self.assertEqual(rel.L.dim, 2)
        self.assertEqual(rel.N.dim, 8)
        self.assertTrue(rel.report.passed, rel.report.failures())
        names = [v.name for v in default_samples(rel.pair.B)]
        for name in names:
            self.assertEqual(rel.report.status(f'N_universal[{name}]'), 'pass')
        report = quantum_restriction_triviality(rel)
        self.assertTrue(report.passed, report.failures())
        self.assertIn(f'trivial[{names[1]},{names[2]}]', report)

    def test_relative_universal_on_verma(self):
        """Test the universal property of N and the restriction property against M_B."""
        pair = load_fixture('sweedler_split')
        M = quantum_verma_M(pair.B.with_inverse())
        rel = relative_quantum_vermas(pair, samples=[M])
        self.assertEqual(rel.report.status(f'N_universal[{M.name}]'), 'pass')
        self.assertEqual(rel.report.status(f'N_universal_pullback[{M.name}]'), 'pass')
        report = quantum_restriction_triviality(rel, [M])
        self.assertTrue(report.passed, report.failures())
        self.assertNotEqual(report[f'trivial[{M.name},{M.name}]'].detail, '0x0 morphism pairs')


class QUETest(SimpleTestCase):
    """Test cases for the quantisation of sl2_borel at order h."""

    @classmethod
    def setUpClass(cls):
        """Quantise once for the whole class."""
        super().setUpClass()
        cls.que = ek_bialgebra(load_fixture('sl2_borel'), 2, 1)

    def test_window(self):
        """Test the order, the window and the exact degree."""
        self.assertEqual(self.que.order, 1)
        self.assertEqual(self.que.space.dim, 6)
        self.assertEqual(self.que.exact_degree, 1)
        self.assertEqual(len(self.que.generators), 2)

    def test_validate_que(self):
        """Test the windowed Hopf axioms and the classical limit."""
        report = validate_que(self.que)
        self.assertTrue(report.passed, report.failures())

    def test_bprime(self):
        """Test that h·x lies in B' and x does not."""
        g = self.que.generators[0]
        self.assertTrue(in_bprime(self.que, {g: TruncSeries.hbar(1)}))
        self.assertFalse(in_bprime(self.que, {g: TruncSeries.constant(1, 1)}))
        bprime = compute_Bprime(self.que)
        self.assertTrue(bprime.report.passed)
        self.assertEqual(bprime.report.status('divisibility[1]'), 'pass')
        self.assertTrue(bprime.contains({g: TruncSeries.hbar(1)}))

    def test_divisibility_witness(self):
        """Test that a generator without a factor h fails the first condition with a witness."""
        g = self.que.generators[0]
        failure = divisibility_failure(self.que, {g: TruncSeries.constant(1, 1)}, 1)
        self.assertEqual(failure['valuation'], 0)
        self.assertEqual(failure['output'], [self.que.space.labels[g]])
        self.assertIsNone(divisibility_failure(self.que, {g: TruncSeries.hbar(1)}, 1))
        for vec in compute_Bprime(self.que).vectors:
            self.assertIsNone(divisibility_failure(self.que, vec, 1))

    def test_divisibility_beyond_order(self):
        """Test that conditions past the order of h are not testable."""
        report = compute_Bprime(self.que, n_max=2).report
        self.assertEqual(report.status('divisibility[2]'), 'not-testable-at-order')

    def test_coverma_closure(self):
        """Test that the co-Verma module preserves B' and is admissible on it."""
        self.assertTrue(coverma_closure(self.que).passed)

    def test_trivial_module_is_admissible(self):
        """Test that k is admissible."""
        flag = check_admissible(trivial_hopf_module(self.que.hopf), self.que.exact_degree)
        self.assertTrue(flag)
        self.assertIsNone(flag.witness)

    def test_bprime_factorisation(self):
        """Test B' = L'⋆k' for the unit split k ⊂ U_h b."""
        unit = ek_bialgebra(zero_lie_bialgebra(), 2, 1)
        data = radford_split(unit_split(self.que.hopf), max_degree=self.que.exact_degree)
        report = bprime_factorisation_check(data, self.que, unit)
        self.assertTrue(report.passed, report.failures())

    def test_semiclassical_limit_of_trivial(self):
        """Test that the lift of k is admissible with limit k."""
        k = trivial_module(load_fixture('sl2_borel'))
        limit = semiclassical_limit(ek_dy_lift(self.que, k), self.que)
        self.assertEqual(limit.dim, 1)
        self.assertTrue(validate_dy_lie(limit).passed)

    def test_universal_over_que(self):
        """Test the free ranks of Hom from M_B and into M̂ on the exact window."""
        h = self.que.hopf
        report = universal_property_checks(h, max_degree=self.que.exact_degree)
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.status('M_B[k]'), 'pass')
        self.assertEqual(report.status('coverma[k]'), 'pass')

    def test_graded_samples_over_que(self):
        """Test that graded samples are not compared over a truncated ring."""
        h = self.que.hopf
        report = universal_property_checks(h, [quantum_verma_M(h)], self.que.exact_degree)
        self.assertEqual(report.status(f'M_B[M_{h.name}]'), 'not-testable-at-order')

    def test_zero_lie_bialgebra(self):
        """Test that the zero Lie bialgebra quantises to k."""
        que = ek_bialgebra(zero_lie_bialgebra(), 2, 1)
        self.assertEqual(que.space.dim, 1)
        self.assertEqual(que.generators, ())


class QUESplitPairTest(SimpleTestCase):
    """Test cases for U_h a ⊂ U_h b on the shipped pair at N=1, D=2."""

    @classmethod
    def setUpClass(cls):
        """Build the pair and its relative Verma modules once."""
        super().setUpClass()
        cls.pair = load_fixture('borel_pair')
        cls.qpair, cls.que_b, cls.que_a = que_split_pair(cls.pair, 2, 1)
        cls.rel = relative_quantum_vermas(cls.qpair, que_b=cls.que_b, que_a=cls.que_a)

    def test_split_pair(self):
        """Test that i and p are Hopf maps with p∘i = id on the window."""
        self.assertEqual(self.qpair.B.dim, self.que_b.space.dim)
        report = validate_split_hopf_pair(self.qpair, self.que_b.exact_degree)
        self.assertTrue(report.passed, report.failures())

    def test_relative_vermas(self):
        """Test that L is admissible and N is admissible and closed on B'⊗A*."""
        report = self.rel.report
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.status('L_admissible.valuation'), 'pass')
        self.assertEqual(report.status('N_bprime_admissible'), 'pass')
        self.assertEqual(report.status('N_bprime_closure'), 'pass')

    def test_restriction_is_trivial(self):
        """Test that the tensor structure of the quantum restriction functor is trivial."""
        report = quantum_restriction_triviality(self.rel)
        self.assertTrue(report.passed, report.failures())
        self.assertIn('trivial[k,k]', report)
        self.assertEqual(report.max_degree, self.que_b.exact_degree)
