"""
Tests for the truncated Etingof-Kazhdan quantisation.
"""
from fractions import Fraction

from django.test import SimpleTestCase

from quantisation.dy_lie import adjoint_module, trivial_module
from quantisation.ek import (
    AssociatorTrunc, TwistEngine, alpha, alpha_inverse, assoc_on_modules, biproduct_reassembly_check, braiding_const,
    classical_limit_check, ek_bialgebra, ek_bialgebra_report, ek_dy_lift, ek_dy_lift_report, naturality_check,
    product_associativity_check, relative_twist, solve_T, twist_checks, twist_one_jet,
)
from quantisation.exceptions import SignatureMismatch, TruncationObstruction
from quantisation.fixtures import load_fixture
from quantisation.liebialg import drinfeld_double, identity_pair, zero_pair
from quantisation.multilinear import flip, identity
from quantisation.verma import verma_family


class AssociatorTest(SimpleTestCase):
    """Test cases for the truncated associator and the braiding."""

    def setUp(self):
        """Set up the Borel fixture with its trivial and adjoint modules."""
        self.b = load_fixture('sl2_borel')
        self.k = trivial_module(self.b)
        self.ad = adjoint_module(drinfeld_double(self.b))

    def test_trivial_below_second_order(self):
        """Test that Φ = 1 mod h^2 and whenever c2 = 0."""
        self.assertTrue(AssociatorTrunc(1).trivial)
        self.assertTrue(AssociatorTrunc(2, c2=0).trivial)
        self.assertFalse(AssociatorTrunc(2, c2=Fraction(1, 24)).trivial)

    def test_associator_at_first_order(self):
        """Test that Φ acts as the identity at order h."""
        phi = assoc_on_modules(AssociatorTrunc(1), self.ad, self.ad, self.ad)
        self.assertEqual(phi, identity(self.ad.legs * 3).lift(1))

    def test_braiding_on_trivial(self):
        """Test that β_{k,k} is the identity."""
        self.assertEqual(braiding_const(self.k, self.k, 1), identity(self.k.legs * 2).lift(1))

    def test_braiding_is_flip_mod_h(self):
        """Test that β = flip modulo h."""
        (g,) = self.ad.legs
        self.assertEqual(braiding_const(self.ad, self.ad, 2).mod_hbar(), flip(g, g))

    def test_associator_requires_one_base(self):
        """Test that modules over different Lie bialgebras are rejected."""
        other = trivial_module(load_fixture('abelian3'))
        with self.assertRaises(SignatureMismatch):
            assoc_on_modules(AssociatorTrunc(2), self.k, self.k, other)


class RelativeTwistTest(SimpleTestCase):
    """Test cases for the relative twist and the element T."""

    def test_twist_checks(self):
        """Test classical limit, one-jet and coherence for the shipped and trivial pairs."""
        b = load_fixture('sl2_borel')
        for pair in (load_fixture('borel_pair'), identity_pair(b), zero_pair(b)):
            report = twist_checks(pair, 1)
            self.assertTrue(report.passed, (pair.name, report.failures()))

    def test_one_jet_on_verma_window(self):
        """Test J = id + (h/2)(r_b + i⊗i(r_a^21)) on M-⊗M- at D = 2."""
        b = load_fixture('sl2_borel')
        m_minus = verma_family(zero_pair(b), 2).m_minus
        for pair in (zero_pair(b), load_fixture('borel_pair'), identity_pair(b)):
            J = relative_twist(pair, m_minus, m_minus, 1)
            inputs = {i for i, _ in J.columns()}
            self.assertTrue(inputs, pair.name)
            expected = twist_one_jet(pair, m_minus, m_minus).restrict(lambda i: i in inputs)
            self.assertEqual(J.hbar_part(1), expected, pair.name)

    def test_T_is_trivial(self):
        """Test that T = 1 solves the relations at order h."""
        T = solve_T(identity_pair(load_fixture('sl2_borel')), 2, 1)
        self.assertTrue(T.trivial)
        self.assertTrue(T.report.passed, T.report.failures())

    def test_naturality(self):
        """Test that i and p intertwine the quantised cobrackets."""
        report = naturality_check(load_fixture('borel_pair'), 2, 1)
        self.assertTrue(report.passed, report.failures())

    def test_order_above_two(self):
        """Test that orders beyond h^2 raise TruncationObstruction."""
        pair = load_fixture('borel_pair')
        with self.assertRaises(TruncationObstruction) as ctx:
            TwistEngine(pair, 3)
        self.assertEqual(ctx.exception.order, 3)
        with self.assertRaises(TruncationObstruction):
            ek_bialgebra(pair.amb, 2, 3)

    def test_fiber_of_trivial(self):
        """Test that α^{-1}(v) is invariant, unique and evaluates back to v."""
        pair = load_fixture('borel_pair')
        family = verma_family(pair, 2)
        fiber = alpha_inverse(trivial_module(pair.amb), {0: 1}, family, 1)
        self.assertTrue(fiber.report.passed, fiber.report.failures())
        self.assertEqual(alpha(fiber, family), {(0,): 1})

    def test_fiber_of_adjoint(self):
        """Test the evaluation round trip on every basis vector of the double."""
        pair = load_fixture('borel_pair')
        family = verma_family(pair, 2)
        ad = adjoint_module(drinfeld_double(pair.amb))
        for i in range(ad.dim):
            fiber = alpha_inverse(ad, {i: 1}, family, 1, verify=False)
            self.assertEqual(alpha(fiber, family), {(i,): 1})


class QuantisationTest(SimpleTestCase):
    """Test cases for U_h b and the lifts of DY modules."""

    @classmethod
    def setUpClass(cls):
        """Quantise sl2_borel once at D = 2, N = 1."""
        super().setUpClass()
        cls.b = load_fixture('sl2_borel')
        cls.que = ek_bialgebra(cls.b, 2, 1)

    def test_bialgebra_report(self):
        """Test the QUE axioms and the classical limit."""
        report = ek_bialgebra_report(self.que)
        self.assertTrue(report.passed, report.failures())

    def test_classical_limit_at_second_order(self):
        """Test m and Δ mod h against the star product and the symmetric coproduct at N = 2."""
        report = classical_limit_check(ek_bialgebra(self.b, 2, 2))
        self.assertTrue(report.passed, report.failures())

    def test_abelian_is_cocommutative(self):
        """Test that a zero cobracket gives Δ = Δ^21 at order h on generators."""
        que = ek_bialgebra(load_fixture('abelian3'), 2, 1)
        report = ek_bialgebra_report(que)
        self.assertTrue(report.passed, report.failures())

    def test_lift_of_trivial(self):
        """Test the lift of k."""
        report = ek_dy_lift_report(self.que, trivial_module(self.b))
        self.assertTrue(report.passed, report.failures())

    def test_lift_of_verma(self):
        """Test the lift of M- truncated well above the window."""
        m_minus = verma_family(zero_pair(self.b), 2 + 4 + 2).m_minus
        report = ek_dy_lift_report(self.que, m_minus)
        self.assertTrue(report.passed, report.failures())

    def test_lift_requires_matching_base(self):
        """Test that a module over another Lie bialgebra is rejected."""
        with self.assertRaises(SignatureMismatch):
            ek_dy_lift(self.que, trivial_module(load_fixture('abelian3')))


class RelativeProductTest(SimpleTestCase):
    """Test cases for the relative product and the biproduct of the shipped pair."""

    def test_product_associativity(self):
        """Test μ_V(id⊗μ_V)Φ = μ_V(μ_L⊗id) on the trivial module."""
        pair = load_fixture('borel_pair')
        report = product_associativity_check(pair, trivial_module(pair.amb), 2, 1)
        self.assertTrue(report.passed, report.failures())

    def test_biproduct_reassembly(self):
        """Test L_h⋆U_h a ≅ U_h b on the exact window."""
        report = biproduct_reassembly_check(load_fixture('borel_pair'), 2, 1)
        self.assertTrue(report.passed, report.failures())
