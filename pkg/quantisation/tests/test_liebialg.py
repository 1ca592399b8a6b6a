"""
Tests for Lie bialgebras, Drinfeld doubles and split pairs.
"""
import random

from django.test import SimpleTestCase

from quantisation.exceptions import InvalidStructure, NotSplit
from quantisation.fixtures import load_fixture
from quantisation.liebialg import (
    LieBialgebra, direct_sum_with_op, drinfeld_double, identity_pair, manin_inclusion, mutate, pairing_matrix,
    parabolic_decomposition,
    require_valid, split_pair_from_manin, validate_double, validate_lie_bialgebra, validate_split_pair,
    zero_pair,
)
from quantisation.multilinear import LinMap, compose, rank, tensor


def sl2_borel():
    return LieBialgebra.from_constants(
        'sl2_borel', ['H', 'E'],
        bracket={('H', 'E'): {'E': 2}, ('E', 'H'): {'E': -2}},
        cobracket={'E': {('E', 'H'): 1, ('H', 'E'): -1}},
    )


class LieBialgebraTest(SimpleTestCase):
    """Test cases for the Lie bialgebra axioms."""

    def test_shipped_fixtures_are_valid(self):
        """Test that the shipped Lie bialgebras pass their validator."""
        for name in ('abelian3', 'sl2_borel'):
            self.assertTrue(validate_lie_bialgebra(load_fixture(name)).passed, name)

    def test_fixture_matches_constants(self):
        """Test that the sl2_borel fixture has the expected structure constants."""
        self.assertEqual(load_fixture('sl2_borel').constants(), sl2_borel().constants())

    def test_missing_antisymmetric_partner(self):
        """Test that a bracket listed on one side only fails antisymmetry."""
        b = LieBialgebra.from_constants('bad', ['H', 'E'], bracket={('H', 'E'): {'E': 2}})
        report = validate_lie_bialgebra(b)
        self.assertEqual(report.status('bracket_antisymmetry'), 'fail')
        with self.assertRaises(InvalidStructure):
            require_valid(b)

    def test_broken_cocycle(self):
        """Test that a cobracket incompatible with the bracket fails the cocycle condition."""
        b = LieBialgebra.from_constants(
            'heisenberg', ['x', 'y', 'z'],
            bracket={('x', 'y'): {'z': 1}, ('y', 'x'): {'z': -1}},
            cobracket={'x': {('x', 'y'): 1, ('y', 'x'): -1}},
        )
        report = validate_lie_bialgebra(b)
        self.assertEqual(report.status('cocycle'), 'fail')
        self.assertIsNotNone(report['cocycle'].witness)

    def test_mutations_are_detected(self):
        """Test that 100 seeded single-entry mutations all fail validation."""
        rng = random.Random(0)
        for b in (load_fixture('abelian3'), sl2_borel()):
            for _ in range(100):
                mutated, info = mutate(b, rng)
                self.assertFalse(validate_lie_bialgebra(mutated).passed, info)


class DrinfeldDoubleTest(SimpleTestCase):
    """Test cases for the Drinfeld double."""

    def test_double_axioms(self):
        """Test the Manin triple axioms for the abelian and Borel fixtures."""
        for b in (load_fixture('abelian3'), sl2_borel()):
            double = drinfeld_double(b)
            self.assertEqual(double.space.dim, 2 * b.dim)
            report = validate_double(double)
            self.assertTrue(report.passed, report.failures())

    def test_pairing_is_nondegenerate(self):
        """Test that the pairing matrix has full rank."""
        double = drinfeld_double(sl2_borel())
        self.assertEqual(rank(pairing_matrix(double)), 4)

    def test_cobracket_restricts_to_b(self):
        """Test that the coboundary cobracket of the double restricts to δ on b."""
        report = validate_double(drinfeld_double(sl2_borel()))
        self.assertEqual(report.status('cobracket_restricts_to_b'), 'pass')

    def test_double_of_abelian_is_abelian(self):
        """Test that the double of an abelian Lie bialgebra with zero cobracket is abelian."""
        double = drinfeld_double(load_fixture('abelian3'))
        self.assertTrue(double.bracket.is_zero())
        self.assertTrue(double.cobracket.is_zero())


class SplitPairTest(SimpleTestCase):
    """Test cases for split pairs and their Manin inclusions."""

    def test_borel_pair(self):
        """Test the shipped pair kH ⊂ sl2_borel."""
        pair = load_fixture('borel_pair')
        self.assertEqual(pair.name, 'kH<sl2_borel')
        parabolic = parabolic_decomposition(pair)
        self.assertTrue(parabolic.report.passed, parabolic.report.failures())
        self.assertEqual(parabolic.m_minus.dim, 1)
        self.assertEqual(parabolic.p_plus.dim, 3)

    def test_manin_round_trip(self):
        """Test split pair -> Manin inclusion -> split pair."""
        pair = load_fixture('borel_pair')
        again = split_pair_from_manin(pair.sub, pair.amb, pair.manin)
        self.assertEqual(again.i, pair.i)
        self.assertEqual(again.p, pair.p)

    def test_manin_inclusion_is_a_lie_map(self):
        """Test that i ⊕ p* intertwines the brackets of the doubles."""
        pair = load_fixture('borel_pair')
        ga, gb = drinfeld_double(pair.sub), drinfeld_double(pair.amb)
        j = manin_inclusion(pair.sub, pair.amb, pair.i, pair.p, ga, gb)
        self.assertEqual(compose(j, ga.bracket), compose(gb.bracket, tensor(j, j)))
        self.assertEqual(j, pair.manin)

    def test_trivial_pairs(self):
        """Test the pairs (b, b) and (0, b)."""
        b = sl2_borel()
        for pair in (identity_pair(b), zero_pair(b)):
            self.assertTrue(parabolic_decomposition(pair).report.passed, pair.name)
        self.assertEqual(parabolic_decomposition(zero_pair(b)).m_minus.dim, 2)
        self.assertEqual(parabolic_decomposition(identity_pair(b)).m_minus.dim, 0)

    def test_not_split(self):
        """Test that p∘i ≠ id raises NotSplit with a witness."""
        b = sl2_borel()
        kH = LieBialgebra.from_constants('kH', ['H'])
        i = LinMap((kH.space,), (b.space,), {((0,), (0,)): 1})
        p = LinMap((b.space,), (kH.space,), {((0,), (0,)): 2})
        with self.assertRaises(NotSplit) as ctx:
            validate_split_pair(kH, b, i, p)
        self.assertIsNotNone(ctx.exception.witness)

    def test_p_is_a_morphism(self):
        """Test p∘[,] = [,]∘(p⊗p) on the shipped pair."""
        pair = load_fixture('borel_pair')
        self.assertTrue(compose(pair.p, pair.amb.bracket).is_zero())


class DirectSumTest(SimpleTestCase):
    """Test cases for c ⊕ d^op."""

    def test_sum_with_opposite(self):
        """Test that b ⊕ b^op is a Lie bialgebra with the second cobracket negated."""
        b = sl2_borel()
        s = direct_sum_with_op(b, b)
        self.assertEqual(s.dim, 4)
        self.assertTrue(validate_lie_bialgebra(s).passed)
        self.assertEqual(s.cobracket.entries[((3,), (3, 2))], -b.cobracket.entries[((1,), (1, 0))])
        self.assertEqual(s.space.labels[2], 'sl2_borel.H')

    def test_sum_with_zero(self):
        """Test that adding the zero Lie bialgebra changes nothing."""
        b = sl2_borel()
        zero = LieBialgebra.from_constants('0', [])
        self.assertEqual(direct_sum_with_op(b, zero).constants(), b.constants())
