"""
Tests for rationals and truncated power series.
"""
import random
from fractions import Fraction

from django.test import SimpleTestCase
from sympy.polys.ring_series import rs_series_inversion

from quantisation.exceptions import NotAUnit, OrderMismatch
from quantisation.scalar import (
    HBAR, HBAR_RING, TruncSeries, format_coefficient, format_series, hbar_part, hbar_valuation, lift, mod_hbar,
    parse_coefficient, parse_rational, series_arith, series_invert,
)


def random_series(rng, order, unit=False):
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(order + 1)]
    if unit and coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    return TruncSeries(order, coeffs)


class TruncSeriesTest(SimpleTestCase):
    """Test cases for TruncSeries arithmetic."""

    def test_hbar_power_vanishes_above_order(self):
        """Test that h^(N+1) is zero in Q[h]/(h^(N+1))."""
        h = TruncSeries.hbar(2)
        self.assertEqual(h * h, TruncSeries.hbar(2, 2))
        self.assertFalse(h ** 3)

    def test_inverse_of_one_plus_h(self):
        """Test (1 + h)^-1 = 1 - h + h^2 at order 2."""
        x = TruncSeries(2, (1, 1, 0))
        self.assertEqual(x.invert(), TruncSeries(2, (1, -1, 1)))
        self.assertEqual(x * x.invert(), 1)

    def test_invert_requires_unit(self):
        """Test that a series with zero constant term is not invertible."""
        with self.assertRaises(NotAUnit):
            TruncSeries.hbar(1).invert()

    def test_order_mismatch(self):
        """Test that series of different orders do not combine."""
        with self.assertRaises(OrderMismatch):
            TruncSeries.hbar(1) + TruncSeries.hbar(2)

    def test_scalars_mix_in(self):
        """Test mixing with int and Fraction scalars."""
        x = TruncSeries(1, (2, 3))
        self.assertEqual(x * Fraction(1, 2), TruncSeries(1, (1, Fraction(3, 2))))
        self.assertEqual(1 - x, TruncSeries(1, (-1, -3)))
        self.assertEqual(TruncSeries.constant(1, 5), 5)

    def test_ring_axioms_random(self):
        """Test distributivity, associativity and inverses on seeded random series."""
        rng = random.Random(7)
        for _ in range(50):
            a, b, c = (random_series(rng, 3) for _ in range(3))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual((a * b) * c, a * (b * c))
            u = random_series(rng, 3, unit=True)
            self.assertEqual(u * u.invert(), 1)

    def test_valuation_and_parts(self):
        """Test valuation, coefficients and reduction mod h."""
        x = TruncSeries(2, (0, 0, 3))
        self.assertEqual(x.valuation(), 2)
        self.assertEqual(hbar_valuation(x), 2)
        self.assertEqual(hbar_part(x, 2), 3)
        self.assertEqual(mod_hbar(x), 0)
        self.assertEqual(hbar_part(Fraction(4), 0), 4)
        self.assertEqual(hbar_part(Fraction(4), 1), 0)
        self.assertEqual(x.shift(), TruncSeries(2, (0, 0, 0)))

    def test_backed_by_sympy_ring(self):
        """Test that products and inverses agree with the sympy series ring."""
        x = TruncSeries(3, (2, 1, 0, Fraction(1, 3)))
        self.assertIs(x.poly.ring, HBAR_RING)
        expected = rs_series_inversion(x.poly, HBAR, 4)
        self.assertEqual(x.invert().poly, expected)
        self.assertEqual(TruncSeries(0, (4,)).invert(), Fraction(1, 4))
        self.assertEqual(TruncSeries.from_poly(1, (1 + HBAR) ** 3), TruncSeries(1, (1, 3)))
        with self.assertRaises(AttributeError):
            x.order = 2

    def test_lift(self):
        """Test viewing a rational inside the truncated ring."""
        self.assertEqual(lift(Fraction(2), 1), TruncSeries(1, (2, 0)))
        with self.assertRaises(OrderMismatch):
            lift(TruncSeries.hbar(1), 2)


class CoefficientFormatTest(SimpleTestCase):
    """Test cases for the textual coefficient format."""

    def test_parse_rational(self):
        """Test rational strings."""
        self.assertEqual(parse_rational('-3/4'), Fraction(-3, 4))
        self.assertEqual(parse_rational(' 7 '), 7)
        with self.assertRaises(ValueError):
            parse_rational('1/0')
        with self.assertRaises(ValueError):
            parse_rational('x')

    def test_coefficient_round_trip(self):
        """Test that parse inverts format for rationals and series."""
        for value in (Fraction(5, 3), Fraction(-2), TruncSeries(2, (1, Fraction(-1, 2), 0))):
            self.assertEqual(parse_coefficient(format_coefficient(value)), value)
        self.assertEqual(format_coefficient(TruncSeries(1, (0, Fraction(1, 2)))), ['0', '1/2'])

    def test_format_series(self):
        """Test the human-readable series form."""
        self.assertEqual(format_series(TruncSeries(2, (1, -1, Fraction(1, 2)))), '1 - h + 1/2*h^2')
        self.assertEqual(format_series(TruncSeries(1, (0, 0))), '0')

    def test_series_functions(self):
        """Test the functional forms of the ring operations."""
        a, b = TruncSeries(2, (1, 2, 3)), TruncSeries(2, (0, 1, -1))
        self.assertEqual(series_arith(a, b, 'add'), a + b)
        self.assertEqual(series_arith(a, b, 'sub'), a - b)
        self.assertEqual(series_arith(a, b, 'mul'), TruncSeries(2, (0, 1, 1)))
        self.assertEqual(series_arith(a, series_invert(a), 'mul'), TruncSeries.constant(2, 1))
        with self.assertRaises(ValueError):
            series_arith(a, b, 'div')
