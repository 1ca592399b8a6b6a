"""
Exact coefficient rings: rationals and truncated power series in hbar.

Rationals are ``fractions.Fraction``. ``TruncSeries`` is an element of
Q[h]/(h^(N+1)) backed by a sympy ``ring('h', QQ)`` polynomial; products and
inverses go through ``sympy.polys.ring_series``. It mixes freely with
``int`` and ``Fraction`` scalars but refuses to combine with a series of a
different order.
"""
import math
from fractions import Fraction

from sympy import QQ
from sympy.polys.ring_series import rs_mul, rs_series_inversion, rs_trunc
from sympy.polys.rings import ring

from .exceptions import NotAUnit, OrderMismatch

SCALARS = (int, Fraction)

HBAR_RING, HBAR = ring('h', QQ)


def to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value):
    return Fraction(int(value.numerator), int(value.denominator))


class TruncSeries:
    """Element of Q[h]/(h^(order+1)); ``coeffs[i]`` is the coefficient of h^i."""

    __slots__ = ('order', 'poly')

    def __init__(self, order, coeffs):
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = tuple(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError(
                f"expected {order + 1} coefficients, got {len(coeffs)}"
            )
        terms = {(i,): to_qq(c) for i, c in enumerate(coeffs) if c}
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, 'poly', HBAR_RING.from_dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_poly(cls, order, poly):
        """Wrap a ring element, dropping powers above ``order``."""
        series = cls.__new__(cls)
        object.__setattr__(series, 'order', order)
        object.__setattr__(series, 'poly', rs_trunc(poly, HBAR, order + 1))
        return series

    @classmethod
    def constant(cls, order, value=0):
        return cls.from_poly(order, HBAR_RING(to_qq(value)))

    @classmethod
    def hbar(cls, order, power=1):
        """The monomial h^power (zero when power exceeds the order)."""
        return cls.from_poly(order, HBAR ** power)

    @classmethod
    def from_terms(cls, order, terms):
        """Build from a mapping {power: coefficient}; powers above order drop."""
        poly = HBAR_RING.zero
        for power, value in terms.items():
            if power <= order:
                poly += HBAR ** power * to_qq(value)
        return cls.from_poly(order, poly)

    @property
    def coeffs(self):
        return tuple(self.coefficient(i) for i in range(self.order + 1))

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            if other.order != self.order:
                raise OrderMismatch(
                    f"cannot combine series of order {self.order} and {other.order}"
                )
            return other
        if isinstance(other, SCALARS):
            return TruncSeries.constant(self.order, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TruncSeries.from_poly(self.order, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries.from_poly(self.order, -self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TruncSeries.from_poly(self.order, self.poly - other.poly)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, SCALARS):
            return TruncSeries.from_poly(self.order, self.poly.mul_ground(to_qq(other)))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return TruncSeries.from_poly(self.order, rs_mul(self.poly, other.poly, HBAR, self.order + 1))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SCALARS):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.invert()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.invert() ** (-exponent)
        result = TruncSeries.constant(self.order, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, SCALARS):
            return self.poly == HBAR_RING(to_qq(other))
        if isinstance(other, TruncSeries):
            return self.order == other.order and self.poly == other.poly
        return NotImplemented

    def __hash__(self):
        if self.poly.degree() <= 0:
            return hash(self.coefficient(0))
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return bool(self.poly)

    def __repr__(self):
        return f"TruncSeries({self.order}, {format_series(self)!r})"

    def invert(self):
        """Inverse by Newton iteration; requires a unit constant term."""
        if not self.coefficient(0):
            raise NotAUnit(f"series {format_series(self)} has zero constant term")
        return TruncSeries.from_poly(
            self.order, rs_series_inversion(self.poly, HBAR, self.order + 1)
        )

    def valuation(self):
        """Smallest power with non-zero coefficient; ``math.inf`` for zero."""
        if not self.poly:
            return math.inf
        return min(monom[0] for monom in self.poly)

    def coefficient(self, power):
        if 0 <= power <= self.order:
            return from_qq(self.poly.get((power,), QQ.zero))
        return Fraction(0)

    def truncate(self, order):
        """Reduce to a lower order (or pad to a higher one with zeros)."""
        return TruncSeries.from_poly(order, self.poly)

    def shift(self, power=1):
        """Multiply by h^power."""
        return TruncSeries.from_poly(self.order, self.poly * HBAR ** power)


def series_arith(a, b, op):
    """Add, subtract or multiply two series of equal order."""
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise ValueError(f"Unknown series operation: {op}")


def series_invert(a):
    return a.invert()


def hbar_valuation(a):
    """Valuation of a coefficient; rationals have valuation 0 unless zero."""
    if isinstance(a, TruncSeries):
        return a.valuation()
    return math.inf if a == 0 else 0


def ring_order(value):
    """The hbar order of a coefficient, or None for a plain rational."""
    if isinstance(value, TruncSeries):
        return value.order
    return None


def lift(value, order):
    """View a coefficient inside Q[h]/(h^(order+1))."""
    if isinstance(value, TruncSeries):
        if value.order != order:
            raise OrderMismatch(f"cannot lift order {value.order} to {order}")
        return value
    return TruncSeries.constant(order, value)


def hbar_part(value, power):
    """Rational coefficient of h^power in a coefficient."""
    if isinstance(value, TruncSeries):
        return value.coefficient(power)
    return Fraction(value) if power == 0 else Fraction(0)


def mod_hbar(value):
    return hbar_part(value, 0)


def parse_rational(text):
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Invalid rational: {text!r}") from e


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_series(value):
    """Human-readable form such as ``1 - h + 1/2*h^2``."""
    terms = []
    for power, c in enumerate(value.coeffs):
        if not c:
            continue
        mag = format_rational(abs(c))
        if power == 0:
            body = mag
        else:
            mono = 'h' if power == 1 else f'h^{power}'
            body = mono if mag == '1' else f'{mag}*{mono}'
        terms.append(('-' if c < 0 else '+', body))
    if not terms:
        return '0'
    sign, body = terms[0]
    text = ('-' if sign == '-' else '') + body
    for sign, body in terms[1:]:
        text += f' {sign} {body}'
    return text


def format_coefficient(value):
    """Serialize a coefficient: a rational string or a list of them."""
    if isinstance(value, TruncSeries):
        return [format_rational(c) for c in value.coeffs]
    return format_rational(value)


def parse_coefficient(data):
    if isinstance(data, (list, tuple)):
        coeffs = [parse_rational(c) for c in data]
        return TruncSeries(len(coeffs) - 1, coeffs)
    return parse_rational(data)
