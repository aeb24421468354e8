"""Exact arithmetic in the cyclotomic field Q(ω_N).

Elements are stored as coefficient tuples in the power basis 1, ω, ..., ω^(φ(N)-1),
reduced modulo the N-th cyclotomic polynomial, so equal field elements always have
identical coefficient tuples.
"""

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

Rational = Fraction

_RATIONAL_PATTERN = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse "p/q" or an integer string into a Fraction; decimals are rejected."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    match = _RATIONAL_PATTERN.match(str(text))
    if not match:
        raise ValueError(f"Not an exact rational (expected 'p/q' or an integer): {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ZeroDivisionError(f"Zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def rational_to_json(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


# Dense polynomials over Q, coefficient lists from low to high degree.

def _trim(poly: List) -> List:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def poly_divmod(numerator: Sequence, denominator: Sequence) -> Tuple[List, List]:
    num = _trim([Fraction(c) for c in numerator])
    den = _trim([Fraction(c) for c in denominator])
    if not den:
        raise ZeroDivisionError("Polynomial division by zero")
    quotient = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        factor = num[-1] / lead
        quotient[shift] = factor
        for index, coeff in enumerate(den):
            num[index + shift] -= factor * coeff
        num.pop()
        _trim(num)
    return _trim(quotient), num


def _poly_mul(left: Sequence, right: Sequence) -> List:
    if not left or not right:
        return []
    out = [Fraction(0)] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if a:
            for j, b in enumerate(right):
                if b:
                    out[i + j] += a * b
    return _trim(out)


def _poly_sub(left: Sequence, right: Sequence) -> List:
    size = max(len(left), len(right))
    out = [Fraction(0)] * size
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i] -= c
    return _trim(out)


def _poly_xgcd(left: Sequence, right: Sequence) -> Tuple[List, List, List]:
    """Extended Euclid over Q[x]: returns (g, s, t) with s*left + t*right = g."""
    old_r, r = _trim([Fraction(c) for c in left]), _trim([Fraction(c) for c in right])
    old_s, s = [Fraction(1)], []
    old_t, t = [], [Fraction(1)]
    while r:
        quotient, remainder = poly_divmod(old_r, r)
        old_r, r = r, remainder
        old_s, s = s, _poly_sub(old_s, _poly_mul(quotient, s))
        old_t, t = t, _poly_sub(old_t, _poly_mul(quotient, t))
    return old_r, old_s, old_t


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[Fraction, ...]:
    """Φ_n as a coefficient tuple (low to high degree), by dividing x^n - 1 by Φ_d for d | n, d < n."""
    if n < 1:
        raise ValueError(f"Cyclotomic index must be positive, got {n}")
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in _divisors(n)[:-1]:
        poly, remainder = poly_divmod(poly, cyclotomic_polynomial(d))
        if remainder:
            raise ArithmeticError(f"Φ_{d} does not divide x^{n} - 1")
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_rows(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Power-basis coordinates of ω^d for 0 <= d < max(n, 2φ(n) - 1); all integral."""
    phi = euler_phi(n)
    phi_poly = [int(c) for c in cyclotomic_polynomial(n)]
    rows = []
    current = [0] * phi
    current[0] = 1
    for _ in range(max(n, 2 * phi - 1)):
        rows.append(tuple(current))
        # multiply by ω, then fold the x^phi term back with Φ_n (monic)
        carry = current[-1]
        current = [0] + current[:-1]
        if carry:
            for index in range(phi):
                current[index] -= carry * phi_poly[index]
    return tuple(rows)


class CycNum:
    """An element Σ c_d ω^d of Q(ω_N). Immutable."""

    __slots__ = ('_order', '_coeffs')

    def __init__(self, order: int, coeffs: Sequence):
        if order < 1:
            raise ValueError(f"Cyclotomic order must be positive, got {order}")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(order):
            raise ValueError(
                f"Q(ω_{order}) needs {euler_phi(order)} coefficients, got {len(coeffs)}")
        self._order = order
        self._coeffs = coeffs

    @classmethod
    def _make(cls, order: int, coeffs) -> 'CycNum':
        element = object.__new__(cls)
        element._order = order
        element._coeffs = tuple(coeffs)
        return element

    @classmethod
    def zero(cls, order: int) -> 'CycNum':
        return _zero(order)

    @classmethod
    def one(cls, order: int) -> 'CycNum':
        return cls.rational(order, 1)

    @classmethod
    def rational(cls, order: int, value) -> 'CycNum':
        coeffs = [Fraction(0)] * euler_phi(order)
        coeffs[0] = Fraction(value)
        return cls._make(order, coeffs)

    @classmethod
    def coerce(cls, order: int, value) -> 'CycNum':
        if isinstance(value, CycNum):
            if value._order != order:
                raise ValueError(f"Cannot mix Q(ω_{value._order}) with Q(ω_{order})")
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(order, value)
        raise TypeError(f"Cannot interpret {type(value).__name__} as an element of Q(ω_{order})")

    @property
    def order(self) -> int:
        return self._order

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_rational(self) -> bool:
        return not any(self._coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._coeffs[0])

    def __bool__(self) -> bool:
        return any(self._coeffs)

    def _other(self, other):
        if isinstance(other, CycNum):
            if other._order != self._order:
                raise ValueError(f"Cannot mix Q(ω_{self._order}) with Q(ω_{other._order})")
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.rational(self._order, other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not other:
            return self
        if not self:
            return other
        return CycNum._make(self._order, [a + b for a, b in zip(self._coeffs, other._coeffs)])

    __radd__ = __add__

    def __neg__(self) -> 'CycNum':
        return CycNum._make(self._order, [-a for a in self._coeffs])

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not other:
            return self
        return CycNum._make(self._order, [a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other or not self:
                return _zero(self._order)
            return CycNum._make(self._order, [a * other for a in self._coeffs])
        other = self._other(other)
        if other is None:
            return NotImplemented
        left, right = self._coeffs, other._coeffs
        if not any(left) or not any(right):
            return _zero(self._order)
        phi = len(left)
        if phi == 1:
            return CycNum._make(self._order, (left[0] * right[0],))
        product = [0] * (2 * phi - 1)
        for i, a in enumerate(left):
            if a:
                for j, b in enumerate(right):
                    if b:
                        product[i + j] += a * b
        return CycNum._make(self._order, _reduce(self._order, product))

    __rmul__ = __mul__

    def inverse(self) -> 'CycNum':
        if not self:
            raise ZeroDivisionError("Inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CycNum.rational(self._order, 1 / Fraction(self._coeffs[0]))
        g, s, _ = _poly_xgcd(self._coeffs, cyclotomic_polynomial(self._order))
        # Φ_N is irreducible, so the gcd is a nonzero constant
        scale = 1 / g[0]
        return CycNum._make(self._order, _reduce(self._order, [c * scale for c in s]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> 'CycNum':
        if exponent < 0:
            return self.inverse() ** -exponent
        result = CycNum.one(self._order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> 'CycNum':
        return conjugate(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self._order == other._order and self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self._coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self._coeffs[0])
        return hash((self._order, self._coeffs))

    def __repr__(self) -> str:
        return f"CycNum({self._order}, {[str(c) for c in self._coeffs]})"

    def __str__(self) -> str:
        terms = []
        for degree, coeff in enumerate(self._coeffs):
            if not coeff:
                continue
            if degree == 0:
                terms.append(str(coeff))
            else:
                power = 'ω' if degree == 1 else f'ω^{degree}'
                terms.append(power if coeff == 1 else f'-{power}' if coeff == -1 else f'{coeff}*{power}')
        if not terms:
            return '0'
        text = ' + '.join(f'({t})' if '/' in t and len(terms) > 1 else t for t in terms)
        return text.replace('+ -', '- ')

    def to_json(self) -> Dict:
        return {'n': self._order, 'coeffs': [rational_to_json(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, payload: Dict) -> 'CycNum':
        return cls(int(payload['n']), [parse_rational(c) for c in payload['coeffs']])


def _reduce(order: int, product: Sequence) -> List:
    phi = euler_phi(order)
    coeffs = list(product[:phi]) + [0] * max(phi - len(product), 0)
    if len(product) > phi:
        rows = _power_rows(order)
        for degree in range(phi, len(product)):
            value = product[degree]
            if value:
                row = rows[degree]
                for index in range(phi):
                    if row[index]:
                        coeffs[index] += value * row[index]
    return [Fraction(c) for c in coeffs]


@lru_cache(maxsize=None)
def _zero(order: int) -> CycNum:
    return CycNum._make(order, [Fraction(0)] * euler_phi(order))


@lru_cache(maxsize=None)
def omega_power(n: int, k: int) -> CycNum:
    """ω^(k mod n) in Q(ω_n)."""
    if n < 2:
        raise ValueError(f"omega_power needs N >= 2, got {n}")
    return CycNum._make(n, [Fraction(c) for c in _power_rows(n)[k % n]])


def conjugate(x: CycNum) -> CycNum:
    """The automorphism ω ↦ ω^(N-1) (complex conjugation on Q(ω_N))."""
    n = x.order
    if x.is_rational():
        return x
    result = _zero(n)
    for degree, coeff in enumerate(x.coeffs):
        if coeff:
            result = result + omega_power(n, -degree) * coeff
    return result


def geometric_character_sum(n: int, k: int) -> CycNum:
    """Σ_{i=0}^{N-1} ω^(ik), summed term by term (N if N | k, else 0)."""
    total = _zero(n)
    for i in range(n):
        total = total + omega_power(n, i * k)
    return total
