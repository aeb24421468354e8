"""Sparse bivariate polynomials with cyclotomic coefficients.

ParamPoly carries the evaluation parameters (a, b) of the two evaluation modules; LaurentPoly
carries the spectral variables through x = u⁻¹ and y = v⁻¹. Both store a dict mapping exponent
pairs to nonzero CycNum coefficients, so structural equality is field equality.
"""

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Tuple

from models.cyclotomic import CycNum, parse_rational

Exponent = Tuple[int, int]


class BivariatePoly:
    VARIABLES: Tuple[str, str] = ('p', 'q')

    __slots__ = ('_order', '_terms')

    def __init__(self, order: int, terms: Mapping[Exponent, object] = None):
        self._order = order
        self._terms: Dict[Exponent, CycNum] = {}
        for exponent, coeff in (terms or {}).items():
            d1, d2 = exponent
            if d1 < 0 or d2 < 0:
                raise ValueError(f"Negative exponent {exponent} in {type(self).__name__}")
            coeff = CycNum.coerce(order, coeff)
            if coeff:
                self._terms[(int(d1), int(d2))] = coeff

    @classmethod
    def _make(cls, order: int, terms: Dict[Exponent, CycNum]):
        poly = object.__new__(cls)
        poly._order = order
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls, order: int):
        return cls._make(order, {})

    @classmethod
    def constant(cls, order: int, value):
        return cls(order, {(0, 0): value})

    @classmethod
    def monomial(cls, order: int, d1: int, d2: int, coeff=1):
        return cls(order, {(d1, d2): coeff})

    @property
    def order(self) -> int:
        return self._order

    @property
    def terms(self) -> Dict[Exponent, CycNum]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, CycNum]]:
        return iter(sorted(self._terms.items()))

    def coefficient(self, d1: int, d2: int) -> CycNum:
        return self._terms.get((d1, d2), CycNum.zero(self._order))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(exponent == (0, 0) for exponent in self._terms)

    def constant_term(self) -> CycNum:
        return self.coefficient(0, 0)

    def degree(self) -> Tuple[int, int]:
        """Largest exponent of each variable separately; (0, 0) for constants and zero."""
        if not self._terms:
            return (0, 0)
        return (max(e[0] for e in self._terms), max(e[1] for e in self._terms))

    def total_degree(self) -> int:
        return max((e[0] + e[1] for e in self._terms), default=0)

    def _lift(self, other):
        if isinstance(other, BivariatePoly):
            if type(other) is not type(self):
                raise TypeError(
                    f"Cannot combine {type(self).__name__} with {type(other).__name__}")
            if other._order != self._order:
                raise ValueError(f"Cannot mix Q(ω_{self._order}) with Q(ω_{other._order})")
            return other
        if isinstance(other, (CycNum, int, Fraction)):
            return type(self).constant(self._order, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        terms = dict(self._terms)
        for exponent, coeff in other._terms.items():
            total = terms.get(exponent)
            total = coeff if total is None else total + coeff
            if total:
                terms[exponent] = total
            else:
                terms.pop(exponent, None)
        return type(self)._make(self._order, terms)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._make(self._order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (CycNum, int, Fraction)):
            if not self._terms or not other:
                return type(self)._make(self._order, {})
            terms = {}
            for exponent, coeff in self._terms.items():
                product = coeff * other
                if product:
                    terms[exponent] = product
            return type(self)._make(self._order, terms)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return type(self)._make(self._order, {})
        terms: Dict[Exponent, CycNum] = {}
        for (a1, a2), left in self._terms.items():
            for (b1, b2), right in other._terms.items():
                exponent = (a1 + b1, a2 + b2)
                product = left * right
                if exponent in terms:
                    terms[exponent] = terms[exponent] + product
                else:
                    terms[exponent] = product
        return type(self)._make(self._order, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (CycNum, int, Fraction)):
            return self * CycNum.coerce(self._order, other).inverse()
        return NotImplemented

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("Polynomials only take nonnegative powers")
        result = type(self).constant(self._order, 1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePoly):
            return (type(other) is type(self) and other._order == self._order
                    and other._terms == self._terms)
        if isinstance(other, (CycNum, int, Fraction)):
            if not other:
                return not self._terms
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_constant():
            return hash(self.constant_term())
        return hash((type(self).__name__, self._order, frozenset(self._terms.items())))

    def substitute(self, first, second) -> CycNum:
        """Evaluate at exact values of both variables."""
        first = CycNum.coerce(self._order, first)
        second = CycNum.coerce(self._order, second)
        total = CycNum.zero(self._order)
        for (d1, d2), coeff in self._terms.items():
            total = total + coeff * first ** d1 * second ** d2
        return total

    def ratio_to(self, other: 'BivariatePoly'):
        """Constant c with self == c * other, or None."""
        if not other._terms:
            return None
        if not self._terms:
            return CycNum.zero(self._order)
        if set(self._terms) != set(other._terms):
            return None
        exponent = next(iter(other._terms))
        ratio = self._terms[exponent] / other._terms[exponent]
        for exp, coeff in other._terms.items():
            if coeff * ratio != self._terms[exp]:
                return None
        return ratio

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        v1, v2 = self.VARIABLES
        pieces = []
        for (d1, d2), coeff in sorted(self._terms.items(), reverse=True):
            monomial = ''.join(
                name if power == 1 else f'{name}^{power}'
                for name, power in ((v1, d1), (v2, d2)) if power)
            text = str(coeff)
            if not monomial:
                pieces.append(text)
            elif coeff == 1:
                pieces.append(monomial)
            elif coeff == -1:
                pieces.append(f'-{monomial}')
            else:
                pieces.append(f'({text})*{monomial}')
        return ' + '.join(pieces).replace('+ -', '- ')

    def to_json(self) -> Dict:
        v1, v2 = self.VARIABLES
        return {'terms': [{v1: d1, v2: d2, 'c': coeff.to_json()}
                          for (d1, d2), coeff in self.items()]}

    @classmethod
    def from_json(cls, payload: Dict, order: int = None):
        v1, v2 = cls.VARIABLES
        terms = {}
        for term in payload['terms']:
            coeff = CycNum.from_json(term['c'])
            if order is not None and coeff.order != order:
                raise ValueError(f"Coefficient in Q(ω_{coeff.order}) inside a Q(ω_{order}) polynomial")
            order = coeff.order
            terms[(int(term[v1]), int(term[v2]))] = coeff
        if order is None:
            raise ValueError("Cannot infer the field of an empty polynomial without 'order'")
        return cls(order, terms)


class ParamPoly(BivariatePoly):
    """Polynomial in the evaluation parameters a (first module) and b (dual module)."""

    VARIABLES = ('a', 'b')
    __slots__ = ()

    @classmethod
    def a(cls, order: int) -> 'ParamPoly':
        return cls.monomial(order, 1, 0)

    @classmethod
    def b(cls, order: int) -> 'ParamPoly':
        return cls.monomial(order, 0, 1)

    def specialize(self, a, b) -> CycNum:
        return self.substitute(parse_rational(a) if isinstance(a, str) else a,
                               parse_rational(b) if isinstance(b, str) else b)


class LaurentPoly(BivariatePoly):
    """Polynomial in x = u⁻¹ and y = v⁻¹."""

    VARIABLES = ('x', 'y')
    __slots__ = ()

    @classmethod
    def x(cls, order: int) -> 'LaurentPoly':
        return cls.monomial(order, 1, 0)

    @classmethod
    def y(cls, order: int) -> 'LaurentPoly':
        return cls.monomial(order, 0, 1)

    def swap_variables(self) -> 'LaurentPoly':
        """The u ↔ v exchange."""
        return LaurentPoly._make(self._order, {(d2, d1): c for (d1, d2), c in self._terms.items()})
