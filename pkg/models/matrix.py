"""Dense exact matrices over CycNum, ParamPoly or LaurentPoly.

Entries live in a numpy object array so block operations (kron, reshapes, slicing) come from
numpy, while every scalar operation stays exact. The scalar domain of a result is the wider of
the operand domains: CycNum widens to either polynomial domain, ParamPoly and LaurentPoly never mix.
"""

import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from models.cyclotomic import CycNum, conjugate
from models.polynomial import BivariatePoly, LaurentPoly, ParamPoly

logger = logging.getLogger(__name__)

SCALAR_DOMAINS = (CycNum, ParamPoly, LaurentPoly)


class DimensionMismatchError(ValueError):
    """Raised when operand shapes are incompatible."""


def widest_domain(*domains):
    polys = {d for d in domains if d is not CycNum}
    if len(polys) > 1:
        raise TypeError(f"Cannot mix scalar domains {sorted(d.__name__ for d in polys)}")
    return polys.pop() if polys else CycNum


def scalar_domain(value):
    if isinstance(value, BivariatePoly):
        return type(value)
    if isinstance(value, (CycNum, int, Fraction)):
        return CycNum
    raise TypeError(f"Unsupported matrix scalar {type(value).__name__}")


def zero_of(domain, order: int):
    return domain.zero(order)


def lift(value, domain, order: int):
    """Coerce an int/Fraction/CycNum (or an entry already in ``domain``) into ``domain``."""
    if domain is CycNum:
        return CycNum.coerce(order, value)
    if isinstance(value, domain):
        return value
    if isinstance(value, BivariatePoly):
        raise TypeError(f"Cannot place {type(value).__name__} into a {domain.__name__} matrix")
    return domain.constant(order, value)


_is_nonzero = np.frompyfunc(bool, 1, 1)


def _lift_array(data: np.ndarray, domain, order: int) -> np.ndarray:
    converted = np.empty(data.shape, dtype=object)
    for index, value in np.ndenumerate(data):
        converted[index] = lift(value, domain, order)
    return converted


class Matrix:
    """Immutable dense matrix over one exact scalar domain."""

    __slots__ = ('_data', '_order', '_domain')

    def __init__(self, order: int, rows: Sequence[Sequence], domain=None):
        rows = [list(row) for row in rows]
        if not rows or not rows[0]:
            raise DimensionMismatchError("Matrices need at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatchError("Ragged rows")
        if domain is None:
            domain = widest_domain(*(scalar_domain(v) for row in rows for v in row))
        data = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                data[i, j] = lift(value, domain, order)
        self._data = data
        self._order = order
        self._domain = domain

    @classmethod
    def _wrap(cls, order: int, data: np.ndarray, domain) -> 'Matrix':
        matrix = object.__new__(cls)
        matrix._data = data
        matrix._order = order
        matrix._domain = domain
        return matrix

    @classmethod
    def zeros(cls, order: int, rows: int, cols: int = None, domain=CycNum) -> 'Matrix':
        cols = rows if cols is None else cols
        data = np.empty((rows, cols), dtype=object)
        data.fill(zero_of(domain, order))
        return cls._wrap(order, data, domain)

    @classmethod
    def identity(cls, order: int, size: int, domain=CycNum) -> 'Matrix':
        matrix = cls.zeros(order, size, size, domain)
        one = lift(1, domain, order)
        for index in range(size):
            matrix._data[index, index] = one
        return matrix

    @classmethod
    def from_entries(cls, order: int, rows: int, cols: int, entries: Dict[Tuple[int, int], object],
                     domain=CycNum) -> 'Matrix':
        """Sparse constructor: 0-based (row, col) -> value, everything else zero."""
        matrix = cls.zeros(order, rows, cols, domain)
        for (i, j), value in entries.items():
            if not 0 <= i < rows or not 0 <= j < cols:
                raise DimensionMismatchError(f"Entry {(i, j)} outside a {rows}x{cols} matrix")
            matrix._data[i, j] = lift(value, domain, order) + matrix._data[i, j]
        return matrix

    @property
    def order(self) -> int:
        return self._order

    @property
    def domain(self):
        return self._domain

    @property
    def shape(self) -> Tuple[int, int]:
        return self._data.shape

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    def __getitem__(self, index: Tuple[int, int]):
        return self._data[index]

    def entries(self) -> List:
        """Row-major entry list."""
        return list(self._data.flat)

    def row(self, i: int) -> Tuple:
        return tuple(self._data[i, :])

    def column(self, j: int) -> Tuple:
        return tuple(self._data[:, j])

    def _check_same_shape(self, other: 'Matrix', what: str):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"Cannot {what} {self.shape} and {other.shape} matrices")
        if self._order != other._order:
            raise ValueError(f"Cannot mix Q(ω_{self._order}) with Q(ω_{other._order}) matrices")

    def _widened(self, domain) -> np.ndarray:
        if domain is self._domain:
            return self._data
        return _lift_array(self._data, domain, self._order)

    def astype(self, domain) -> 'Matrix':
        target = widest_domain(domain, self._domain)
        return Matrix._wrap(self._order, self._widened(target), target)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other, 'add')
        domain = widest_domain(self._domain, other._domain)
        return Matrix._wrap(self._order, self._widened(domain) + other._widened(domain), domain)

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_same_shape(other, 'subtract')
        domain = widest_domain(self._domain, other._domain)
        return Matrix._wrap(self._order, self._widened(domain) - other._widened(domain), domain)

    def __neg__(self) -> 'Matrix':
        return Matrix._wrap(self._order, -self._data, self._domain)

    def scale(self, scalar) -> 'Matrix':
        domain = widest_domain(self._domain, scalar_domain(scalar))
        scalar = lift(scalar, domain, self._order)
        data = np.empty(self._data.shape, dtype=object)
        for index, value in np.ndenumerate(self._data):
            data[index] = lift(value * scalar, domain, self._order)
        return Matrix._wrap(self._order, data, domain)

    def __mul__(self, scalar):
        if isinstance(scalar, Matrix):
            raise TypeError("Use '@' for matrix products")
        if isinstance(scalar, (CycNum, BivariatePoly, int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatchError(f"Cannot multiply {self.shape} by {other.shape}")
        if self._order != other._order:
            raise ValueError(f"Cannot mix Q(ω_{self._order}) with Q(ω_{other._order}) matrices")
        domain = widest_domain(self._domain, other._domain)
        # sparse-aware product: the operators of this package are mostly zeros
        right_rows = [[(j, value) for j, value in enumerate(other._data[k, :]) if value]
                      for k in range(other.rows)]
        zero = zero_of(domain, self._order)
        data = np.empty((self.rows, other.cols), dtype=object)
        data.fill(zero)
        for i in range(self.rows):
            accumulator: Dict[int, object] = {}
            for k, left in enumerate(self._data[i, :]):
                if not left:
                    continue
                for j, right in right_rows[k]:
                    product = left * right
                    accumulator[j] = accumulator[j] + product if j in accumulator else product
            for j, value in accumulator.items():
                data[i, j] = lift(value, domain, self._order)
        return Matrix._wrap(self._order, data, domain)

    def kron(self, other: 'Matrix') -> 'Matrix':
        """Kronecker product with (self)_ij * other blocks."""
        if self._order != other._order:
            raise ValueError(f"Cannot mix Q(ω_{self._order}) with Q(ω_{other._order}) matrices")
        domain = widest_domain(self._domain, other._domain)
        r1, c1 = self.shape
        r2, c2 = other.shape
        outer = np.multiply.outer(self._data, other._data)
        data = outer.transpose(0, 2, 1, 3).reshape(r1 * r2, c1 * c2)
        if domain is not CycNum:
            data = _lift_array(data, domain, self._order)
        return Matrix._wrap(self._order, data, domain)

    def transpose(self) -> 'Matrix':
        return Matrix._wrap(self._order, self._data.T.copy(), self._domain)

    @property
    def T(self) -> 'Matrix':
        return self.transpose()

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatchError(f"Trace of a non-square {self.shape} matrix")
        total = zero_of(self._domain, self._order)
        for value in self._data.diagonal():
            total = total + value
        return total

    def map(self, func: Callable, domain=None) -> 'Matrix':
        data = np.empty(self._data.shape, dtype=object)
        for index, value in np.ndenumerate(self._data):
            data[index] = func(value)
        if domain is None:
            domain = widest_domain(*(scalar_domain(v) for v in data.flat))
        for index, value in np.ndenumerate(data):
            data[index] = lift(value, domain, self._order)
        return Matrix._wrap(self._order, data, domain)

    def conjugate_entries(self) -> 'Matrix':
        if self._domain is not CycNum:
            raise TypeError("Entrywise conjugation needs CycNum entries")
        return self.map(conjugate, CycNum)

    def adjoint(self) -> 'Matrix':
        """Conjugate transpose under ω ↦ ω^(N-1)."""
        return self.conjugate_entries().transpose()

    def substitute(self, a, b) -> 'Matrix':
        """Specialise ParamPoly/LaurentPoly entries at exact values."""
        if self._domain is CycNum:
            return self
        return self.map(lambda value: value.substitute(a, b), CycNum)

    def apply(self, vector: Sequence) -> Tuple:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise DimensionMismatchError(
                f"Cannot apply a {self.shape} matrix to a vector of length {len(vector)}")
        domain = widest_domain(*(scalar_domain(v) for v in vector))
        data = np.empty((len(vector), 1), dtype=object)
        for index, value in enumerate(vector):
            data[index, 0] = lift(value, domain, self._order)
        column = Matrix._wrap(self._order, data, domain)
        return (self @ column).column(0)

    def nonzero_mask(self) -> np.ndarray:
        return _is_nonzero(self._data).astype(bool)

    def is_zero(self) -> bool:
        return not self.nonzero_mask().any()

    def is_scalar(self) -> bool:
        if self.rows != self.cols:
            return False
        first = self._data[0, 0]
        off_diagonal = self.nonzero_mask()
        np.fill_diagonal(off_diagonal, False)
        return not off_diagonal.any() and all(v == first for v in self._data.diagonal())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape or self._order != other._order:
            return False
        return all(x == y for x, y in zip(self._data.flat, other._data.flat))

    def __hash__(self):
        return hash((self._order, self.shape, tuple(hash(v) for v in self._data.flat)))

    def differences(self, other: 'Matrix', limit: int = 5) -> List[Dict]:
        """First few entries where two equal-shaped matrices disagree (1-based positions)."""
        self._check_same_shape(other, 'compare')
        found = []
        for (i, j), value in np.ndenumerate(self._data):
            if value != other._data[i, j]:
                found.append({'row': i + 1, 'col': j + 1,
                              'lhs': str(value), 'rhs': str(other._data[i, j])})
                if len(found) >= limit:
                    break
        return found

    def rank(self) -> int:
        if self._domain is not CycNum:
            raise TypeError("Rank is only defined here over CycNum")
        span = EchelonSpan(self._order, self.cols)
        for i in range(self.rows):
            span.add(self.row(i))
        return span.dimension

    def determinant(self) -> CycNum:
        if self.rows != self.cols:
            raise DimensionMismatchError(f"Determinant of a non-square {self.shape} matrix")
        if self._domain is not CycNum:
            raise TypeError("Determinant is only defined here over CycNum")
        work = [list(self.row(i)) for i in range(self.rows)]
        size = self.rows
        det = CycNum.one(self._order)
        for col in range(size):
            pivot = next((r for r in range(col, size) if work[r][col]), None)
            if pivot is None:
                return CycNum.zero(self._order)
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            lead = work[col][col]
            det = det * lead
            inverse = lead.inverse()
            for r in range(col + 1, size):
                factor = work[r][col]
                if factor:
                    factor = factor * inverse
                    work[r] = [x - factor * y if y else x for x, y in zip(work[r], work[col])]
        return det

    def __repr__(self) -> str:
        return f"Matrix[{self._domain.__name__}]({self.rows}x{self.cols}, N={self._order})"

    def to_dict(self) -> Dict:
        """JSON envelope {"rows","cols","entries"} with row-major serialized scalars."""
        return {'rows': self.rows, 'cols': self.cols, 'order': self._order,
                'domain': self._domain.__name__,
                'entries': [value.to_json() for value in self._data.flat]}

    @classmethod
    def from_dict(cls, payload: Dict) -> 'Matrix':
        domain = {d.__name__: d for d in SCALAR_DOMAINS}[payload.get('domain', 'CycNum')]
        rows, cols = int(payload['rows']), int(payload['cols'])
        if len(payload['entries']) != rows * cols:
            raise DimensionMismatchError("Entry count does not match rows*cols")
        if domain is CycNum:
            values = [CycNum.from_json(v) for v in payload['entries']]
            order = values[0].order
        else:
            order = int(payload['order'])
            values = [domain.from_json(v, order) for v in payload['entries']]
        return cls(order, [values[r * cols:(r + 1) * cols] for r in range(rows)], domain)


def commutator(left: Matrix, right: Matrix) -> Matrix:
    return left @ right - right @ left


def kron(*factors: Matrix) -> Matrix:
    result = factors[0]
    for factor in factors[1:]:
        result = result.kron(factor)
    return result


def unit_matrix_raw(order: int, size: int, row: int, col: int) -> Matrix:
    """E_{row,col} with 1-based labels."""
    if not (1 <= row <= size and 1 <= col <= size):
        raise ValueError(f"Unit matrix label ({row}, {col}) outside 1..{size}")
    return Matrix.from_entries(order, size, size, {(row - 1, col - 1): 1})


def matrix_sum(terms: Iterable[Matrix], order: int, size: int, domain=CycNum) -> Matrix:
    total = Matrix.zeros(order, size, size, domain)
    for term in terms:
        total = total + term
    return total


class EchelonSpan:
    """Incrementally maintained row-echelon basis of a subspace of Q(ω_N)^length.

    Each stored row has a 1 at its pivot and zeros at every smaller index, so reducing a vector
    against the rows in increasing pivot order leaves zeros at all pivots.
    """

    def __init__(self, order: int, length: int):
        self.order = order
        self.length = length
        self._rows: Dict[int, List[CycNum]] = {}

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def basis(self) -> List[Tuple[CycNum, ...]]:
        return [tuple(self._rows[p]) for p in sorted(self._rows)]

    def reduce(self, vector: Sequence) -> List[CycNum]:
        if len(vector) != self.length:
            raise DimensionMismatchError(
                f"Vector of length {len(vector)} in a span of length {self.length}")
        residual = [CycNum.coerce(self.order, v) for v in vector]
        for pivot in sorted(self._rows):
            factor = residual[pivot]
            if factor:
                row = self._rows[pivot]
                for index in range(pivot, self.length):
                    if row[index]:
                        residual[index] = residual[index] - factor * row[index]
        return residual

    def contains(self, vector: Sequence) -> bool:
        return not any(self.reduce(vector))

    def add(self, vector: Sequence) -> bool:
        """Insert ``vector``; returns True when the span grew."""
        residual = self.reduce(vector)
        pivot = next((index for index, value in enumerate(residual) if value), None)
        if pivot is None:
            return False
        inverse = residual[pivot].inverse()
        self._rows[pivot] = [value * inverse if value else value for value in residual]
        return True

    def codimension(self) -> int:
        """Codimension of the span."""
        return self.length - self.dimension
