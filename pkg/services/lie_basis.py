"""Concrete bases of gl_N / sl_N: Cartan-Weyl E_kl, principal A_ij and modified principal T_i^(j).

Group indices (i, j of A_ij) live in Z_N as 0..N-1; matrix labels (E_kl rows/columns, the
indices of T_i^(j)) are 1-based. ``label_index`` is the one place a Z_N value becomes a label.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from models.cyclotomic import CycNum, omega_power
from models.matrix import DimensionMismatchError, EchelonSpan, Matrix, commutator, kron, unit_matrix_raw
from models.report import ReportItem, SuiteReport

logger = logging.getLogger(__name__)


class BasisConventionError(RuntimeError):
    """Two independent constructions of the same object disagree."""


def label_index(value: int, n: int) -> int:
    """Reduce any integer mod N into the label range 1..N."""
    return ((value - 1) % n) + 1


@dataclass(frozen=True)
class PrincipalLabel:
    """Label (i, j) of A_ij, stored reduced mod N."""
    n: int
    i: int
    j: int

    def __post_init__(self):
        object.__setattr__(self, 'i', self.i % self.n)
        object.__setattr__(self, 'j', self.j % self.n)

    @property
    def is_sl(self) -> bool:
        return (self.i, self.j) != (0, 0)

    def to_modified(self) -> 'ModifiedLabel':
        return ModifiedLabel(self.n, self.i + 1, self.j + 1)

    def __str__(self) -> str:
        return f"A[{self.i},{self.j}]"


@dataclass(frozen=True)
class ModifiedLabel:
    """Label (i, j) of T_i^(j), stored in 1..N."""
    n: int
    i: int
    j: int

    def __post_init__(self):
        object.__setattr__(self, 'i', label_index(self.i, self.n))
        object.__setattr__(self, 'j', label_index(self.j, self.n))

    @property
    def is_sl(self) -> bool:
        return (self.i, self.j) != (1, 1)

    def to_principal(self) -> PrincipalLabel:
        return PrincipalLabel(self.n, self.i - 1, self.j - 1)

    def __str__(self) -> str:
        return f"T[{self.i},{self.j}]"


def sl_principal_labels(n: int) -> List[PrincipalLabel]:
    """Index set Z_N² minus (0, 0), in row-major order."""
    return [PrincipalLabel(n, i, j) for i in range(n) for j in range(n) if (i, j) != (0, 0)]


def sl_modified_labels(n: int) -> List[ModifiedLabel]:
    """Index set {1..N}² minus (1, 1), in row-major order."""
    return [ModifiedLabel(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)
            if (i, j) != (1, 1)]


def unit_matrix(n: int, k: int, l: int) -> Matrix:
    """E_kl with 1-based labels."""
    return unit_matrix_raw(n, n, k, l)


@lru_cache(maxsize=None)
def principal_matrix(n: int, i: int, j: int) -> Matrix:
    """A_ij = Σ_k ω^(ki) E_{k+1, ((k+j) mod N)+1}."""
    i, j = i % n, j % n
    return Matrix.from_entries(n, n, n, {(k, (k + j) % n): omega_power(n, k * i) for k in range(n)})


@lru_cache(maxsize=None)
def modified_principal(n: int, i: int, j: int) -> Matrix:
    """T_i^(j) = Σ_k ω^((i-1)(k-1)) E_{k,k+j-1}, checked against A_{i-1,j-1}."""
    i, j = label_index(i, n), label_index(j, n)
    from_principal = principal_matrix(n, i - 1, j - 1)
    from_units = Matrix.from_entries(
        n, n, n,
        {(k - 1, label_index(k + j - 1, n) - 1): omega_power(n, (i - 1) * (k - 1))
         for k in range(1, n + 1)})
    if from_principal != from_units:
        raise BasisConventionError(f"T[{i},{j}] differs between its two constructions at N={n}")
    return from_units


def basis_matrix(label) -> Matrix:
    if isinstance(label, PrincipalLabel):
        return principal_matrix(label.n, label.i, label.j)
    return modified_principal(label.n, label.i, label.j)


def dual_principal(n: int, i: int, j: int) -> Matrix:
    """Trace-form dual of A_ij: (ω^(ij)/N) A_{-i,-j}."""
    return principal_matrix(n, -i, -j).scale(omega_power(n, i * j) * Fraction(1, n))


def dual_modified(n: int, i: int, j: int) -> Matrix:
    """Trace-form dual of T_i^(j): (ω^((i-1)(j-1))/N) T_{2-i}^(2-j)."""
    return modified_principal(n, 2 - i, 2 - j).scale(
        omega_power(n, (i - 1) * (j - 1)) * Fraction(1, n))


def principal_commutator_coefficient(n: int, i: int, j: int, k: int, l: int) -> CycNum:
    """c with [A_ij, A_kl] = c · A_{i+k, j+l}."""
    return omega_power(n, j * k) - omega_power(n, l * i)


def trace_pairing(left: Matrix, right: Matrix) -> CycNum:
    """The invariant form (X|Y) = tr(XY)."""
    if left.shape != right.shape or left.rows != left.cols:
        raise DimensionMismatchError(f"Trace pairing of {left.shape} and {right.shape} matrices")
    return (left @ right).trace()


def fourier_transform(n: int, sequence: Sequence, i: int):
    """Σ_k ω^(ki) sequence[k] for any sequence of matrices."""
    total = None
    for k, item in enumerate(sequence):
        term = item.scale(omega_power(n, k * i))
        total = term if total is None else total + term
    return total


def inverse_fourier_transform(n: int, sequence: Sequence, k: int):
    """(1/N) Σ_i ω^(-ki) sequence[i]."""
    total = None
    for i, item in enumerate(sequence):
        term = item.scale(omega_power(n, -k * i) * Fraction(1, n))
        total = term if total is None else total + term
    return total


def epsilon_sequence(n: int, j: int) -> List[Matrix]:
    """ε_j(k) = E_{k,k+j} for k in Z_N."""
    return [unit_matrix(n, k + 1, label_index(k + j + 1, n)) for k in range(n)]


def principal_coordinates(matrix: Matrix) -> Dict[Tuple[int, int], CycNum]:
    """Coefficients c_ij with X = Σ c_ij A_ij: c_lj = (1/N) Σ_k ω^(-kl) X[k, k+j]."""
    n = matrix.rows
    if matrix.shape != (n, n):
        raise DimensionMismatchError(f"Principal coordinates of a non-square {matrix.shape} matrix")
    coords = {}
    for l in range(n):
        for j in range(n):
            total = CycNum.zero(matrix.order)
            for k in range(n):
                entry = matrix[k, (k + j) % n]
                if entry:
                    total = total + omega_power(n, -k * l) * entry
            coords[(l, j)] = total * Fraction(1, n)
    return coords


def from_principal_coordinates(n: int, coords: Dict[Tuple[int, int], object]) -> Matrix:
    total = Matrix.zeros(n, n)
    for (i, j), coeff in coords.items():
        if coeff:
            total = total + principal_matrix(n, i, j).scale(coeff)
    return total


def _vectorize(matrix: Matrix) -> List[CycNum]:
    return matrix.entries()


@lru_cache(maxsize=None)
def fourier_to_cartanweyl(n: int) -> Matrix:
    """N²×N² map from principal coordinates (index iN+j) to Cartan-Weyl coordinates (index (k-1)N+(l-1))."""
    columns = [_vectorize(principal_matrix(n, i, j)) for i in range(n) for j in range(n)]
    return Matrix(n, [[columns[c][r] for c in range(n * n)] for r in range(n * n)])


@lru_cache(maxsize=None)
def fourier_to_principal(n: int) -> Matrix:
    """Inverse of ``fourier_to_cartanweyl``, built from the inverse Fourier formula."""
    rows = []
    for l in range(n):
        for j in range(n):
            row = [CycNum.zero(n)] * (n * n)
            for k in range(n):
                row[k * n + (k + j) % n] = omega_power(n, -k * l) * Fraction(1, n)
            rows.append(row)
    return Matrix(n, rows)


def traceless_projection(matrix: Matrix) -> Matrix:
    n = matrix.rows
    return matrix - Matrix.identity(matrix.order, n).scale(matrix.trace() * Fraction(1, n))


def cartan_weyl_pairs(n: int) -> List[Tuple[Matrix, Matrix]]:
    """Pairs (π(E_kl), π(E_lk)) whose tensor sum is the split Casimir of sl_N."""
    return [(traceless_projection(unit_matrix(n, k, l)), traceless_projection(unit_matrix(n, l, k)))
            for k in range(1, n + 1) for l in range(1, n + 1)]


def principal_pairs(n: int) -> List[Tuple[Matrix, Matrix]]:
    """Dual pairs (A_ij, (ω^(ij)/N) A_{-i,-j}) over (i, j) ≠ (0, 0)."""
    return [(principal_matrix(n, label.i, label.j), dual_principal(n, label.i, label.j))
            for label in sl_principal_labels(n)]


def modified_pairs(n: int) -> List[Tuple[Matrix, Matrix]]:
    return [(modified_principal(n, label.i, label.j), dual_modified(n, label.i, label.j))
            for label in sl_modified_labels(n)]


@lru_cache(maxsize=None)
def flip_matrix(n: int) -> Matrix:
    """P = Σ E_kl ⊗ E_lk, the flip of C^N ⊗ C^N."""
    return Matrix.from_entries(n, n * n, n * n,
                               {(k * n + l, l * n + k): 1 for k in range(n) for l in range(n)})


def tensor_of_pairs(pairs: Sequence[Tuple[Matrix, Matrix]],
                    first: Callable[[Matrix], Matrix] = None,
                    second: Callable[[Matrix], Matrix] = None) -> Matrix:
    """Σ ρ1(x) ⊗ ρ2(x') over a pair list; the actions default to the identity map."""
    total = None
    for x, y in pairs:
        term = kron(first(x) if first else x, second(y) if second else y)
        total = term if total is None else total + term
    return total


@dataclass(frozen=True)
class SplitCasimir:
    n: int
    pairs: Tuple[Tuple[Matrix, Matrix], ...] = field(repr=False)
    tensor: Matrix = field(repr=False)

    def swapped(self) -> Matrix:
        """The tensor with its two factors exchanged."""
        return tensor_of_pairs([(y, x) for x, y in self.pairs])


@lru_cache(maxsize=None)
def split_casimir(n: int) -> SplitCasimir:
    """t = Σ_{(i,j)≠(0,0)} (ω^(ij)/N) A_ij ⊗ A_{-i,-j}."""
    if n < 2:
        raise ValueError(f"The split Casimir needs N >= 2, got {n}")
    pairs = tuple(principal_pairs(n))
    return SplitCasimir(n=n, pairs=pairs, tensor=tensor_of_pairs(pairs))


def cartan_weyl_casimir(n: int) -> Matrix:
    """Σ E_kl ⊗ E_lk - (1/N) I ⊗ I."""
    return flip_matrix(n) - Matrix.identity(n, n * n).scale(Fraction(1, n))


def _gram(pairs: Sequence[Tuple[Matrix, Matrix]]) -> Matrix:
    n = pairs[0][0].order
    return Matrix(n, [[trace_pairing(x, dual) for _, dual in pairs] for x, _ in pairs])


def verify_basis(n: int) -> SuiteReport:
    """Product law, duality, rank, Fourier inversion and the basis independence of t."""
    report = SuiteReport('basis', n)
    labels = [(i, j) for i in range(n) for j in range(n)]
    for (i, j), (k, l) in ((p, q) for p in labels for q in labels):
        product = principal_matrix(n, i, j) @ principal_matrix(n, k, l)
        report.add(ReportItem.compare(
            f"product:A[{i},{j}]A[{k},{l}]", product,
            principal_matrix(n, i + k, j + l).scale(omega_power(n, j * k))))
        bracket = commutator(principal_matrix(n, i, j), principal_matrix(n, k, l))
        report.add(ReportItem.compare(
            f"bracket:A[{i},{j}],A[{k},{l}]", bracket,
            principal_matrix(n, i + k, j + l).scale(principal_commutator_coefficient(n, i, j, k, l))))

    try:
        modified = [modified_principal(n, label.i, label.j) for label in sl_modified_labels(n)]
        report.add(ReportItem.truth('modified:two-constructions', True, 'agree', 'agree'))
    except BasisConventionError as e:
        logger.error(str(e))
        report.add(ReportItem.truth('modified:two-constructions', False, str(e), 'agree'))
        modified = []

    for name, matrices in (('principal', [basis_matrix(label) for label in sl_principal_labels(n)]),
                           ('modified', modified)):
        if not matrices:
            continue
        span = EchelonSpan(n, n * n)
        for matrix in matrices:
            span.add(matrix.entries())
        report.add(ReportItem.compare(f"rank:{name}", span.dimension, n * n - 1))
        report.add(ReportItem.truth(f"traceless:{name}", not any(m.trace() for m in matrices)))

    identity = Matrix.identity(n, n * n - 1)
    report.add(ReportItem.compare('biorthogonal:principal', _gram(principal_pairs(n)), identity))
    if modified:
        report.add(ReportItem.compare('biorthogonal:modified', _gram(modified_pairs(n)), identity))

    report.add(ReportItem.compare('fourier:inverse', fourier_to_cartanweyl(n) @ fourier_to_principal(n),
                                  Matrix.identity(n, n * n)))
    for j in range(n):
        column = [principal_matrix(n, l, j) for l in range(n)]
        for k in range(n):
            report.add(ReportItem.compare(f"fourier:E[{k + 1},{label_index(k + j + 1, n)}]",
                                          inverse_fourier_transform(n, column, k),
                                          epsilon_sequence(n, j)[k]))

    casimir = split_casimir(n)
    report.add(ReportItem.compare('casimir:cartan-weyl', casimir.tensor, cartan_weyl_casimir(n)))
    if modified:
        report.add(ReportItem.compare('casimir:modified', tensor_of_pairs(modified_pairs(n)),
                                      casimir.tensor))
    report.add(ReportItem.compare('casimir:flip-symmetric', casimir.swapped(), casimir.tensor))
    one = Matrix.identity(n, n)
    for label in sl_modified_labels(n):
        x = modified_principal(n, label.i, label.j)
        report.add(ReportItem.truth(f"casimir:invariant:{label}",
                                    commutator(casimir.tensor, kron(x, one) + kron(one, x)).is_zero()))
    logger.info(f"Basis suite at N={n}: {len(report.items) - len(report.failures)}/{len(report.items)} passed")
    return report
