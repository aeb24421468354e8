"""The fundamental module, its dual, the tensor space W and the generalized Bell basis.

Product basis |i,j⟩ = |i⟩₁ ⊗ |j⟩₂ sits at index (i-1)N + (j-1); Bell labels (k, m) use the
same row-major ordering.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from models.cyclotomic import CycNum, conjugate, omega_power
from models.matrix import DimensionMismatchError, Matrix
from services.lie_basis import label_index

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Vector:
    n: int
    coeffs: Tuple

    BASIS = 'tensor'
    LENGTH_POWER = 1

    def __post_init__(self):
        expected = self.n ** self.LENGTH_POWER
        if len(self.coeffs) != expected:
            raise DimensionMismatchError(
                f"{type(self).__name__} for N={self.n} needs {expected} coefficients, "
                f"got {len(self.coeffs)}")
        object.__setattr__(self, 'coeffs', tuple(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_dict(self) -> Dict:
        return {'basis': self.BASIS, 'n': self.n,
                'coeffs': [coeff.to_json() for coeff in self.coeffs]}


@dataclass(frozen=True)
class FundVector(_Vector):
    """Vector of V(λ₁) in the basis |1⟩₁..|N⟩₁."""
    BASIS = 'fundamental'


@dataclass(frozen=True)
class DualVector(_Vector):
    """Vector of V(λ_{N-1}) in the basis |1⟩₂..|N⟩₂."""
    BASIS = 'dual'


@dataclass(frozen=True)
class TensorVector(_Vector):
    """Vector of W in the product basis, row-major over (i, j)."""
    BASIS = 'tensor'
    LENGTH_POWER = 2

    def coefficient(self, i: int, j: int):
        return self.coeffs[(i - 1) * self.n + (j - 1)]


@dataclass(frozen=True)
class BellVector(_Vector):
    """Vector of W in the basis Ψ_k^(m), row-major over (k, m)."""
    BASIS = 'bell'
    LENGTH_POWER = 2

    def coefficient(self, k: int, m: int):
        return self.coeffs[(k - 1) * self.n + (m - 1)]

    def support(self) -> List[Tuple[int, int]]:
        return [divmod(index, self.n) for index, coeff in enumerate(self.coeffs) if coeff]

    def support_labels(self) -> List[Tuple[int, int]]:
        return [(k + 1, m + 1) for k, m in self.support()]


def bell_position(n: int, k: int, m: int) -> int:
    return (label_index(k, n) - 1) * n + (label_index(m, n) - 1)


def bell_labels(n: int) -> List[Tuple[int, int]]:
    return [(k, m) for k in range(1, n + 1) for m in range(1, n + 1)]


def vad_labels(n: int) -> List[Tuple[int, int]]:
    """Bell labels spanning the adjoint part: every (k, m) except (1, 1)."""
    return [label for label in bell_labels(n) if label != (1, 1)]


def fundamental_matrix(x: Matrix) -> Matrix:
    return x


def dual_matrix(x: Matrix) -> Matrix:
    """The contragredient action x ↦ -xᵀ."""
    return -x.transpose()


def basis_fund(n: int, m: int) -> FundVector:
    coeffs = [CycNum.zero(n)] * n
    coeffs[label_index(m, n) - 1] = CycNum.one(n)
    return FundVector(n, tuple(coeffs))


def basis_dual(n: int, m: int) -> DualVector:
    return DualVector(n, basis_fund(n, m).coeffs)


def basis_product(n: int, i: int, j: int) -> TensorVector:
    coeffs = [CycNum.zero(n)] * (n * n)
    coeffs[bell_position(n, i, j)] = CycNum.one(n)
    return TensorVector(n, tuple(coeffs))


def act_fundamental(x: Matrix, v: FundVector) -> FundVector:
    if x.shape != (v.n, v.n):
        raise DimensionMismatchError(f"Cannot act with a {x.shape} matrix on V(λ₁) for N={v.n}")
    return FundVector(v.n, x.apply(v.coeffs))


def act_dual(x: Matrix, v: DualVector) -> DualVector:
    if x.shape != (v.n, v.n):
        raise DimensionMismatchError(f"Cannot act with a {x.shape} matrix on V(λ_N-1) for N={v.n}")
    if x.trace():
        raise ValueError("The dual module is only defined for traceless (sl_N) elements")
    return DualVector(v.n, dual_matrix(x).apply(v.coeffs))


def fundamental_lemma_action(n: int, i: int, j: int, m: int) -> Tuple[CycNum, int]:
    """T_i^(j)|m⟩₁ = ω^((i-1)(m-j)) |m-j+1⟩₁ as (coefficient, label)."""
    return omega_power(n, (i - 1) * (m - j)), label_index(m - j + 1, n)


def dual_lemma_action(n: int, i: int, j: int, m: int) -> Tuple[CycNum, int]:
    """T_i^(j)|m⟩₂ = -ω^((i-1)(m-1)) |m+j-1⟩₂ as (coefficient, label)."""
    return -omega_power(n, (i - 1) * (m - 1)), label_index(m + j - 1, n)


def bell_vector(n: int, k: int, m: int) -> TensorVector:
    """Ψ_k^(m) = Σ_r ω^((k-1)(r-1)) |r, m+r-1⟩."""
    if not (1 <= k <= n and 1 <= m <= n):
        raise ValueError(f"Bell label ({k}, {m}) outside 1..{n}")
    coeffs = [CycNum.zero(n)] * (n * n)
    for r in range(1, n + 1):
        coeffs[bell_position(n, r, m + r - 1)] = omega_power(n, (k - 1) * (r - 1))
    return TensorVector(n, tuple(coeffs))


def v0_vector(n: int) -> TensorVector:
    """Ψ_1^(1), spanning the invariant line V₀."""
    return bell_vector(n, 1, 1)


@lru_cache(maxsize=None)
def bell_change_matrix(n: int) -> Matrix:
    """B with column (k-1)N + (m-1) equal to Ψ_k^(m) in the product basis."""
    columns = [bell_vector(n, k, m).coeffs for k, m in bell_labels(n)]
    size = n * n
    return Matrix(n, [[columns[c][r] for c in range(size)] for r in range(size)])


@lru_cache(maxsize=None)
def bell_change_inverse(n: int) -> Matrix:
    """B⁻¹ = (1/N) B†, from orthogonality of the Bell vectors."""
    return bell_change_matrix(n).adjoint().scale(Fraction(1, n))


def to_bell_basis(v: TensorVector) -> BellVector:
    return BellVector(v.n, bell_change_inverse(v.n).apply(v.coeffs))


def from_bell_basis(v: BellVector) -> TensorVector:
    return TensorVector(v.n, bell_change_matrix(v.n).apply(v.coeffs))


def bell_frame(operator: Matrix) -> Matrix:
    """The operator written in the Bell basis, B⁻¹ · op · B."""
    n = operator.order
    return bell_change_inverse(n) @ operator @ bell_change_matrix(n)


def hermitian_pairing(left: Sequence[CycNum], right: Sequence[CycNum]) -> CycNum:
    """⟨v, w⟩ = Σ conj(v_i) w_i, conjugate-linear in the first slot."""
    if len(left) != len(right):
        raise DimensionMismatchError(f"Pairing of vectors of length {len(left)} and {len(right)}")
    total = None
    for x, y in zip(left, right):
        if x and y:
            term = conjugate(x) * y
            total = term if total is None else total + term
    return CycNum.zero(left[0].order) if total is None else total


def reduced_density_first(v: TensorVector) -> Matrix:
    """Partial trace over the second factor of v v† / ⟨v, v⟩."""
    n = v.n
    if not all(isinstance(c, CycNum) for c in v.coeffs):
        raise TypeError("Reduced density needs a parameter-free vector")
    norm = hermitian_pairing(v.coeffs, v.coeffs)
    if not norm:
        raise ValueError("Reduced density of the zero vector")
    rows = []
    for i in range(1, n + 1):
        row = []
        for i2 in range(1, n + 1):
            total = CycNum.zero(n)
            for j in range(1, n + 1):
                left, right = v.coefficient(i, j), v.coefficient(i2, j)
                if left and right:
                    total = total + left * conjugate(right)
            row.append(total / norm)
        rows.append(row)
    return Matrix(n, rows)
