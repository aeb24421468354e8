import unittest
from fractions import Fraction

from models.cyclotomic import CycNum
from models.matrix import DimensionMismatchError, Matrix
from services.bell_rep import (BellVector, TensorVector, act_dual, act_fundamental, basis_dual,
                               basis_fund, basis_product, bell_change_inverse, bell_change_matrix,
                               bell_vector, dual_lemma_action, from_bell_basis, fundamental_lemma_action,
                               hermitian_pairing, reduced_density_first, to_bell_basis, v0_vector,
                               vad_labels)
from services.lie_basis import modified_principal, sl_modified_labels, unit_matrix
from services.yangian_action import delta_x


class TestModules(unittest.TestCase):
    def test_lemma_actions_match_matrices(self):
        for n in (2, 3, 4):
            for label in sl_modified_labels(n):
                x = modified_principal(n, label.i, label.j)
                for m in range(1, n + 1):
                    coeff, target = fundamental_lemma_action(n, label.i, label.j, m)
                    image = act_fundamental(x, basis_fund(n, m))
                    self.assertEqual(image.coeffs, tuple(c * coeff for c in basis_fund(n, target).coeffs))
                    coeff, target = dual_lemma_action(n, label.i, label.j, m)
                    image = act_dual(x, basis_dual(n, m))
                    self.assertEqual(image.coeffs, tuple(c * coeff for c in basis_dual(n, target).coeffs))

    def test_dual_needs_traceless(self):
        with self.assertRaises(ValueError):
            act_dual(unit_matrix(3, 1, 1), basis_dual(3, 1))

    def test_vector_lengths(self):
        with self.assertRaises(DimensionMismatchError):
            TensorVector(2, (1, 0, 0))
        with self.assertRaises(DimensionMismatchError):
            act_fundamental(Matrix.identity(3, 3), basis_fund(2, 1))


class TestBellBasis(unittest.TestCase):
    def test_first_bell_vector(self):
        v = bell_vector(2, 1, 1)
        self.assertEqual(v.coeffs, (1, 0, 0, 1))

    def test_labels_out_of_range(self):
        with self.assertRaises(ValueError):
            bell_vector(3, 0, 1)
        with self.assertRaises(ValueError):
            bell_vector(3, 1, 4)

    def test_orthogonality(self):
        for n in (2, 3, 4):
            self.assertEqual(bell_change_inverse(n) @ bell_change_matrix(n), Matrix.identity(n, n * n))
            self.assertEqual(hermitian_pairing(bell_vector(n, 2, 1).coeffs, bell_vector(n, 2, 1).coeffs), n)
            self.assertEqual(hermitian_pairing(bell_vector(n, 1, 2).coeffs, bell_vector(n, 2, 2).coeffs), 0)

    def test_change_of_basis_round_trip(self):
        v = bell_vector(3, 2, 3)
        bell = to_bell_basis(v)
        self.assertIsInstance(bell, BellVector)
        self.assertEqual(bell.support_labels(), [(2, 3)])
        self.assertEqual(from_bell_basis(bell), v)

    def test_singlet_is_annihilated(self):
        for n in (2, 3):
            psi = v0_vector(n)
            for label in sl_modified_labels(n):
                self.assertTrue(all(not c for c in delta_x(label).apply(psi.coeffs)))
            self.assertEqual(len(vad_labels(n)), n * n - 1)


class TestEntanglement(unittest.TestCase):
    def test_bell_states_are_maximally_entangled(self):
        for n in (2, 3, 4):
            for k in range(1, n + 1):
                for m in range(1, n + 1):
                    density = reduced_density_first(bell_vector(n, k, m))
                    self.assertEqual(density, Matrix.identity(n, n).scale(Fraction(1, n)))

    def test_product_state_control(self):
        density = reduced_density_first(basis_product(3, 2, 3))
        self.assertEqual(density.rank(), 1)
        self.assertEqual(density, unit_matrix(3, 2, 2))

    def test_zero_vector(self):
        with self.assertRaises(ValueError):
            reduced_density_first(TensorVector(2, (CycNum.zero(2),) * 4))


if __name__ == '__main__':
    unittest.main()
