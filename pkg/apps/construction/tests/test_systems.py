import numpy as np

from apps.construction.services.permutations import SignedPermutation
from apps.construction.services.systems import (
    LinearModel,
    assemble_system,
    hyperbolize,
    relaxation_generator,
    required_sigma0,
    semi_discrete_operator,
    stable_permutation,
)
from utils.exceptions import InvalidModelError, PermutationError
from utils.tests import NumericTestCase


def model_orders(low=2, high=8):
    """(m, sigma0) pairs allowed for every order in [low, high]."""
    for m in range(low, high + 1):
        if m % 2 == 0:
            yield m, required_sigma0(m)
        else:
            yield m, 1
            yield m, -1


class LinearModelTests(NumericTestCase):
    """Tests for the LinearModel invariants."""

    def test_required_sign(self):
        """Test that even orders accept only sigma0 = (-1)^(m/2)."""
        self.assertEqual(required_sigma0(2), -1)
        self.assertEqual(required_sigma0(4), 1)
        self.assertEqual(required_sigma0(6), -1)
        LinearModel(2, -1)
        LinearModel(4, 1)
        with self.assertRaises(InvalidModelError):
            LinearModel(2, 1)
        with self.assertRaises(InvalidModelError):
            LinearModel(4, -1)

    def test_odd_orders_accept_both_signs(self):
        """Test that odd orders are valid with either sign."""
        self.assertEqual(LinearModel(3, 1).sigma0, 1)
        self.assertEqual(LinearModel(3, -1).sigma0, -1)

    def test_invalid_parameters(self):
        """Test that bad orders, signs and lower-order coefficients are rejected."""
        with self.assertRaises(InvalidModelError):
            LinearModel(1, 1)
        with self.assertRaises(InvalidModelError):
            LinearModel(3, 0)
        with self.assertRaises(InvalidModelError):
            LinearModel(3, 1, (0.0, 1.0))
        with self.assertRaises(InvalidModelError):
            LinearModel(3, 1, (-0.5, 0.0, 0.0))
        with self.assertRaises(InvalidModelError):
            LinearModel(3, 1, (0.0, float('nan'), 0.0))

    def test_default_alpha_is_pure(self):
        """Test that omitted lower-order coefficients default to zero."""
        model = LinearModel(3, 1)
        self.assertEqual(model.alpha, (0.0, 0.0, 0.0))
        self.assertTrue(model.is_pure)
        self.assertFalse(LinearModel(3, 1, (0.0, 1.0, 0.0)).is_pure)

    def test_symbol(self):
        """Test the Fourier symbol of the scalar model."""
        heat = LinearModel(2, -1)
        self.assertAllClose(heat.symbol(1j * 2.0), -4.0)
        advected = LinearModel(3, 1, (0.5, 1.0, 0.0))
        k = 1.5
        expected = -(1j * k) ** 3 - 0.5 - 1j * k
        self.assertAllClose(advected.symbol(1j * k), expected)


class StablePermutationTests(NumericTestCase):
    """Tests for the closed-form stable permutation."""

    def test_examples(self):
        """Test the stable permutation for the heat, third- and fourth-order models."""
        self.assertEqual(stable_permutation(2, -1).dense().tolist(), [[-1]])
        self.assertEqual(stable_permutation(3, 1).dense().tolist(), [[0, -1], [1, 0]])
        self.assertEqual(stable_permutation(4, 1).dense().tolist(),
                         [[0, 0, -1], [0, -1, 0], [1, 0, 0]])

    def test_is_anti_diagonal(self):
        """Test that every stable permutation is anti-diagonal."""
        for m, sigma0 in model_orders():
            P = stable_permutation(m, sigma0)
            self.assertEqual(P.target, tuple(range(m - 2, -1, -1)))

    def test_rejects_unbounded_models(self):
        """Test that an even order with the wrong sign has no stable permutation."""
        with self.assertRaises(InvalidModelError):
            stable_permutation(2, 1)


class AssemblyTests(NumericTestCase):
    """Tests for assembling A and B."""

    def test_heat(self):
        """Test the heat relaxation q0_t - q1_x = 0, tau q1_t - q0_x = -q1."""
        system = hyperbolize(LinearModel(2, -1), 0.5)
        self.assertAllClose(system.A, [[0, -1], [-1, 0]])
        self.assertAllClose(system.B, [[0, 0], [0, -1]])
        self.assertAllClose(system.inverse_relaxation, [1.0, 2.0])

    def test_lower_order_terms(self):
        """Test that alpha_1.. become fluxes in row 0 and alpha_0 a source."""
        model = LinearModel(3, 1, (0.25, 0.5, 0.75))
        system = hyperbolize(model, 0.1)
        self.assertAllClose(system.A[0], [0.5, 0.75, 1.0])
        self.assertAllClose(system.B[0], [-0.25, 0.0, 0.0])

    def test_fourth_order_blocks(self):
        """Test the 2x2 blocks of A for m = 4 with an advective term."""
        system = hyperbolize(LinearModel(4, 1, (0.0, 0.7, 0.0, 0.0)), 1.0)
        A = system.A
        self.assertAllClose(A[np.ix_([0, 3], [0, 3])], [[0.7, 1.0], [1.0, 0.0]])
        self.assertAllClose(A[np.ix_([1, 2], [1, 2])], [[0.0, -1.0], [-1.0, 0.0]])

    def test_structural_symmetry(self):
        """Test that A is symmetric and B skew (odd m) or skew minus a nonnegative diagonal (even m)."""
        for m, sigma0 in model_orders():
            system = hyperbolize(LinearModel(m, sigma0), 0.01)
            A, B = system.A, system.B
            self.assertAllClose(A, A.T, atol=0)
            if m % 2:
                self.assertAllClose(B, -B.T, atol=0)
            else:
                symmetric = B + B.T
                self.assertAllClose(symmetric, np.diag(np.diag(symmetric)), atol=0)
                self.assertTrue(np.all(np.diag(symmetric) <= 0))

    def test_matrices_are_read_only(self):
        """Test that the assembled matrices cannot be modified in place."""
        system = hyperbolize(LinearModel(3, 1), 0.1)
        with self.assertRaises(ValueError):
            system.A[0, 0] = 1.0

    def test_size_mismatch(self):
        """Test that P must have size m - 1."""
        with self.assertRaises(PermutationError):
            assemble_system(LinearModel(3, 1), SignedPermutation.from_dense([[-1]]), 0.1)

    def test_invalid_tau(self):
        """Test that tau must be a positive real."""
        for tau in (0.0, -1.0, float('inf')):
            with self.assertRaises(InvalidModelError):
                hyperbolize(LinearModel(2, -1), tau)


class GeneratorTests(NumericTestCase):
    """Tests for the per-mode operators."""

    def test_heat_generator(self):
        """Test L_tau for the heat relaxation and its characteristic polynomial."""
        system = hyperbolize(LinearModel(2, -1), 0.5)
        generator = relaxation_generator(system, 1.0)
        self.assertAllClose(generator, [[0, 0.5j], [1j, -1]])
        self.assertAllClose(np.poly(generator), [1.0, 1.0, 0.5])

    def test_first_row(self):
        """Test that the first row of L_tau is (0, ..., 0, -i k tau sigma0)."""
        for m, sigma0 in model_orders(2, 6):
            system = hyperbolize(LinearModel(m, sigma0), 0.2)
            row = relaxation_generator(system, 3.0)[0]
            expected = np.zeros(m, dtype=complex)
            expected[-1] = -1j * 3.0 * 0.2 * sigma0
            self.assertAllClose(row, expected)

    def test_slow_direction_at_zero_tau(self):
        """Test that (ik)^j spans the kernel of L_tau with its first row removed."""
        for m, sigma0 in model_orders():
            k = 1.3
            system = hyperbolize(LinearModel(m, sigma0), 0.05)
            reduced = relaxation_generator(system, k).copy()
            reduced[0] = 0
            direction = (1j * k) ** np.arange(m)
            self.assertAllClose(reduced @ direction, np.zeros(m), atol=1e-12)

    def test_semi_discrete_operator(self):
        """Test that M(k) stacks one generator per wavenumber, scaled by 1/tau."""
        system = hyperbolize(LinearModel(3, 1), 0.1)
        wavenumbers = [0.0, 1.0, -2.0]
        stack = semi_discrete_operator(system, wavenumbers)
        self.assertEqual(stack.shape, (3, 3, 3))
        for k, operator in zip(wavenumbers, stack):
            self.assertAllClose(operator, relaxation_generator(system, k) / 0.1)

    def test_generator_requires_pure_model(self):
        """Test that lower-order terms are rejected by the generator."""
        system = hyperbolize(LinearModel(3, 1, (0.0, 1.0, 0.0)), 0.1)
        with self.assertRaises(InvalidModelError):
            relaxation_generator(system, 1.0)
