import itertools

import numpy as np

from apps.construction.services.permutations import (
    SignedPermutation,
    classify_left_half_plane,
    has_real_spectrum,
)
from utils.exceptions import PermutationError
from utils.tests import NumericTestCase


def all_signed_permutations(n):
    for target in itertools.permutations(range(n)):
        for sign in itertools.product((-1, 1), repeat=n):
            yield SignedPermutation(target, sign)


class SignedPermutationTests(NumericTestCase):
    """Tests for building and inspecting signed permutations."""

    def test_dense_layout(self):
        """Test that row i holds sign[i] in column target[i]."""
        P = SignedPermutation((1, 0), (-1, 1))
        self.assertEqual(P.dense().tolist(), [[0, -1], [1, 0]])
        self.assertEqual(P.one_based_target(), [2, 1])

    def test_from_dense(self):
        """Test that a dense signed permutation is read back row by row."""
        P = SignedPermutation.from_dense([[0, 0, -1], [0, -1, 0], [1, 0, 0]])
        self.assertEqual(P.target, (2, 1, 0))
        self.assertEqual(P.sign, (-1, -1, 1))

    def test_from_one_based(self):
        """Test that 1-based targets are shifted to 0-based columns."""
        P = SignedPermutation.from_one_based([2, 1], [-1, 1])
        self.assertEqual(P, SignedPermutation((1, 0), (-1, 1)))

    def test_rejects_malformed_input(self):
        """Test that repeated targets, zero signs and non-unit rows are rejected."""
        with self.assertRaises(PermutationError):
            SignedPermutation((0, 0), (1, 1))
        with self.assertRaises(PermutationError):
            SignedPermutation((0, 1), (1, 0))
        with self.assertRaises(PermutationError):
            SignedPermutation((0, 1), (1,))
        with self.assertRaises(PermutationError):
            SignedPermutation.from_dense([[2, 0], [0, 1]])
        with self.assertRaises(PermutationError):
            SignedPermutation.from_dense([[1, 1], [0, 1]])

    def test_cycles(self):
        """Test that cycles report their rows and the product of their signs."""
        P = SignedPermutation((1, 0, 2), (-1, 1, -1))
        self.assertEqual(P.cycles(), [((0, 1), -1), ((2,), -1)])


class SpectralClassificationTests(NumericTestCase):
    """Tests for the structural eigenvalue classification of signed permutations."""

    def test_left_half_plane_matches_eigenvalues(self):
        """Test that the cycle rule agrees with numerically computed eigenvalues for n <= 4."""
        for n in range(1, 5):
            for P in all_signed_permutations(n):
                eigenvalues = np.linalg.eigvals(P.dense().astype(float))
                numeric = bool(np.all(eigenvalues.real <= 1e-12))
                self.assertEqual(classify_left_half_plane(P), numeric, P.dense().tolist())

    def test_left_half_plane_means_skew_minus_diagonal(self):
        """Test that accepted permutations split into a skew part minus a nonnegative diagonal."""
        for n in range(1, 5):
            for P in all_signed_permutations(n):
                dense = P.dense()
                symmetric = (dense + dense.T) / 2
                off_diagonal = symmetric - np.diag(np.diag(symmetric))
                decomposable = not np.any(off_diagonal) and np.all(np.diag(symmetric) <= 0)
                self.assertEqual(classify_left_half_plane(P), bool(decomposable))

    def test_real_spectrum_means_symmetric(self):
        """Test that a real spectrum is found exactly for symmetric permutations."""
        for n in range(1, 5):
            for P in all_signed_permutations(n):
                eigenvalues = np.linalg.eigvals(P.dense().astype(float))
                numeric = bool(np.all(np.abs(eigenvalues.imag) <= 1e-12))
                self.assertEqual(has_real_spectrum(P), numeric)
                self.assertEqual(has_real_spectrum(P), P.is_symmetric())

    def test_examples(self):
        """Test the classification of a few small permutations."""
        self.assertTrue(classify_left_half_plane(SignedPermutation.from_dense([[-1]])))
        self.assertFalse(classify_left_half_plane(SignedPermutation.from_dense([[1]])))
        rotation = SignedPermutation.from_dense([[0, -1], [1, 0]])
        self.assertTrue(classify_left_half_plane(rotation))
        self.assertFalse(has_real_spectrum(rotation))
        three_cycle = SignedPermutation.from_dense([[0, 1, 0], [0, 0, 1], [-1, 0, 0]])
        self.assertFalse(classify_left_half_plane(three_cycle))
