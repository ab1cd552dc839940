import numpy as np

from apps.spectral.services.grid import (
    ModeSum,
    PeriodicGrid,
    dealias,
    derivative_symbol,
    spectral_derivative,
)
from utils.exceptions import InvalidModelError
from utils.tests import NumericTestCase


class PeriodicGridTests(NumericTestCase):
    """Tests for grid construction."""

    def test_nodes_and_wavenumbers(self):
        """Test that the right end is excluded and wavenumbers are in FFT order."""
        grid = PeriodicGrid(0.0, 2 * np.pi, 8)
        self.assertAllClose(grid.nodes, np.arange(8) * np.pi / 4)
        self.assertAllClose(grid.wavenumbers, [0, 1, 2, 3, -4, -3, -2, -1])
        self.assertAllClose(grid.odd_wavenumbers, [0, 1, 2, 3, 0, -3, -2, -1])
        self.assertAllClose(grid.k_max, 4.0)

    def test_scaled_wavenumbers(self):
        """Test that wavenumbers scale with the domain length."""
        grid = PeriodicGrid(-10.0, 10.0, 16)
        self.assertAllClose(grid.wavenumbers[1], 2 * np.pi / 20)

    def test_invalid(self):
        """Test that non-power-of-two sizes, tiny grids and empty domains are rejected."""
        with self.assertRaises(InvalidModelError):
            PeriodicGrid(0.0, 1.0, 12)
        with self.assertRaises(InvalidModelError):
            PeriodicGrid(0.0, 1.0, 4)
        with self.assertRaises(InvalidModelError):
            PeriodicGrid(1.0, 1.0, 16)

    def test_dealias_mask(self):
        """Test that the 2/3 rule keeps |j| <= n/3."""
        grid = PeriodicGrid(0.0, 2 * np.pi, 16)
        kept = grid.mode_indices[grid.dealias_mask]
        self.assertEqual(int(np.max(np.abs(kept))), 5)
        filtered = dealias(np.ones(16), grid)
        self.assertEqual(int(filtered.sum()), 11)

    def test_refined(self):
        """Test that refining doubles the nodes on the same domain."""
        grid = PeriodicGrid(-1.0, 1.0, 16).refined()
        self.assertEqual(grid.n, 32)
        self.assertEqual(grid.as_dict(), {'x_left': -1.0, 'x_right': 1.0, 'n': 32})


class SpectralDerivativeTests(NumericTestCase):
    """Tests for Fourier differentiation."""

    def test_sine(self):
        """Test that d/dx sin x = cos x on [0, 2 pi)."""
        grid = PeriodicGrid(0.0, 2 * np.pi, 32)
        derivative = spectral_derivative(np.sin(grid.nodes), grid, 1)
        self.assertAllClose(derivative, np.cos(grid.nodes), atol=1e-10)
        self.assertTrue(np.isrealobj(derivative))

    def test_constant(self):
        """Test that constants have zero derivatives of every order."""
        grid = PeriodicGrid(0.0, 5.0, 16)
        for order in (1, 2, 3):
            self.assertAllClose(spectral_derivative(np.full(16, 3.0), grid, order), np.zeros(16), atol=1e-12)

    def test_gaussian_fourth_derivative(self):
        """Test the fourth derivative of a resolved Gaussian."""
        grid = PeriodicGrid(-10.0, 10.0, 128)
        x = grid.nodes
        expected = (16 * x ** 4 - 48 * x ** 2 + 12) * np.exp(-x ** 2)
        self.assertAllClose(spectral_derivative(np.exp(-x ** 2), grid, 4), expected, atol=1e-8)

    def test_nyquist_convention(self):
        """Test that odd orders drop the Nyquist mode and even orders keep it."""
        grid = PeriodicGrid(0.0, 2 * np.pi, 8)
        self.assertEqual(derivative_symbol(grid, 1)[4], 0)
        self.assertAllClose(derivative_symbol(grid, 2)[4], -16.0)


class ModeSumTests(NumericTestCase):
    """Tests for exactly represented Fourier sums."""

    def test_evaluate_and_derivative(self):
        """Test that derivatives multiply amplitudes by (ik)^order."""
        grid = PeriodicGrid(0.0, 2 * np.pi, 16)
        u = ModeSum((2.0,), (0.5,))
        self.assertAllClose(u.evaluate(grid), 0.5 * np.exp(2j * grid.nodes))
        self.assertAllClose(u.derivative(3).evaluate(grid), 0.5 * (2j) ** 3 * np.exp(2j * grid.nodes))

    def test_default_amplitudes(self):
        """Test that amplitudes default to one."""
        self.assertEqual(ModeSum((1.0, 2.0)).amplitudes, (1 + 0j, 1 + 0j))

    def test_from_samples(self):
        """Test that samples on a shifted grid are reproduced exactly."""
        grid = PeriodicGrid(-np.pi, np.pi, 16)
        values = np.cos(grid.nodes) + 0.25 * np.sin(3 * grid.nodes)
        self.assertAllClose(ModeSum.from_samples(values, grid).evaluate(grid), values, atol=1e-12)

    def test_resolution(self):
        """Test that only non-Nyquist grid wavenumbers are resolved."""
        grid = PeriodicGrid(0.0, 2 * np.pi, 16)
        self.assertTrue(ModeSum((3.0, -7.0)).is_resolved_on(grid))
        self.assertFalse(ModeSum((0.5,)).is_resolved_on(grid))
        self.assertFalse(ModeSum((8.0,)).is_resolved_on(grid))
