import cmath
import math
import unittest

import numpy

from obeq.core import reduction
from obeq.core import semiconstant
from obeq.core.gridfunction import GridFunction
from obeq.util.errors import DomainError
from obeq.util.errors import InsufficientDataError

FINE_GRID = numpy.linspace(0.001, 1.0, 1000)

def constant(value, grid = FINE_GRID):
    return GridFunction(grid, numpy.full(grid.size, value))

"""
Test the characteristic profile of a table.
"""
class ProfileTest(unittest.TestCase):
    def test_constant(self):
        w = semiconstant.characteristicProfile(constant(3.0), 2.0)
        self.assertAlmostEqual(0.0, abs(w - cmath.exp(6j)), delta = 1e-12)

    def test_identity(self):
        w = semiconstant.characteristicProfile(GridFunction(FINE_GRID, FINE_GRID), 5.0)
        expected = 2.0 * abs(math.sin(2.5)) / 5.0

        self.assertAlmostEqual(0.2394, expected, places = 4)
        self.assertAlmostEqual(expected, abs(w), delta = 1e-3)

    def test_zero_t(self):
        fn = GridFunction(FINE_GRID, numpy.sin(50.0 * FINE_GRID))
        self.assertEqual(complex(1.0, 0.0), semiconstant.characteristicProfile(fn, 0.0))

    def test_weights(self):
        indices, weights = semiconstant.quadratureWeights(GridFunction(FINE_GRID, FINE_GRID))

        self.assertEqual(FINE_GRID.size, indices.size)
        self.assertAlmostEqual(1.0, numpy.sum(weights), places = 12)

        # Only the points in (0, upper] count.
        indices, _ = semiconstant.quadratureWeights(constant(1.0), upper = 0.5)
        self.assertTrue(numpy.all(FINE_GRID[indices] <= 0.5))

    def test_invalid_points_have_no_weight(self):
        valid = numpy.ones(FINE_GRID.size, dtype = bool)
        valid[::3] = False

        fn = GridFunction(FINE_GRID, numpy.full(FINE_GRID.size, 2.0), valid)
        _, weights = semiconstant.quadratureWeights(fn)

        self.assertTrue(numpy.all(weights[::3] == 0.0))
        self.assertAlmostEqual(1.0, abs(semiconstant.characteristicProfile(fn, 7.0)), places = 12)

    def test_too_few_points(self):
        fn = constant(1.0, numpy.linspace(0.1, 10.0, 100))
        self.assertRaises(InsufficientDataError, semiconstant.characteristicProfile, fn, 1.0)

    def test_scaling(self):
        self.assertAlmostEqual(0.0, semiconstant.scalingConsistency(constant(3.0), 0.5, 2.0),
                delta = 1e-12)

        identity = GridFunction(FINE_GRID, FINE_GRID)
        self.assertGreater(semiconstant.scalingConsistency(identity, 0.5, 5.0), 0.01)

        self.assertRaises(DomainError, semiconstant.scalingConsistency, identity, 0.0, 1.0)
        self.assertRaises(DomainError, semiconstant.scalingConsistency, identity, 2.0, 1.0)

"""
Test the semi-constancy verdict.
"""
class VerdictTest(unittest.TestCase):
    def test_constant(self):
        verdict = semiconstant.isSemiconstant(constant(3.0))

        self.assertTrue(verdict.isSemiconstant)
        self.assertEqual(3.0, verdict.kappaEstimate)
        self.assertAlmostEqual(0.0, verdict.profileDeviation, delta = 1e-12)
        self.assertAlmostEqual(3.0, verdict.phaseEstimate, delta = 1e-12)
        self.assertAlmostEqual(semiconstant.defaultTolerance(), verdict.tolerance, places = 15)

    def test_garbage(self):
        generator = numpy.random.default_rng(12)

        values = numpy.full(FINE_GRID.size, 3.0)
        garbage = generator.random(FINE_GRID.size) < 0.05
        values[garbage] = generator.uniform(-1.0e6, 1.0e6, size = int(numpy.sum(garbage)))

        verdict = semiconstant.isSemiconstant(GridFunction(FINE_GRID, values))

        self.assertTrue(verdict.isSemiconstant)
        self.assertEqual(3.0, verdict.kappaEstimate)

    def test_not_constant(self):
        with self.assertLogs(level = 'WARNING'):
            verdict = semiconstant.isSemiconstant(GridFunction(FINE_GRID, FINE_GRID), tol = 0.05)

        self.assertFalse(verdict.isSemiconstant)
        self.assertGreater(verdict.profileDeviation, 0.05)

    def test_geometric_grid(self):
        grid = reduction.tabulationGrid()
        verdict = semiconstant.isSemiconstant(constant(-0.25, grid))

        self.assertTrue(verdict.isSemiconstant)
        self.assertAlmostEqual(0.0, verdict.scalingDeviation, delta = 1e-12)

    def test_scaling_deviation_is_diagnostic(self):
        identity = GridFunction(FINE_GRID, FINE_GRID)
        verdict = semiconstant.isSemiconstant(identity, tol = 1.0)

        expected = max([semiconstant.scalingConsistency(identity, 0.5, t)
                for t in semiconstant.DEFAULT_T_LIST])
        self.assertAlmostEqual(expected, verdict.scalingDeviation, places = 12)
        self.assertGreater(verdict.scalingDeviation, 0.01)

        # Only the profile deviation decides.
        self.assertTrue(verdict.isSemiconstant)

    def test_t_list(self):
        self.assertRaises(DomainError, semiconstant.isSemiconstant, constant(1.0), (0.0, 1.0))
        self.assertRaises(DomainError, semiconstant.isSemiconstant, constant(1.0), ())

    def test_tolerance(self):
        self.assertAlmostEqual(0.2501, semiconstant.defaultTolerance(0.05), places = 12)
        self.assertAlmostEqual(semiconstant.TOLERANCE_FLOOR, semiconstant.defaultTolerance(0.0),
                places = 15)

    def test_dict(self):
        data = semiconstant.isSemiconstant(constant(1.0)).toDict()

        self.assertEqual(['is_semiconstant', 'kappa_estimate', 'profile_deviation',
                'scaling_deviation', 'phase_estimate', 'tolerance'], list(data.keys()))
        self.assertTrue(data['is_semiconstant'])

if __name__ == '__main__':
    unittest.main()
