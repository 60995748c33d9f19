import fractions
import math
import unittest

import hypothesis
import hypothesis.strategies as st
import numpy
import scipy.integrate

from obeq.core import handles
from obeq.core import solutions
from obeq.core.field import QuadraticSurd
from obeq.util.errors import DomainError

PARAMETER = st.floats(min_value = -10.0, max_value = 10.0, allow_nan = False)
POINT = st.floats(min_value = 1e-3, max_value = 1e3, allow_nan = False)

def randomParams(generator, low = -10.0, high = 10.0):
    values = generator.uniform(low, high, size = 6)
    return solutions.OBParams.create(*values)

"""
Test the closed-form solution family and its read-backs.
"""
class SolutionsTest(unittest.TestCase):
    def test_zero_params(self):
        values = solutions.evalQuadruple(solutions.OBParams.zero(), 1.0)
        self.assertEqual((0.0, 0.0, 0.0, 0.0), values.asTuple())

    def test_quadruple_at_one(self):
        params = solutions.OBParams.create(lam = -1.0, kappa1 = 1.0, kappa2 = 2.0)
        values = solutions.evalQuadruple(params, 1.0)

        self.assertAlmostEqual(-1.0, values.a, places = 12)
        self.assertAlmostEqual(-1.0, values.b, places = 12)
        self.assertAlmostEqual(-1.0, values.c, places = 12)
        self.assertAlmostEqual(-3.0 * math.log(2.0), values.d, places = 12)

    def test_gamma_log_density(self):
        params = solutions.gammaToParams(2.0, 3.0, 1.0)

        for x in (0.1, 1.0, 2.5, 10.0):
            self.assertAlmostEqual(math.log(x) - x, solutions.evalQuadruple(params, x).a,
                    places = 12)

    def test_residual_examples(self):
        params = solutions.OBParams.create(lam = 2.0, kappa1 = 0.5, kappa2 = -0.25,
                alpha = 1.0, beta = 2.0, gamma = 0.5)
        self.assertAlmostEqual(2.5, params.delta, places = 15)

        self.assertLessEqual(abs(solutions.residual(params, 1.0, 1.0)), 1e-12)
        self.assertLessEqual(abs(solutions.residual(params, 3.0, 0.7)), 1e-12)

    def test_residual_constraint_gap(self):
        params = solutions.OBParams.raw(2.0, 0.5, -0.25, 1.0, 2.0, 0.5, 2.4)
        self.assertAlmostEqual(0.1, params.constraintGap(), places = 12)

        for x, y in ((1.0, 1.0), (3.0, 0.7), (0.01, 50.0)):
            self.assertAlmostEqual(0.1, solutions.residual(params, x, y), delta = 1e-11)

    def test_constraint_enforced(self):
        self.assertRaises(DomainError, solutions.OBParams, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0)
        self.assertRaises(DomainError, solutions.OBParams.create, float('nan'))

    def test_bad_points(self):
        params = solutions.OBParams.zero()

        for x in (0.0, -1.0, float('inf'), float('nan')):
            self.assertRaises(DomainError, solutions.evalQuadruple, params, x)

        self.assertRaises(DomainError, solutions.residual, params, 1.0, 0.0)

    @hypothesis.settings(max_examples = 200, deadline = None)
    @hypothesis.given(PARAMETER, PARAMETER, PARAMETER, PARAMETER, PARAMETER, PARAMETER,
            POINT, POINT)
    def test_residual_vanishes(self, lam, kappa1, kappa2, alpha, beta, gamma, x, y):
        params = solutions.OBParams.create(lam, kappa1, kappa2, alpha, beta, gamma)

        scale = 1.0 + sum([abs(value) for value in solutions.evalQuadruple(params, x).asTuple()])
        scale += sum([abs(value) for value in solutions.evalQuadruple(params, y).asTuple()])
        scale += sum([abs(value) for value in solutions.evalQuadruple(params, x + y).asTuple()])
        scale += sum([abs(value) for value in solutions.evalQuadruple(params, x / y).asTuple()])

        self.assertLessEqual(abs(solutions.residual(params, x, y)), 1e-10 * scale)

    def test_residual_grid(self):
        generator = numpy.random.default_rng(1)
        points = numpy.geomspace(1e-3, 1e3, 200)

        for _ in range(100):
            params = randomParams(generator)
            residuals, scales = solutions.residualGrid(params, points, points)

            self.assertEqual((200, 200), residuals.shape)
            self.assertLessEqual(float(numpy.max(numpy.abs(residuals) / scales)), 1e-10)

    def test_multiplicative(self):
        values = solutions.multiplicativeQuadruple(solutions.OBParams.zero(), 2.0)
        self.assertEqual((1.0, 1.0, 1.0, 1.0), values.asTuple())

        params = solutions.gammaToParams(2.0, 3.0, 1.0)
        self.assertAlmostEqual(math.exp(-1.0), solutions.multiplicativeQuadruple(params, 1.0).f,
                places = 12)

        generator = numpy.random.default_rng(2)
        for _ in range(50):
            params = randomParams(generator, -2.0, 2.0)
            self.assertAlmostEqual(1.0, solutions.multiplicativeRatio(params, 0.5, 4.0),
                    delta = 1e-10)

    def test_multiplicative_overflow(self):
        params = solutions.OBParams.create(lam = 1000.0)
        self.assertRaises(OverflowError, solutions.multiplicativeQuadruple, params, 10.0)
        self.assertTrue(issubclass(OverflowError, ArithmeticError))

    def test_gamma_to_params(self):
        params = solutions.gammaToParams(1.0, 1.0, 1.0)
        self.assertEqual(-1.0, params.lam)
        self.assertEqual(0.0, params.kappa1)
        self.assertEqual(0.0, params.kappa2)
        self.assertAlmostEqual(0.0, params.alpha, places = 14)
        self.assertAlmostEqual(0.0, params.beta, places = 14)

        params = solutions.gammaToParams(2.0, 3.0, 1.0)
        self.assertEqual(1.0, params.kappa1)
        self.assertEqual(2.0, params.kappa2)
        self.assertAlmostEqual(0.0, params.alpha, places = 14)
        self.assertAlmostEqual(-math.log(2.0), params.beta, places = 14)
        self.assertLessEqual(params.constraintGap(), 1e-12)

        shapes = solutions.paramsToGamma(params)
        for expected, actual in zip((2.0, 3.0, 1.0), shapes):
            self.assertAlmostEqual(expected, actual, places = 12)

        self.assertRaises(DomainError, solutions.gammaToParams, 0.0, 1.0, 1.0)
        self.assertRaises(DomainError, solutions.paramsToGamma,
                solutions.OBParams.create(lam = 1.0))

    def test_gamma_density_integrates(self):
        params = solutions.gammaToParams(2.0, 3.0, 1.0)

        for name in ('a', 'b'):
            def density(x, name = name):
                if (x <= 0):
                    return 0.0

                return math.exp(getattr(solutions.evalQuadruple(params, x), name))

            total, _ = scipy.integrate.quad(density, 0.0, numpy.inf)
            self.assertAlmostEqual(1.0, total, delta = 1e-6)

    def test_params_json(self):
        params = solutions.OBParams.fromDict({'lambda': -1.0, 'kappa1': 1.0, 'alpha': 0.5})
        self.assertEqual(-1.0, params.lam)
        self.assertEqual(0.5, params.delta)
        self.assertEqual(params, solutions.OBParams.fromDict(params.toDict()))

        self.assertRaises(DomainError, solutions.OBParams.fromDict, {'alpha': 1.0, 'delta': 0.0})

    def test_tabulate(self):
        params = solutions.gammaToParams(2.0, 3.0, 1.0)
        grid = numpy.geomspace(0.01, 100.0, 33)

        tables = solutions.tabulate(params, grid)
        self.assertEqual(4, len(tables))

        for x in grid[::8]:
            expected = solutions.evalQuadruple(params, x).asTuple()
            actual = [table.valueAt(x) for table in tables]
            for value, other in zip(expected, actual):
                self.assertAlmostEqual(value, other, places = 12)

        self.assertRaises(DomainError, solutions.tabulate, params, [-1.0, 1.0])

"""
Test the general solutions built from function handles.
"""
class GeneralSolutionTest(unittest.TestCase):
    def test_measurable_specialization(self):
        params = solutions.OBParams.create(-1.5, 0.5, 2.0, 0.25, -1.0, 0.75)
        spec = solutions.GeneralSolutionSpec.measurable(params)

        for x in (0.01, 0.5, 1.0, 7.0, 300.0):
            general = solutions.evalGeneral(spec, x).asTuple()
            measurable = solutions.evalQuadruple(params, x).asTuple()

            for value, other in zip(general, measurable):
                self.assertAlmostEqual(float(other), float(value), places = 10)

        for x, y in ((0.5, 2.0), (3.0, 0.7), (1.0, 1.0)):
            self.assertAlmostEqual(0.0, float(solutions.residualGeneral(spec, x, y)), places = 9)

    def test_logarithmic_handles(self):
        spec = solutions.GeneralSolutionSpec(handles.LinearAdditive(slope = 0.0),
                handles.KappaLogarithm(kappa = 1.0), handles.KappaLogarithm(kappa = 2.0))

        values = solutions.evalGeneral(spec, math.e)
        self.assertAlmostEqual(1.0, float(values.a), places = 12)
        self.assertAlmostEqual(2.0, float(values.b), places = 12)
        self.assertAlmostEqual(3.0, float(values.c), places = 12)

    def test_lattice_example(self):
        spec = self._latticeSpec()

        x = QuadraticSurd(1, 1)
        y = QuadraticSurd(2, 0)
        self.assertEqual(QuadraticSurd(3, 1), x + y)

        self.assertEqual(0, solutions.pexiderPart(spec, x, y))

    def test_lattice_pairs(self):
        spec = self._latticeSpec(alpha = fractions.Fraction(1, 2), beta = fractions.Fraction(1, 4),
                gamma = fractions.Fraction(1, 8))
        points = spec.additive.samples(2000, seed = 5)

        for x, y in zip(points[0::2], points[1::2]):
            self.assertEqual(0, solutions.pexiderPart(spec, x, y))

    def test_lattice_is_not_linear(self):
        handle = handles.LatticeAdditive(u = 3, v = 5)

        # A linear function would need A(sqrt 2) = sqrt(2) A(1).
        self.assertEqual(3, handle(QuadraticSurd(1, 0)))
        self.assertEqual(5, handle(QuadraticSurd(0, 1)))
        self.assertNotAlmostEqual(5.0, 3.0 * math.sqrt(2.0))

        self.assertRaises(DomainError, handle, 1.5)

    def test_lattice_tabulation_declines_floats(self):
        tables = solutions.tabulateGeneral(self._latticeSpec(), numpy.geomspace(0.5, 2.0, 5))

        self.assertEqual(0, tables[0].validCount())
        self.assertEqual(0, tables[2].validCount())

    def test_handle_kinds(self):
        logarithm = handles.KappaLogarithm(kappa = 1.0)
        self.assertRaises(DomainError, solutions.GeneralSolutionSpec, logarithm, logarithm,
                logarithm)

    def test_spec_json(self):
        spec = self._latticeSpec()
        loaded = solutions.GeneralSolutionSpec.fromDict(spec.toDict())

        self.assertIsInstance(loaded.additive, handles.LatticeAdditive)
        self.assertEqual(spec.additive.u, loaded.additive.u)
        self.assertEqual(spec.additive.v, loaded.additive.v)

    def _latticeSpec(self, alpha = 0, beta = 0, gamma = 0):
        return solutions.GeneralSolutionSpec(handles.LatticeAdditive(u = 3, v = 5),
                handles.KappaLogarithm(kappa = 0.0), handles.KappaLogarithm(kappa = 0.0),
                alpha, beta, gamma)

"""
Test exact arithmetic in Q(sqrt 2) and handle loading.
"""
class FieldTest(unittest.TestCase):
    def test_arithmetic(self):
        x = QuadraticSurd(1, 1)

        self.assertEqual(QuadraticSurd(-1, 0), x * x.conjugate())
        self.assertEqual(QuadraticSurd(1, 0), x / x)
        self.assertEqual(x, (x * QuadraticSurd(2, 3)) / QuadraticSurd(2, 3))
        self.assertEqual(QuadraticSurd(2, 1), x + 1)
        self.assertEqual(QuadraticSurd(0, -1), 1 - x)
        self.assertAlmostEqual(1.0 + math.sqrt(2.0), float(x), places = 15)

        self.assertRaises(ZeroDivisionError, x.__truediv__, QuadraticSurd(0, 0))

    def test_ordering(self):
        self.assertEqual(1, QuadraticSurd(3, -2).sign())
        self.assertEqual(-1, QuadraticSurd(2, -2).sign())
        self.assertEqual(1, QuadraticSurd(-3, fractions.Fraction(5, 2)).sign())
        self.assertEqual(0, QuadraticSurd().sign())

        self.assertLess(QuadraticSurd(1, 0), QuadraticSurd(0, 1))
        self.assertGreater(QuadraticSurd(3, 0), QuadraticSurd(0, 2))

    def test_load_handle(self):
        handle = handles.SolutionHandle.loadHandle('LatticeAdditive', {'u': 1, 'v': 2})
        self.assertIsInstance(handle, handles.LatticeAdditive)

        handle = handles.SolutionHandle.loadHandle('obeq.core.handles.KappaLogarithm',
                {'kappa': 2.0})
        self.assertEqual(2.0, handle.kappa)

        self.assertRaises(LookupError, handles.SolutionHandle.loadHandle, 'NoSuchHandle')

    def test_identity_checks(self):
        self.assertLessEqual(handles.checkAdditive(handles.LinearAdditive(slope = 3.0)), 1e-12)
        self.assertLessEqual(handles.checkLogarithmic(handles.KappaLogarithm(kappa = -2.0)), 1e-12)
        self.assertEqual(0, handles.checkAdditive(handles.LatticeAdditive()))

if __name__ == '__main__':
    unittest.main()
