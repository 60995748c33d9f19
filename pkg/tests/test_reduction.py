import math
import unittest

import numpy

from obeq.core import masks
from obeq.core import reduction
from obeq.core import semiconstant
from obeq.core import solutions
from obeq.core.gridfunction import GridFunction
from obeq.core.gridfunction import geometricGrid
from obeq.util import robust
from obeq.util.errors import DomainError
from obeq.util.errors import InsufficientDataError
from obeq.util.errors import StageError

GRID = reduction.tabulationGrid()
RATIOS = reduction.ratioSet()

PARAMS = solutions.OBParams.create(-1.0, 1.0, 2.0, 0.3, 0.7, 0.4)

GARBAGE = 1.0e6

def corrupt(fn, mask, seed):
    generator = numpy.random.default_rng(seed)

    values = numpy.array(fn.getValues())
    values[mask.excluded] = generator.uniform(-GARBAGE, GARBAGE,
            size = int(numpy.sum(mask.excluded)))

    return fn.withValues(values)

def assertParams(test, expected, actual, delta):
    for name, want, got in zip(solutions.PARAM_NAMES, expected.asTuple(), actual.asTuple()):
        test.assertAlmostEqual(want, got, delta = delta, msg = name)

"""
Test the difference functions and their fits.
"""
class DifferenceTest(unittest.TestCase):
    def test_identity_difference(self):
        fn = GridFunction(GRID, GRID)
        difference = reduction.differenceFunction(fn, 2.0)

        self.assertEqual(GRID.size - 8, len(difference))
        for x, value in zip(difference.getGrid(), difference.getValues()):
            self.assertAlmostEqual(x, value, delta = 1e-12 * max(1.0, x))

    def test_log_difference(self):
        grid = geometricGrid(math.exp(-3.0), math.e, 7)
        difference = reduction.differenceFunction(GridFunction(grid, numpy.log(grid)), math.e)

        self.assertEqual(6, len(difference))
        for value in difference.getValues():
            self.assertAlmostEqual(1.0, value, delta = 1e-12)

    def test_solution_difference(self):
        params = solutions.OBParams.create(-1.0, 1.0)
        a, _, _, _ = solutions.tabulate(params, GRID)

        for r in RATIOS:
            difference = reduction.differenceFunction(a, r)
            expected = -(r - 1.0) * difference.getGrid() + math.log(r)

            self.assertLessEqual(numpy.max(numpy.abs(difference.getValues() - expected)), 1e-9)

    def test_masked_points(self):
        fn = GridFunction(GRID, GRID)
        mask = masks.generateFiniteMask1d(GRID, [GRID[20]])

        difference = reduction.differenceFunction(fn, GRID[8] / GRID[0], mask)

        # Both x = GRID[20] and x = GRID[12] (with r x = GRID[20]) depend on the masked point.
        self.assertEqual([12, 20], list(numpy.flatnonzero(~difference.getValid())))

        downward = reduction.differenceFunction(fn, GRID[0] / GRID[8], mask)
        self.assertEqual(GRID[8], downward.getGrid()[0])
        self.assertEqual(2, len(downward) - downward.validCount())

    def test_difference_errors(self):
        fn = GridFunction(GRID[:10], GRID[:10])

        self.assertRaises(DomainError, reduction.differenceFunction, fn, RATIOS[-1])
        self.assertRaises(DomainError, reduction.differenceFunction, fn, 3.0)

        wrongMask = masks.ExceptionalMask1D.empty(GRID)
        self.assertRaises(DomainError, reduction.differenceFunction, fn, RATIOS[0], wrongMask)

    def test_unit_ratio_fit(self):
        a, b, c, _ = solutions.tabulate(PARAMS, GRID)

        tables = [reduction.differenceFunction(fn, 1.0) for fn in (a, b, c)]
        fit = reduction.fitDifference(*tables, r = 1.0)

        self.assertEqual(0.0, fit.lambdaR)
        self.assertEqual(0.0, fit.alphaR)
        self.assertEqual(0.0, fit.betaR)

    def test_fit(self):
        a, b, c, _ = solutions.tabulate(PARAMS, GRID)
        r = 2.0

        tables = [reduction.differenceFunction(fn, r) for fn in (a, b, c)]
        fit = reduction.fitDifference(*tables, r = r)

        self.assertAlmostEqual(-1.0, fit.lambdaR, delta = 1e-9)
        self.assertAlmostEqual(math.log(2.0), fit.alphaR, delta = 1e-9)
        self.assertAlmostEqual(2.0 * math.log(2.0), fit.betaR, delta = 1e-9)
        self.assertAlmostEqual(3.0 * math.log(2.0), fit.gammaR, delta = 1e-9)
        self.assertAlmostEqual(-1.0, fit.slope('c'), delta = 1e-9)
        self.assertLessEqual(fit.consistencyGap, 1e-9)

        self.assertRaises(ValueError, fit.slope, 'd')
        self.assertRaises(ValueError, fit.intercept, 'delta')

    def test_corrupted_fit(self):
        a, b, c, _ = solutions.tabulate(PARAMS, GRID)
        r = 2.0

        aR, bR, cR = [reduction.differenceFunction(fn, r) for fn in (a, b, c)]
        clean = reduction.fitDifference(aR, bR, cR, r = r)

        aMask = masks.generateSparseMask1d(aR.getGrid(), 0.1, seed = 1)
        bMask = masks.generateSparseMask1d(bR.getGrid(), 0.1, seed = 2)
        noisy = reduction.fitDifference(corrupt(aR, aMask, 3), corrupt(bR, bMask, 4), cR, r = r)

        self.assertAlmostEqual(clean.lambdaR, noisy.lambdaR, delta = 1e-9)
        self.assertAlmostEqual(clean.alphaR, noisy.alphaR, delta = 1e-9)
        self.assertAlmostEqual(clean.betaR, noisy.betaR, delta = 1e-9)

"""
Test the laws over the ratio set.
"""
class LawTest(unittest.TestCase):
    def test_lambda(self):
        fits = [reduction.DifferenceFit(r, -(r - 1.0), 0.0) for r in (2.0, 4.0, 8.0)]
        law = reduction.extractLambda(fits)

        self.assertEqual(-1.0, law.value)
        self.assertEqual(0.0, law.maxResidual())

        # Lambda(4) = Lambda(2 * 2) = 2 Lambda(2) + Lambda(2).
        self.assertIn((2.0, 2.0, 0.0), law.cauchyResiduals)

    def test_zero_lambda(self):
        fits = [reduction.DifferenceFit(r, 0.0, 0.0) for r in (0.5, 2.0, 4.0)]
        self.assertEqual(0.0, reduction.extractLambda(fits).value)

    def test_lambda_outlier(self):
        ratios = [2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]
        fits = [reduction.DifferenceFit(r, -(r - 1.0), 0.0) for r in ratios]
        fits[3] = reduction.DifferenceFit(5.0, 100.0, 0.0)

        law = reduction.extractLambda(fits)
        self.assertEqual(-1.0, law.value)
        self.assertAlmostEqual(104.0, law.maxResidual(), places = 12)

        least = reduction.extractLambda(fits, method = robust.METHOD_LSTSQ)
        self.assertNotAlmostEqual(-1.0, least.value, places = 3)

    def test_too_few_ratios(self):
        fits = [reduction.DifferenceFit(r, -(r - 1.0), 0.0) for r in (1.0, 2.0, 4.0)]
        self.assertRaises(InsufficientDataError, reduction.extractLambda, fits)

        # The same ratio twice counts once.
        fits = [reduction.DifferenceFit(r, -(r - 1.0), 0.0) for r in (2.0, 2.0, 4.0)]
        self.assertRaises(InsufficientDataError, reduction.extractKappa, fits)

    def test_kappa(self):
        fits = [reduction.DifferenceFit(math.e ** k, 0.0, float(k)) for k in (1, 2, 3)]
        law = reduction.extractKappa(fits)

        self.assertAlmostEqual(1.0, law.value, delta = 1e-12)
        self.assertLessEqual(law.maxResidual(), 1e-12)
        self.assertLessEqual(law.maxCauchyResidual(), 1e-12)
        self.assertGreater(len(law.cauchyResiduals), 0)

    def test_kappa_components(self):
        fits = [reduction.DifferenceFit(r, 0.0, math.log(r), betaR = 2.0 * math.log(r),
                gammaR = 3.0 * math.log(r)) for r in RATIOS]

        self.assertAlmostEqual(1.0, reduction.extractKappa(fits, 'alpha').value, delta = 1e-12)
        self.assertAlmostEqual(2.0, reduction.extractKappa(fits, 'beta').value, delta = 1e-12)
        self.assertAlmostEqual(3.0, reduction.extractKappa(fits, 'gamma').value, delta = 1e-12)

    def test_cocycle(self):
        fits = [reduction.DifferenceFit(r, 3.0 * (r - 1.0), 0.0) for r in RATIOS]
        residuals = reduction.cocycleResiduals(fits)

        self.assertGreater(len(residuals), 0)
        for _, _, value in residuals:
            self.assertLessEqual(abs(value), 1e-12)

        broken = [reduction.DifferenceFit(r, (r - 1.0) ** 2, 0.0) for r in RATIOS]
        self.assertGreater(max([abs(value) for _, _, value in reduction.cocycleResiduals(broken)]),
                1e-3)

"""
Test the residual and constant recovery stages.
"""
class ResidualTest(unittest.TestCase):
    def test_residual_is_constant(self):
        a, b, c, _ = solutions.tabulate(PARAMS, GRID)

        for table, kappa, constant in ((a, 1.0, 0.3), (b, 2.0, 0.7), (c, 3.0, 0.4)):
            h = reduction.residualH(table, -1.0, kappa)
            self.assertLessEqual(numpy.max(numpy.abs(h.getValues() - constant)), 1e-12)

            verdict = semiconstant.isSemiconstant(h)
            self.assertTrue(verdict.isSemiconstant)

    def test_perturbed_residual(self):
        a, _, _, _ = solutions.tabulate(PARAMS, GRID)

        h = reduction.residualH(a, -1.0 + 0.1, 1.0 + 0.1)
        verdict = semiconstant.isSemiconstant(h, tol = 0.05)

        self.assertFalse(verdict.isSemiconstant)

    def test_delta(self):
        _, _, _, d = solutions.tabulate(PARAMS, GRID)
        partial = reduction.PartialParams(-1.0, 1.0, 2.0, 0.3, 0.7, 0.4)

        delta, residual = reduction.recoverD(partial, d)
        self.assertAlmostEqual(PARAMS.delta, delta, delta = 1e-10)
        self.assertLessEqual(residual, 1e-10)

        constant = GridFunction(GRID, numpy.full(GRID.size, 5.0))
        flat = reduction.PartialParams(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
        self.assertEqual((5.0, 0.0), reduction.recoverD(flat, constant))

    def test_corrupted_delta(self):
        _, _, _, d = solutions.tabulate(PARAMS, GRID)
        partial = reduction.PartialParams(-1.0, 1.0, 2.0, 0.3, 0.7, 0.4)

        clean, _ = reduction.recoverD(partial, d)
        noisy, _ = reduction.recoverD(partial,
                corrupt(d, masks.generateSparseMask1d(GRID, 0.1, seed = 6), 7))

        self.assertAlmostEqual(clean, noisy, delta = 1e-9)

    def test_empty_delta(self):
        _, _, _, d = solutions.tabulate(PARAMS, GRID)
        partial = reduction.PartialParams(-1.0, 1.0, 2.0, 0.3, 0.7, 0.4)

        self.assertRaises(InsufficientDataError, reduction.recoverD, partial,
                d.withValid(numpy.zeros(GRID.size, dtype = bool)))

"""
Test the full recovery pipeline.
"""
class RecoveryTest(unittest.TestCase):
    def test_masked_recovery(self):
        tables = solutions.tabulate(PARAMS, GRID)
        mask = masks.generateSparseMask2d(GRID, GRID, 0.05, seed = 1)

        report = reduction.recoverAll(*tables, mask2d = mask)

        assertParams(self, PARAMS, report.params, 1e-8)
        self.assertLessEqual(report.kappaConsistency, 1e-8)
        self.assertLessEqual(report.constraintGap, 1e-8)
        self.assertAlmostEqual(PARAMS.delta, report.deltaFromD, delta = 1e-8)
        self.assertEqual((True, True, True), report.semiconstantVerdicts)
        self.assertEqual(len(RATIOS), len(report.fits))

    def test_dense_pair_masks(self):
        tables = solutions.tabulate(PARAMS, GRID)

        for seed in range(5):
            mask = masks.generateSparseMask2d(GRID, GRID, 0.2, seed = seed)
            report = reduction.recoverAll(*tables, mask2d = mask)

            assertParams(self, PARAMS, report.params, 1e-8)
            self.assertLessEqual(report.kappaConsistency, 1e-8)
            self.assertLessEqual(report.constraintGap, 1e-8)

    def test_more_corruption_same_params(self):
        tables = solutions.tabulate(PARAMS, GRID)
        baseline = reduction.recoverAll(*tables).params

        for fraction in (0.05, 0.1, 0.15, 0.2):
            tableMasks = [masks.generateSparseMask1d(GRID, fraction, seed = 40 + k)
                    for k in range(4)]
            corrupted = [corrupt(table, mask, 50 + k)
                    for k, (table, mask) in enumerate(zip(tables, tableMasks))]

            pairMask = masks.inducedPairMask(tableMasks[0], tableMasks[1])
            report = reduction.recoverAll(*corrupted, mask2d = pairMask)

            assertParams(self, baseline, report.params, 1e-8)

    def test_lambda_law(self):
        report = reduction.recoverAll(*solutions.tabulate(PARAMS, GRID))

        self.assertLessEqual(report.stageResiduals['lambda_law'], 1e-9)
        self.assertLessEqual(report.stageResiduals['cocycle'], 1e-9)
        self.assertLessEqual(report.stageResiduals['lambda_spread'], 1e-9)

        for r, fit in zip(RATIOS, report.fits):
            self.assertAlmostEqual(-(r - 1.0), fit.lambdaR, delta = 1e-9)

    def test_zero_tables(self):
        zero = GridFunction(GRID, numpy.zeros(GRID.size))
        report = reduction.recoverAll(zero, zero, zero, zero)

        for value in report.params.asTuple():
            self.assertEqual(0.0, value)

        self.assertEqual(0.0, report.maxStageResidual())

    def test_gamma_tables(self):
        params = solutions.gammaToParams(2.0, 3.0, 1.0)
        report = reduction.recoverAll(*solutions.tabulate(params, GRID))

        self.assertAlmostEqual(-1.0, report.params.lam, delta = 1e-8)
        self.assertAlmostEqual(1.0, report.params.kappa1, delta = 1e-8)
        self.assertAlmostEqual(2.0, report.params.kappa2, delta = 1e-8)
        assertParams(self, params, report.params, 1e-8)

    def test_least_squares(self):
        report = reduction.recoverAll(*solutions.tabulate(PARAMS, GRID),
                method = robust.METHOD_LSTSQ)

        assertParams(self, PARAMS, report.params, 1e-6)
        self.assertEqual(robust.METHOD_LSTSQ, report.method)

    def test_round_trips(self):
        generator = numpy.random.default_rng(2024)
        fractions = (0.0, 0.05, 0.1, 0.2)

        for trial in range(100):
            params = solutions.OBParams.create(*generator.uniform(-10.0, 10.0, size = 6))
            a, b, c, d = solutions.tabulate(params, GRID)

            fraction = fractions[trial % len(fractions)]
            tableMasks = [masks.generateSparseMask1d(GRID, fraction, seed = 4 * trial + k)
                    for k in range(4)]

            a, b, c, d = [corrupt(table, mask, 1000 + 4 * trial + k)
                    for k, (table, mask) in enumerate(zip((a, b, c, d), tableMasks))]

            pairMask = masks.inducedPairMask(tableMasks[0], tableMasks[1])

            # Half of the trials also know where c and d are wrong.
            masks1d = None
            if (trial % 2 == 1):
                masks1d = {'c': tableMasks[2], 'd': tableMasks[3]}

            report = reduction.recoverAll(a, b, c, d, mask2d = pairMask, masks1d = masks1d)

            assertParams(self, params, report.params, 1e-8)
            self.assertLessEqual(report.kappaConsistency, 1e-8)
            self.assertLessEqual(report.constraintGap, 1e-8)

    def test_report_dict(self):
        report = reduction.recoverAll(*solutions.tabulate(PARAMS, GRID))
        data = report.toDict({'a': 'abc'})

        self.assertEqual({'a': 'abc'}, data['input_digests'])
        self.assertEqual(PARAMS.toDict().keys(), data['params'].keys())
        self.assertEqual({'a': True, 'b': True, 'c': True}, data['semiconstant_verdicts'])
        self.assertEqual(len(RATIOS), len(data['difference_fits']))
        self.assertIn('lambda_law', data['stage_residuals'])
        self.assertIn('is_semiconstant', data['semiconstant_details']['a'])

    def test_gross_violation_is_reported(self):
        generator = numpy.random.default_rng(5)
        tables = [GridFunction(GRID, generator.uniform(-1.0, 1.0, size = GRID.size))
                for _ in range(4)]

        report = reduction.recoverAll(*tables)
        self.assertGreater(report.stageResiduals['h_a'], 0.1)
        self.assertGreater(report.maxStageResidual(), 0.1)

    def test_stage_error(self):
        short = geometricGrid(0.01, reduction.DEFAULT_RHO, 10)
        tables = solutions.tabulate(PARAMS, short)

        with self.assertRaises(StageError) as context:
            reduction.recoverAll(*tables)

        self.assertEqual('difference', context.exception.stage)
        self.assertIsInstance(context.exception, ArithmeticError)

    def test_mismatched_grids(self):
        a, b, c, d = solutions.tabulate(PARAMS, GRID)
        other = solutions.tabulate(PARAMS, GRID[:64])[1]

        self.assertRaises(DomainError, reduction.recoverAll, a, other, c, d)

        arithmetic = numpy.linspace(0.1, 12.8, 128)
        self.assertRaises(DomainError, reduction.recoverAll,
                *solutions.tabulate(PARAMS, arithmetic))

if __name__ == '__main__':
    unittest.main()
