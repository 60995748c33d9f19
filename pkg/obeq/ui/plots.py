"""
The concrete diagnostic views.
"""

import numpy
import scipy.stats

from obeq.ui import view

class RecoveryView(view.AbstractView):
    """
    Presents a `obeq.core.reduction.RecoveryReport`:
    the fitted Lambda(r) against the law lam (r - 1), and the residual tables h.
    """

    def __init__(self, **kwargs):
        super().__init__(title = 'Parameter recovery', **kwargs)

    # Override
    def _createPanels(self, report):
        law = view.Panel('Lambda(r) against lam (r - 1)', xLabel = 'r', yLabel = 'Lambda(r)',
                logX = True)

        ratios = numpy.array(sorted([fit.r for fit in report.fits]))
        slopes = numpy.array([fit.lambdaR for fit in sorted(report.fits, key = lambda fit: fit.r)])

        law.add('fitted Lambda(r)', ratios, slopes, style = view.STYLE_POINTS)
        law.add('lam (r - 1), lam = %.6g' % (report.params.lam), ratios,
                report.params.lam * (ratios - 1.0))

        residuals = view.Panel('Residual tables h = fn - lam x - kappa log x', xLabel = 'x',
                yLabel = 'h', logX = True)
        for name in sorted(report.residualTables):
            grid, values = report.residualTables[name].validPoints()
            residuals.add('h_%s' % (name), grid, values)

        return [law, residuals]

class DensityView(view.AbstractView):
    """
    Presents a `obeq.lab.lukacs.GammaEstimate`:
    estimated log-densities overlaid with those of the fitted gamma (beta for V) laws.
    """

    def __init__(self, **kwargs):
        super().__init__(title = 'Estimated and fitted log-densities', **kwargs)

    # Override
    def _createPanels(self, estimate):
        shapeX = estimate.shapeX
        shapeY = estimate.shapeY
        rate = estimate.rate
        fitted = (shapeX > 0 and shapeY > 0 and rate > 0)

        laws = {
            'X': lambda x: scipy.stats.gamma.logpdf(x, shapeX, scale = 1.0 / rate),
            'Y': lambda x: scipy.stats.gamma.logpdf(x, shapeY, scale = 1.0 / rate),
            'U': lambda x: scipy.stats.gamma.logpdf(x, shapeX + shapeY, scale = 1.0 / rate),
            'V': lambda x: scipy.stats.beta.logpdf(x, shapeX, shapeY),
        }

        panels = []
        for name in ('X', 'Y', 'U', 'V'):
            table = estimate.logDensities.get(name)
            if (table is None):
                continue

            panel = view.Panel('log f_%s' % (name), xLabel = name.lower(),
                    yLabel = 'log density', logX = (name != 'V'))

            grid, values = table.validPoints()
            panel.add('kernel estimate', grid, values, style = view.STYLE_POINTS)
            if (fitted):
                panel.add('fitted law', grid, laws[name](grid))

            panels.append(panel)

        return panels

