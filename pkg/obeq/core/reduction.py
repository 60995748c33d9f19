"""
Recovery of the seven constants of a measurable solution from (possibly corrupted) tables
of a, b, c, d on a geometric grid.

The pipeline runs in stages:

 1. Difference functions a_r(x) = a(r x) - a(x) (likewise b_r, c_r) for a set of ratios r.
    They satisfy the Pexider equation a_r(x) + b_r(y) = c_r(x + y),
    so each ratio yields a linear fit a_r(x) = Lambda(r) x + alpha(r).
 2. The law Lambda(r) = lam (r - 1) gives lam.
 3. The logarithmic law alpha(r) = kappa log r gives kappa1, kappa2 (and kappa1 + kappa2 from c).
 4. What is left, h(x) = a(x) - lam x - kappa log x, is semi-constant and its constant is alpha
    (beta, gamma for b and c).
 5. delta is read off d directly.

Multiplying by r = rho^m on a grid x_k = x0 rho^k is the index shift k -> k + m,
so every r x lookup is exact.
"""

import dataclasses
import logging
import math

import numpy

from obeq import __version__
from obeq.core import masks
from obeq.core import pexider
from obeq.core import semiconstant
from obeq.core import solutions
from obeq.core.gridfunction import GridFunction
from obeq.core.gridfunction import geometricGrid
from obeq.util import robust
from obeq.util.errors import DomainError
from obeq.util.errors import InsufficientDataError
from obeq.util.errors import StageError

DEFAULT_X0 = 1e-2
DEFAULT_RHO = 2.0 ** (1.0 / 8.0)
DEFAULT_POINTS = 129
DEFAULT_RATIO_STEPS = (-16, -8, -4, 4, 8, 16)

MIN_RATIOS = 3

# Difference tables are shorter than the originals, so their Pexider fits need fewer pairs.
DIFFERENCE_MIN_PAIRS = 16

# Ratios closer than this (relative) are the same ratio.
RATIO_TOLERANCE = 1e-9

COMPONENT_SLOPES = {
    'a': 'slopeA',
    'b': 'slopeB',
    'c': 'slopeC',
    'pexider': 'lambdaR',
}

COMPONENT_INTERCEPTS = {
    'alpha': 'alphaR',
    'beta': 'betaR',
    'gamma': 'gammaR',
}

@dataclasses.dataclass(frozen = True)
class DifferenceFit(object):
    """
    The linear fit of the difference tables at one ratio r:
    a_r(x) = Lambda(r) x + alpha(r), b_r(x) = Lambda(r) x + beta(r)
    and c_r(x) = Lambda(r) x + gamma(r).
    `lambdaR` is Lambda(r), the Pexider slope; `slopeA`, `slopeB`, `slopeC` are the slopes of
    the individual tables (None means equal to `lambdaR`).
    """

    r: float
    lambdaR: float
    alphaR: float
    inlierFraction: float = 1.0
    betaR: float = 0.0
    gammaR: float = 0.0
    slopeA: float = None
    slopeB: float = None
    slopeC: float = None
    consistencyGap: float = 0.0

    def slope(self, component):
        name = _lookup(COMPONENT_SLOPES, component, 'slope')
        value = getattr(self, name)
        if (value is None):
            return self.lambdaR

        return value

    def intercept(self, component):
        return getattr(self, _lookup(COMPONENT_INTERCEPTS, component, 'intercept'))

    def toDict(self):
        return {
            'r': self.r,
            'Lambda_r': self.lambdaR,
            'alpha_r': self.alphaR,
            'beta_r': self.betaR,
            'gamma_r': self.gammaR,
            'slopes': [self.slope('a'), self.slope('b'), self.slope('c')],
            'inlier_fraction': self.inlierFraction,
            'consistency_gap': self.consistencyGap,
        }

@dataclasses.dataclass(frozen = True)
class LawFit(object):
    """
    A constant fitted to a law over the ratios, e.g. Lambda(r) = lam (r - 1).
    `residuals` holds (r, law residual) pairs and
    `cauchyResiduals` the (r, s, residual) triples of the matching functional identity.
    """

    value: float
    residuals: tuple = ()
    cauchyResiduals: tuple = ()

    def maxResidual(self):
        return _maxAbs([residual for _, residual in self.residuals])

    def maxCauchyResidual(self):
        return _maxAbs([residual for _, _, residual in self.cauchyResiduals])

    def toDict(self):
        return {
            'value': self.value,
            'residuals': [list(item) for item in self.residuals],
            'cauchy_residuals': [list(item) for item in self.cauchyResiduals],
        }

@dataclasses.dataclass(frozen = True)
class PartialParams(object):
    """
    The constants recovered from a, b, c; delta is still missing.
    """

    lam: float
    kappa1: float
    kappa2: float
    alpha: float
    beta: float
    gamma: float

    def complete(self):
        return solutions.OBParams.create(self.lam, self.kappa1, self.kappa2,
                self.alpha, self.beta, self.gamma)

@dataclasses.dataclass(frozen = True)
class RecoveryReport(object):
    params: solutions.OBParams
    stageResiduals: dict
    kappaConsistency: float
    constraintGap: float
    semiconstantVerdicts: tuple
    deltaFromD: float = 0.0
    lambdaEstimates: dict = dataclasses.field(default_factory = dict)
    kappaEstimates: dict = dataclasses.field(default_factory = dict)
    fits: tuple = ()
    verdicts: tuple = ()
    method: str = robust.METHOD_ROBUST
    residualTables: dict = dataclasses.field(default_factory = dict, compare = False,
            repr = False)

    def maxStageResidual(self):
        return _maxAbs(list(self.stageResiduals.values()))

    def toDict(self, digests = None):
        """
        The JSON shape of the report.
        `digests` maps input names to SHA-256 digests.
        """

        return {
            'version': __version__,
            'input_digests': dict(digests or {}),
            'method': self.method,
            'params': self.params.toDict(),
            'stage_residuals': dict(self.stageResiduals),
            'kappa_consistency': self.kappaConsistency,
            'constraint_gap': self.constraintGap,
            'delta_from_d': self.deltaFromD,
            'semiconstant_verdicts': {
                name: verdict for name, verdict in zip('abc', self.semiconstantVerdicts)
            },
            'semiconstant_details': {
                name: verdict.toDict() for name, verdict in zip('abc', self.verdicts)
            },
            'lambda_estimates': dict(self.lambdaEstimates),
            'kappa_estimates': dict(self.kappaEstimates),
            'difference_fits': [fit.toDict() for fit in self.fits],
        }

def tabulationGrid(x0 = DEFAULT_X0, rho = DEFAULT_RHO, points = DEFAULT_POINTS):
    return geometricGrid(x0, rho, points)

def ratioSet(rho = DEFAULT_RHO, steps = DEFAULT_RATIO_STEPS):
    return [float(rho ** step) for step in steps]

def differenceFunction(fn, r, mask = None):
    """
    The table x -> fn(r x) - fn(x) on the part of the grid where r x stays on the grid.
    A point is valid only if both lookups are valid and unmasked
    (so the effective mask is M united with (1 / r) M).
    """

    steps = fn.ratioSteps(r)

    grid = fn.getGrid()
    values = fn.getValues()
    valid = numpy.array(fn.getValid())

    if (mask is not None):
        if (not numpy.array_equal(mask.grid, grid)):
            raise DomainError('The mask is not on the table\'s grid.')

        valid &= ~mask.excluded

    count = grid.size - abs(steps)
    if (count < 2):
        raise DomainError('Ratio %g leaves fewer than two grid points.' % (r))

    if (steps >= 0):
        base = numpy.arange(count)
    else:
        base = numpy.arange(-steps, grid.size)

    shifted = base + steps

    return GridFunction(grid[base], values[shifted] - values[base], valid[base] & valid[shifted])

def differenceMask(mask2d, r, xGrid, yGrid):
    """
    The pair mask of the difference tables at ratio r: M united with (1 / r) M,
    restricted to the difference grids.
    """

    joined = masks.unionMask(mask2d, masks.scaleMask(mask2d, r))
    return masks.restrictMask(joined, xGrid, yGrid)

def fitDifference(aR, bR, cR, mask2d = None, r = None, method = robust.METHOD_ROBUST,
        tolerance = pexider.DEFAULT_TOLERANCE, minPairs = DIFFERENCE_MIN_PAIRS):
    """
    Fit a_r(x) + b_r(y) = c_r(x + y) as a Pexider equation.
    `mask2d` may live on larger grids than the difference tables; it is restricted to them.
    """

    if (mask2d is not None and (not numpy.array_equal(mask2d.xGrid, aR.getGrid())
            or not numpy.array_equal(mask2d.yGrid, bR.getGrid()))):
        mask2d = masks.restrictMask(mask2d, aR.getGrid(), bR.getGrid())

    fit = pexider.fitPexider(cR, aR, bR, mask2d, tolerance = tolerance, method = method,
            minPairs = minPairs)

    slopeB, _ = pexider.fitLine(bR, method)
    slopeC, gammaR = pexider.fitLine(cR, method)

    if (r is None):
        r = float('nan')

    logging.debug('Difference fit at r = %.6g: Lambda = %.12g, alpha = %.12g, beta = %.12g.'
            % (r, fit.slope, fit.alpha, fit.beta))

    return DifferenceFit(float(r), fit.slope, fit.alpha, fit.inlierFraction, fit.beta,
            gammaR, fit.slope, slopeB, slopeC, fit.consistencyGap)

def extractLambda(fits, component = 'pexider', method = robust.METHOD_ROBUST):
    """
    Fit Lambda(r) = lam (r - 1) using the slopes of the given component
    ('a', 'b', 'c', or 'pexider' for the joint slope).
    """

    fits = _usableFits(fits)

    ratios = numpy.array([fit.r for fit in fits])
    slopes = numpy.array([fit.slope(component) for fit in fits])

    lam = robust.ratioThroughOrigin(ratios - 1.0, slopes, method)
    residuals = tuple((float(r), float(slope - lam * (r - 1.0)))
            for r, slope in zip(ratios, slopes))

    return LawFit(lam, residuals, cocycleResiduals(fits, component))

def extractKappa(fits, component = 'alpha', method = robust.METHOD_ROBUST):
    """
    Fit alpha(r) = kappa log r using the intercepts of the given component
    ('alpha', 'beta' or 'gamma').
    Also reports alpha(r s) - alpha(r) - alpha(s) wherever r s is one of the fitted ratios.
    """

    fits = _usableFits(fits)

    logRatios = numpy.array([math.log(fit.r) for fit in fits])
    intercepts = numpy.array([fit.intercept(component) for fit in fits])

    kappa = robust.ratioThroughOrigin(logRatios, intercepts, method)
    residuals = tuple((float(fit.r), float(value - kappa * logR))
            for fit, value, logR in zip(fits, intercepts, logRatios))

    cauchy = []
    for first, second, product in _ratioTriples(fits):
        value = product.intercept(component) - first.intercept(component) \
                - second.intercept(component)
        cauchy.append((first.r, second.r, float(value)))

    return LawFit(kappa, residuals, tuple(cauchy))

def cocycleResiduals(fits, component = 'pexider'):
    """
    Lambda(r s) - r Lambda(s) - Lambda(r) wherever r s is one of the fitted ratios.
    """

    results = []
    for first, second, product in _ratioTriples(fits):
        value = product.slope(component) - first.r * second.slope(component) \
                - first.slope(component)
        results.append((first.r, second.r, float(value)))

    return tuple(results)

def residualH(fn, lam, kappa):
    """
    h(x) = fn(x) - lam x - kappa log x.
    """

    grid = fn.getGrid()
    return fn.withValues(fn.getValues() - lam * grid - kappa * numpy.log(grid))

def recoverD(paramsAbc, dTable, method = robust.METHOD_ROBUST):
    """
    delta from d(z) = kappa1 log(z / (z + 1)) - kappa2 log(1 + z) + delta.
    Returns (delta, residual) where residual is the median absolute deviation.
    """

    grid = dTable.getGrid()
    offsets = dTable.getValues() - paramsAbc.kappa1 * (numpy.log(grid) - numpy.log1p(grid)) \
            + paramsAbc.kappa2 * numpy.log1p(grid)
    offsets = offsets[dTable.getValid()]

    if (offsets.size == 0):
        raise InsufficientDataError('The d table has no valid points.', needed = 1, available = 0)

    delta = robust.center(offsets, method)
    residual = robust.medianAbsoluteDeviation(offsets, delta)

    return delta, residual

def recoverAll(a, b, c, d, mask2d = None, ratios = None, method = robust.METHOD_ROBUST,
        tolerance = pexider.DEFAULT_TOLERANCE, masks1d = None, corruptionFraction = None):
    """
    Run every stage and assemble a `RecoveryReport`.

    `mask2d` is the pair mask on a's grid × b's grid; its non-negligible columns (rows)
    also mask the corresponding points of a (b).
    `masks1d` optionally maps 'a', 'b', 'c', 'd' to known `obeq.core.masks.ExceptionalMask1D`s.
    Consistency problems are reported, never raised; a stage that cannot be computed raises
    a `obeq.util.errors.StageError`.
    """

    if (not (numpy.array_equal(a.getGrid(), b.getGrid())
            and numpy.array_equal(a.getGrid(), c.getGrid()))):
        raise DomainError('Tables a, b, c must share one grid.')

    grid = a.getGrid()
    if (mask2d is None):
        mask2d = masks.ExceptionalMask2D.empty(grid, grid)

    if (ratios is None):
        rho = a.ratio()
        if (rho is None):
            raise DomainError('Default ratios need a geometric grid.')

        ratios = ratioSet(rho)

    ratios = [float(r) for r in ratios]
    masks1d = _oneDimensionalMasks(mask2d, masks1d, grid, d.getGrid())

    if (corruptionFraction is None):
        corruptionFraction = max([masks.DEFAULT_FRACTION]
                + [mask.excludedFraction() for mask in masks1d.values() if mask is not None])

    fits = _stage('difference', _fitAll, a, b, c, mask2d, masks1d, ratios, method, tolerance)

    lambdas = {}
    for component in ('a', 'b', 'c'):
        lambdas[component] = _stage('lambda_' + component, extractLambda, fits, component, method)

    lambdaValues = [law.value for law in lambdas.values()]
    lam = robust.lowerMedian(lambdaValues)
    pexiderLaw = _stage('lambda', extractLambda, fits, 'pexider', method)

    kappas = {}
    for name, component in (('a', 'alpha'), ('b', 'beta'), ('c', 'gamma')):
        kappas[name] = _stage('kappa_' + name, extractKappa, fits, component, method)

    residualTables = {}
    constants = {}
    verdicts = []
    for name, table in (('a', a), ('b', b), ('c', c)):
        table = _applyMask(table, masks1d[name])
        h = residualH(table, lam, kappas[name].value)
        residualTables[name] = h

        values = h.getValues()[h.getValid()]
        constants[name] = _stage('h_' + name, robust.center, values, method)
        verdicts.append(_stage('semiconstant_' + name, _verdict, h, corruptionFraction))

    partial = PartialParams(lam, kappas['a'].value, kappas['b'].value,
            constants['a'], constants['b'], constants['c'])
    params = partial.complete()

    delta, dResidual = _stage('d', recoverD, partial, _applyMask(d, masks1d['d']), method)

    kappaConsistency = abs(kappas['a'].value + kappas['b'].value - kappas['c'].value)
    constraintGap = abs(partial.alpha + partial.beta - partial.gamma - delta)

    stageResiduals = {
        'lambda_law': pexiderLaw.maxResidual(),
        'lambda_spread': max(lambdaValues) - min(lambdaValues),
        'cocycle': pexiderLaw.maxCauchyResidual(),
        'pexider_consistency': _maxAbs([fit.consistencyGap for fit in fits]),
        'd': dResidual,
    }

    for name in ('a', 'b', 'c'):
        stageResiduals['kappa_law_' + name] = kappas[name].maxResidual()
        stageResiduals['kappa_cauchy_' + name] = kappas[name].maxCauchyResidual()

        h = residualTables[name]
        stageResiduals['h_' + name] = robust.medianAbsoluteDeviation(
                h.getValues()[h.getValid()], constants[name])

    for name, value in (('kappa consistency', kappaConsistency), ('constraint gap', constraintGap)):
        if (value > tolerance):
            logging.warning('Recovered parameters: %s %g exceeds the tolerance %g.'
                    % (name, value, tolerance))

    logging.debug('Recovered parameters: %s.' % (str(params)))

    return RecoveryReport(params, stageResiduals, kappaConsistency, constraintGap,
            tuple(verdict.isSemiconstant for verdict in verdicts), delta,
            {name: law.value for name, law in lambdas.items()},
            {name: law.value for name, law in kappas.items()},
            tuple(fits), tuple(verdicts), method, residualTables)

def _fitAll(a, b, c, mask2d, masks1d, ratios, method, tolerance):
    fits = []

    for r in ratios:
        aR = differenceFunction(a, r, masks1d['a'])
        bR = differenceFunction(b, r, masks1d['b'])
        cR = differenceFunction(c, r, masks1d['c'])

        maskR = differenceMask(mask2d, r, aR.getGrid(), bR.getGrid())
        fits.append(fitDifference(aR, bR, cR, maskR, r, method = method, tolerance = tolerance))

    return fits

def _oneDimensionalMasks(mask2d, masks1d, grid, dGrid):
    """
    Join the given 1-D masks with the non-negligible sections of the pair mask.
    """

    masks1d = dict(masks1d or {})

    sections = {
        'a': masks.sectionMask(mask2d, axis = 0),
        'b': masks.sectionMask(mask2d, axis = 1),
    }

    result = {}
    for name in ('a', 'b', 'c', 'd'):
        expected = dGrid if (name == 'd') else grid
        mask = masks1d.get(name)

        if (mask is not None and not numpy.array_equal(mask.grid, expected)):
            raise DomainError("The mask for '%s' is not on its table's grid." % (name))

        section = sections.get(name)
        if (section is not None and numpy.array_equal(section.grid, expected)):
            if (mask is None):
                mask = section
            else:
                mask = dataclasses.replace(mask, excluded = mask.excluded | section.excluded,
                        idealKind = masks.KIND_FINITE)

        result[name] = mask

    return result

def _applyMask(fn, mask):
    if (mask is None):
        return fn

    return fn.withValid(fn.getValid() & ~mask.excluded)

def _verdict(h, corruptionFraction):
    upper = semiconstant.DEFAULT_UPPER
    grid, _ = h.validPoints()

    if (numpy.sum(grid <= upper) < semiconstant.MIN_POINTS):
        upper = float(h.getGrid()[-1])

    return semiconstant.isSemiconstant(h, corruptionFraction = corruptionFraction, upper = upper)

def _stage(name, function, *args):
    try:
        return function(*args)
    except (ValueError, ArithmeticError) as ex:
        if (isinstance(ex, StageError)):
            raise ex

        raise StageError(name, ex) from ex

def _usableFits(fits):
    fits = [fit for fit in fits if (abs(fit.r - 1.0) > RATIO_TOLERANCE)]

    distinct = numpy.unique(numpy.round(numpy.log([fit.r for fit in fits]), 9)) \
            if (len(fits) > 0) else []
    if (len(distinct) < MIN_RATIOS):
        raise InsufficientDataError('Need fits at %d or more distinct ratios other than 1, got %d.'
                % (MIN_RATIOS, len(distinct)), needed = MIN_RATIOS, available = len(distinct))

    return fits

def _ratioTriples(fits):
    """
    All (first, second, product) fits with product.r == first.r * second.r.
    """

    ratios = numpy.array([fit.r for fit in fits])
    triples = []

    for first in fits:
        for second in fits:
            matches = numpy.nonzero(numpy.abs(ratios - first.r * second.r)
                    <= RATIO_TOLERANCE * max(1.0, first.r * second.r))[0]
            if (matches.size > 0):
                triples.append((first, second, fits[int(matches[0])]))

    return triples

def _maxAbs(values):
    values = [abs(value) for value in values if (value is not None and math.isfinite(value))]
    if (len(values) == 0):
        return 0.0

    return float(max(values))

def _lookup(table, key, what):
    if (key not in table):
        raise ValueError("Unknown %s component: '%s'. Expected one of %s."
                % (what, key, sorted(table)))

    return table[key]
