"""
Recovery of gamma parameters from samples of independent positive X and Y.

If U = X + Y and V = X / (X + Y) are independent, then X ~ G(p, rate) and Y ~ G(q, rate).
The proof runs through the tables

    a = log f_X, b = log f_Y, c(x) = log f_U(x) - log x, d(x) = log f_V(x / (1 + x)),

which solve the additive equation, so the recovery pipeline (`obeq.core.reduction`)
reads off p = kappa1 + 1, q = kappa2 + 1 and rate = -lam.
Here the densities come from kernel estimates, whose error is dense rather than sparse,
so the pipeline runs in least-squares mode.
"""

import dataclasses
import logging
import math

import numpy
import scipy.stats

from obeq.core import reduction
from obeq.core.gridfunction import GridFunction
from obeq.lab import density
from obeq.lab import independence
from obeq.lab import sampling
from obeq.util import probability
from obeq.util import robust
from obeq.util.errors import DomainError
from obeq.util.errors import IndependenceRejectedError

DEFAULT_LEVEL = 0.001

# A finer lattice than the tabulation default, since windows of samples span few octaves.
DEFAULT_RHO = 2.0 ** (1.0 / 32.0)
DEFAULT_RATIO_STEPS = (-64, -32, -16, 16, 32, 64)

# V is tabulated on {k / V_DIVISIONS}, which contains 1/2 (so d is known at 1).
V_DIVISIONS = 256

@dataclasses.dataclass(frozen = True)
class LukacsConfig(object):
    seed: int = probability.DEFAULT_SEED
    permutations: int = independence.DEFAULT_PERMUTATIONS
    maxPoints: int = independence.DEFAULT_MAX_POINTS
    level: float = DEFAULT_LEVEL
    rho: float = DEFAULT_RHO
    ratioSteps: tuple = DEFAULT_RATIO_STEPS
    quantiles: tuple = density.DEFAULT_QUANTILES
    bandwidth: str = density.DEFAULT_BANDWIDTH
    vDivisions: int = V_DIVISIONS
    method: str = robust.METHOD_LSTSQ

    def toDict(self):
        data = dataclasses.asdict(self)
        data['ratioSteps'] = list(self.ratioSteps)
        data['quantiles'] = list(self.quantiles)
        return data

@dataclasses.dataclass(frozen = True)
class GammaEstimate(object):
    shapeX: float
    shapeY: float
    rate: float
    independencePValue: float
    pipelineReport: reduction.RecoveryReport
    independenceResult: independence.IndependenceResult = None
    logDensities: dict = dataclasses.field(default_factory = dict, compare = False,
            repr = False)

    def toDict(self):
        return {
            'shape_x': self.shapeX,
            'shape_y': self.shapeY,
            'rate': self.rate,
            'independence_pvalue': self.independencePValue,
            'independence': (None if (self.independenceResult is None)
                    else self.independenceResult.toDict()),
            'pipeline_report': self.pipelineReport.toDict(),
        }

def lattice(low, high, rho = DEFAULT_RHO):
    """
    The geometric grid {rho^k} covering [low, high]. It contains 1 whenever low <= 1 <= high.
    """

    if (not (0 < low < high)):
        raise DomainError('A lattice needs 0 < low < high, got [%g, %g].' % (low, high))

    first = math.floor(math.log(low) / math.log(rho))
    last = math.ceil(math.log(high) / math.log(rho))

    return rho ** numpy.arange(first, last + 1, dtype = float)

def vGrid(divisions = V_DIVISIONS):
    return numpy.arange(1, divisions, dtype = float) / divisions

def closedFormLogDensities(specX, specY, grid, vPoints = None):
    """
    The exact log-densities (log f_X, log f_Y, log f_U, log f_V) of independent gamma X and Y
    with a common rate: U ~ G(p + q, rate) and V ~ Beta(p, q).
    """

    if (specX.rate != specY.rate):
        raise DomainError('Closed forms need a common rate, got %g and %g.'
                % (specX.rate, specY.rate))

    if (vPoints is None):
        vPoints = vGrid()

    scale = 1.0 / specX.rate
    logfX = scipy.stats.gamma.logpdf(grid, specX.shape, scale = scale)
    logfY = scipy.stats.gamma.logpdf(grid, specY.shape, scale = scale)
    logfU = scipy.stats.gamma.logpdf(grid, specX.shape + specY.shape, scale = scale)
    logfV = scipy.stats.beta.logpdf(vPoints, specX.shape, specY.shape)

    return (GridFunction(grid, logfX), GridFunction(grid, logfY), GridFunction(grid, logfU),
            GridFunction(vPoints, logfV))

def recoverFromLogDensities(logfX, logfY, logfU, logfV, config = None, pValue = 1.0,
        independenceResult = None):
    """
    Build a, b, c, d from log-densities and run the recovery pipeline on them.
    """

    if (config is None):
        config = LukacsConfig()

    a, b, c, d = density.buildAbcd(logfX, logfY, logfU, logfV)

    ratios = reduction.ratioSet(config.rho, config.ratioSteps)
    report = reduction.recoverAll(a, b, c, d, ratios = ratios, method = config.method)

    params = report.params
    estimate = GammaEstimate(params.kappa1 + 1.0, params.kappa2 + 1.0, -params.lam, pValue, report,
            independenceResult, {'X': logfX, 'Y': logfY, 'U': logfU, 'V': logfV})

    logging.debug('Gamma estimate: shape_x = %.6f, shape_y = %.6f, rate = %.6f.'
            % (estimate.shapeX, estimate.shapeY, estimate.rate))

    return estimate

def characterize(x, y, config = None):
    """
    The full pipeline from paired samples to a `GammaEstimate`.
    Raises an `obeq.util.errors.IndependenceRejectedError` if U and V are found dependent
    at the configured level.
    """

    if (config is None):
        config = LukacsConfig()

    u, v = sampling.transformUV(x, y)

    test = independence.independenceTest(u, v, permutations = config.permutations,
            seed = config.seed, maxPoints = config.maxPoints)
    if (test.pValue <= config.level):
        raise IndependenceRejectedError(test.pValue, test.statistic, config.level)

    low = min(numpy.quantile(x, config.quantiles[0]), numpy.quantile(y, config.quantiles[0]))
    high = numpy.quantile(u, config.quantiles[1])
    grid = lattice(low, high, config.rho)

    logging.debug('Density lattice: %d points on [%.4g, %.4g].' % (grid.size, grid[0], grid[-1]))

    logfX = density.estimateLogDensities(x, grid, bandwidth = config.bandwidth,
            quantiles = config.quantiles)
    logfY = density.estimateLogDensities(y, grid, bandwidth = config.bandwidth,
            quantiles = config.quantiles)
    logfU = density.estimateLogDensities(u, grid, bandwidth = config.bandwidth,
            quantiles = config.quantiles)
    logfV = density.estimateLogDensities(v, vGrid(config.vDivisions), logScale = False,
            bandwidth = config.bandwidth, quantiles = config.quantiles)

    return recoverFromLogDensities(logfX, logfY, logfU, logfV, config, test.pValue, test)
