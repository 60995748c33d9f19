"""
Log-density estimation and the conversion of log-densities into the tables a, b, c, d.

Positive variables are estimated on the log scale (a Gaussian kernel on log X),
which keeps the estimate away from the boundary at zero:
log f_X(x) = log f_{log X}(log x) - log x.
Variables on (0, 1) are estimated on the plain scale.
"""

import logging

import numpy
import scipy.stats

from obeq.core.gridfunction import GridFunction
from obeq.util.errors import DomainError
from obeq.util.errors import InsufficientDataError

MIN_SAMPLES = 1000
DEFAULT_BANDWIDTH = 'silverman'
DEFAULT_QUANTILES = (0.02, 0.98)

# Grid points where the estimate drops below this share of its peak are invalid.
RELATIVE_FLOOR = 1e-6

def estimateLogDensities(samples, grid, logScale = True, bandwidth = DEFAULT_BANDWIDTH,
        quantiles = DEFAULT_QUANTILES, relativeFloor = RELATIVE_FLOOR):
    """
    Kernel estimate of the log-density of `samples` on `grid`.
    Grid points outside the sample quantile window, or where the density is negligible,
    are marked invalid.
    """

    samples = numpy.asarray(samples, dtype = float).ravel()
    grid = numpy.asarray(grid, dtype = float)

    if (samples.size < MIN_SAMPLES):
        raise InsufficientDataError('Density estimation needs at least %d samples, got %d.'
                % (MIN_SAMPLES, samples.size), needed = MIN_SAMPLES, available = samples.size)

    if (logScale and (numpy.any(samples <= 0) or numpy.any(grid <= 0))):
        raise DomainError('Log-scale estimation needs positive samples and grid points.')

    if (numpy.ptp(samples) == 0):
        raise DomainError('All %d samples are equal to %g, there is no density to estimate.'
                % (samples.size, samples[0]))

    if (logScale):
        estimator = scipy.stats.gaussian_kde(numpy.log(samples), bw_method = bandwidth)
        with numpy.errstate(divide = 'ignore'):
            density = estimator(numpy.log(grid))
            logDensity = numpy.log(density) - numpy.log(grid)
    else:
        estimator = scipy.stats.gaussian_kde(samples, bw_method = bandwidth)
        with numpy.errstate(divide = 'ignore'):
            density = estimator(grid)
            logDensity = numpy.log(density)

    low, high = numpy.quantile(samples, quantiles)
    inWindow = (grid >= low) & (grid <= high)

    aboveFloor = density >= relativeFloor * numpy.max(density)
    valid = inWindow & aboveFloor & numpy.isfinite(logDensity)

    logging.debug('Density estimate: bandwidth factor %.4g, window [%.4g, %.4g],'
            ' %d of %d points valid.'
            % (estimator.factor, low, high, numpy.sum(valid), grid.size))

    if (numpy.any(inWindow & ~aboveFloor)):
        logging.warning('Density estimate is negligible at %d grid points inside the window.'
                % (numpy.sum(inWindow & ~aboveFloor)))

    return GridFunction(grid, logDensity, valid)

def ratioGrid(vGrid):
    """
    The grid z = v / (1 - v), on which d(z) = log f_V(z / (1 + z)) is a re-indexing of log f_V.
    """

    vGrid = numpy.asarray(vGrid, dtype = float)
    if (numpy.any(vGrid <= 0) or numpy.any(vGrid >= 1)):
        raise DomainError('The V grid must lie inside (0, 1).')

    return vGrid / (1.0 - vGrid)

def buildAbcd(logfX, logfY, logfU, logfV, dGrid = None):
    """
    a = log f_X, b = log f_Y, c(x) = log f_U(x) - log x, d(z) = log f_V(z / (1 + z)).
    d lives on `dGrid` (default: the re-indexed V grid); its points must map onto V's grid.
    """

    grid = logfX.getGrid()
    for name, table in (('log f_Y', logfY), ('log f_U', logfU)):
        if (not numpy.array_equal(table.getGrid(), grid)):
            raise DomainError('%s is not on the grid of log f_X.' % (name))

    a = logfX
    b = logfY
    c = logfU.withValues(logfU.getValues() - numpy.log(grid))

    if (dGrid is None):
        dGrid = ratioGrid(logfV.getGrid())

    dGrid = numpy.asarray(dGrid, dtype = float)
    indices = numpy.array([logfV.indexOf(z / (1.0 + z)) for z in dGrid], dtype = object)
    if (any(index is None for index in indices)):
        raise DomainError('Some points z of the d grid have z / (1 + z) off the V grid.')

    indices = indices.astype(int)
    d = GridFunction(dGrid, logfV.getValues()[indices], logfV.getValid()[indices])

    return a, b, c, d
