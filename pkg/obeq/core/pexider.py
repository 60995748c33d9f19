"""
Recovery of the measurable solution of the Pexider equation

    f(x + y) = g(x) + h(y)

from tables that may be wrong on a negligible set of pairs.
The solution is f(t) = s t + alpha + beta, g(x) = s x + alpha, h(y) = s y + beta.

The slope comes from a repeated-median fit of g, so up to half of g's points may be garbage.
Pairs are only compared where x + y is itself a node of f's grid
(an arithmetic x-grid and y-grid with a shared step are the usual choice).
"""

import dataclasses
import logging

import numpy

from obeq.core import masks
from obeq.core.gridfunction import GridFunction
from obeq.util import robust
from obeq.util import util
from obeq.util.errors import DegenerateGridError
from obeq.util.errors import DomainError
from obeq.util.errors import InsufficientDataError

DEFAULT_TOLERANCE = 1e-8
DEFAULT_MIN_PAIRS = 100

@dataclasses.dataclass(frozen = True)
class PexiderFit(object):
    """
    A fitted Pexider solution.
    `inlierFraction` is the share of checkable pairs (x + y on f's grid, all three values valid)
    that are unmasked and satisfy the equation to within the tolerance.
    `consistencyGap` is how far f's own intercept is from alpha + beta.
    """

    slope: float
    alpha: float
    beta: float
    inlierFraction: float = 1.0
    residualMedian: float = 0.0
    consistencyGap: float = 0.0
    pairsUsed: int = 0
    method: str = robust.METHOD_ROBUST

    def toDict(self):
        return {
            'slope': self.slope,
            'alpha': self.alpha,
            'beta': self.beta,
            'inlier_fraction': self.inlierFraction,
            'residual_median': self.residualMedian,
            'consistency_gap': self.consistencyGap,
            'pairs_used': self.pairsUsed,
            'method': self.method,
        }

def fitLine(fn, method = robust.METHOD_ROBUST, excluded = None):
    """
    Fit one table with a line. Returns (slope, intercept).
    Points that are invalid or flagged in `excluded` do not take part.
    """

    keep = numpy.array(fn.getValid())
    if (excluded is not None):
        keep &= ~numpy.asarray(excluded, dtype = bool)

    return robust.fitLine(fn.getGrid()[keep], fn.getValues()[keep], method)

def fitPexider(f, g, h, mask = None, tolerance = DEFAULT_TOLERANCE, method = robust.METHOD_ROBUST,
        minPairs = DEFAULT_MIN_PAIRS, cap = masks.DEFAULT_CAP):
    """
    Fit f(x + y) = g(x) + h(y).
    `mask` is an `obeq.core.masks.ExceptionalMask2D` on g's grid × h's grid (None for no mask).
    Heavy columns (rows) of the mask, see `obeq.core.masks.heavySections`, are left out of the
    fits for g (h).
    """

    if (mask is None):
        mask = masks.ExceptionalMask2D.empty(g.getGrid(), h.getGrid())

    if (mask.excluded.shape != (len(g), len(h))):
        raise DomainError('Mask shape %s does not match the tables (%d, %d).'
                % (str(mask.excluded.shape), len(g), len(h)))

    usable = ~mask.excluded & g.getValid()[:, numpy.newaxis] & h.getValid()[numpy.newaxis, :]
    pairs = int(numpy.sum(usable))
    if (pairs < minPairs):
        raise InsufficientDataError('The Pexider fit needs at least %d unmasked pairs, got %d.'
                % (minPairs, pairs), needed = minPairs, available = pairs)

    heavyColumns, heavyRows = masks.heavySections(mask, cap)
    heavyColumns = _keepTwo(g, heavyColumns)
    heavyRows = _keepTwo(h, heavyRows)

    if (method == robust.METHOD_LSTSQ):
        slope, alpha, beta = _jointLeastSquares(f, g, h, heavyColumns, heavyRows)
    else:
        slope, _ = fitLine(g, robust.METHOD_ROBUST, heavyColumns)

        x, gValues = _points(g, heavyColumns)
        y, hValues = _points(h, heavyRows)

        alpha = robust.lowerMedian(gValues - slope * x)
        beta = robust.lowerMedian(hValues - slope * y)

    t, fValues = _points(f)
    consistencyGap = abs(robust.center(fValues - slope * t, method) - (alpha + beta))

    inlierFraction = _inlierFraction(f, g, h, mask, tolerance)

    x, gValues = _points(g, heavyColumns)
    y, hValues = _points(h, heavyRows)
    residuals = numpy.concatenate([
        numpy.abs(gValues - slope * x - alpha),
        numpy.abs(hValues - slope * y - beta),
        numpy.abs(fValues - slope * t - alpha - beta),
    ])
    residualMedian = robust.lowerMedian(residuals)

    logging.debug('Pexider fit (%s): slope = %.12g, alpha = %.12g, beta = %.12g, inliers = %.4f.'
            % (method, slope, alpha, beta, inlierFraction))

    if (consistencyGap > tolerance):
        logging.debug('Pexider consistency gap %g exceeds the tolerance %g.'
                % (consistencyGap, tolerance))

    return PexiderFit(float(slope), float(alpha), float(beta), float(inlierFraction),
            float(residualMedian), float(consistencyGap), pairs, method)

def fitPexiderTail(f, g, h, mask, c, **kwargs):
    """
    Fit using only abscissae above c.
    """

    gTail = g.restrictAbove(c)
    hTail = h.restrictAbove(c)
    fTail = f.restrictAbove(c)

    if (mask is not None):
        mask = masks.restrictMask(mask, gTail.getGrid(), hTail.getGrid())

    return fitPexider(fTail, gTail, hTail, mask, **kwargs)

def halflineDeterminationCheck(fitTail, fitFull, c, tolerance = DEFAULT_TOLERANCE):
    """
    Whether the fit on the tail (c, infinity) reproduces the full fit.
    """

    for name in ('slope', 'alpha', 'beta'):
        tail = getattr(fitTail, name)
        full = getattr(fitFull, name)

        if (abs(tail - full) > tolerance * (1.0 + abs(full))):
            logging.debug('Tail fit above %g disagrees on %s: %.12g vs %.12g.'
                    % (c, name, tail, full))
            return False

    return True

def cauchyOddExtension(fn):
    """
    Extend F on the positive grid {step, 2 step, ..., n step} to the symmetric grid
    {-n step, ..., 0, ..., n step} by Phi(0) = 0 and Phi(-x) = -F(x).
    """

    step = fn.step()
    grid = fn.getGrid()

    if (step is None or abs(grid[0] - step) > util.SNAP_TOLERANCE * max(1.0, step)):
        raise DomainError('The odd extension needs a grid of the form {step, 2 step, ...}.')

    values = numpy.concatenate([-fn.getValues()[::-1], [0.0], fn.getValues()])
    valid = numpy.concatenate([fn.getValid()[::-1], [True], fn.getValid()])
    symmetric = numpy.concatenate([-grid[::-1], [0.0], grid])

    return GridFunction(symmetric, values, valid, positive = False)

def cauchyDefect(phi):
    """
    max |Phi(x + y) - Phi(x) - Phi(y)| over valid pairs whose sum is on the grid.
    """

    grid = phi.getGrid()
    values = phi.getValues()
    valid = phi.getValid()

    sums = grid[:, numpy.newaxis] + grid[numpy.newaxis, :]
    indices = util.nearestIndices(grid, sums)

    checkable = (indices >= 0) & valid[:, numpy.newaxis] & valid[numpy.newaxis, :]
    checkable &= valid[numpy.clip(indices, 0, None)]

    if (not numpy.any(checkable)):
        return 0.0

    defects = values[numpy.clip(indices, 0, None)] - values[:, numpy.newaxis] \
            - values[numpy.newaxis, :]

    return float(numpy.max(numpy.abs(defects[checkable])))

def _points(fn, excluded = None):
    keep = numpy.array(fn.getValid())
    if (excluded is not None):
        keep &= ~excluded

    return fn.getGrid()[keep], fn.getValues()[keep]

def _keepTwo(fn, heavy):
    """
    The heavy sections, or none of them when they would leave fewer than two valid abscissae.
    """

    if (numpy.unique(fn.getGrid()[fn.getValid() & ~heavy]).size < 2):
        logging.debug('Heavy sections cover the table; falling back to its valid points.')
        return numpy.zeros(heavy.shape, dtype = bool)

    return heavy

def _inlierFraction(f, g, h, mask, tolerance):
    x = g.getGrid()
    y = h.getGrid()

    indices = util.nearestIndices(f.getGrid(), x[:, numpy.newaxis] + y[numpy.newaxis, :])
    safe = numpy.clip(indices, 0, None)

    checkable = (indices >= 0) & g.getValid()[:, numpy.newaxis] & h.getValid()[numpy.newaxis, :]
    checkable &= f.getValid()[safe]

    total = int(numpy.sum(checkable))
    if (total == 0):
        return 0.0

    residuals = f.getValues()[safe] - g.getValues()[:, numpy.newaxis] \
            - h.getValues()[numpy.newaxis, :]
    inliers = checkable & ~mask.excluded & (numpy.abs(residuals) <= tolerance)

    return float(numpy.sum(inliers)) / total

def _jointLeastSquares(f, g, h, heavyColumns, heavyRows):
    """
    Least squares for (s, alpha, beta) in g = s x + alpha, h = s y + beta, f = s t + alpha + beta.
    """

    x, gValues = _points(g, heavyColumns)
    y, hValues = _points(h, heavyRows)
    t, fValues = _points(f)

    rows = [
        numpy.column_stack([x, numpy.ones_like(x), numpy.zeros_like(x)]),
        numpy.column_stack([y, numpy.zeros_like(y), numpy.ones_like(y)]),
        numpy.column_stack([t, numpy.ones_like(t), numpy.ones_like(t)]),
    ]

    design = numpy.concatenate(rows)
    target = numpy.concatenate([gValues, hValues, fValues])

    if (numpy.unique(design[:, 0]).size < 2):
        raise DegenerateGridError('A joint fit needs at least two distinct abscissae, got %d.'
                % (numpy.unique(design[:, 0]).size))

    solution = numpy.linalg.lstsq(design, target, rcond = None)[0]
    return float(solution[0]), float(solution[1]), float(solution[2])
