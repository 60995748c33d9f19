"""
Robust (median based) and least-squares line estimators.
Medians break ties by taking the lower of the two middle values,
so every estimate is an actual data value (or slope between two data points)
and is reproducible bit-for-bit.
"""

import numpy

from obeq.util.errors import DegenerateGridError
from obeq.util.errors import InsufficientDataError

METHOD_ROBUST = 'robust'
METHOD_LSTSQ = 'lstsq'
METHODS = [METHOD_ROBUST, METHOD_LSTSQ]

def lowerMedian(values):
    """
    The median of the finite entries of `values`, using the lower middle value for even counts.
    """

    values = numpy.asarray(values, dtype = float).ravel()
    values = values[numpy.isfinite(values)]

    if (values.size == 0):
        raise InsufficientDataError('Median of an empty set.', needed = 1, available = 0)

    middle = (values.size - 1) // 2
    return float(numpy.partition(values, middle)[middle])

def medianAbsoluteDeviation(values, center = None):
    values = numpy.asarray(values, dtype = float)
    if (center is None):
        center = lowerMedian(values)

    return lowerMedian(numpy.abs(values - center))

def repeatedMedianSlope(x, y):
    """
    Siegel's repeated-median slope.
    For every point take the (lower) median of the slopes to all other points,
    then return the (lower) median of those medians.
    Non-finite y values are ignored.

    Breakdown point is 50%: as long as a strict majority of the points lie exactly on a line,
    the slope of that line is returned.
    """

    x, y = _finitePairs(x, y)

    if (numpy.unique(x).size < 2):
        raise DegenerateGridError('A slope needs at least two distinct abscissae, got %d.'
                % (numpy.unique(x).size))

    dx = x[numpy.newaxis, :] - x[:, numpy.newaxis]
    dy = y[numpy.newaxis, :] - y[:, numpy.newaxis]

    slopes = numpy.full(dx.shape, numpy.nan)
    numpy.divide(dy, dx, out = slopes, where = (dx != 0))

    # NaNs sort to the end of each row.
    slopes.sort(axis = 1)
    counts = numpy.sum(~numpy.isnan(slopes), axis = 1)

    rows = numpy.nonzero(counts > 0)[0]
    rowMedians = slopes[rows, (counts[rows] - 1) // 2]

    return lowerMedian(rowMedians)

def robustLine(x, y):
    """
    Returns (slope, intercept): repeated-median slope and median intercept.
    """

    x, y = _finitePairs(x, y)

    slope = repeatedMedianSlope(x, y)
    intercept = lowerMedian(y - slope * x)

    return slope, intercept

def leastSquaresLine(x, y):
    """
    Returns (slope, intercept) of the ordinary least-squares line.
    """

    x, y = _finitePairs(x, y)

    if (numpy.unique(x).size < 2):
        raise DegenerateGridError('A slope needs at least two distinct abscissae, got %d.'
                % (numpy.unique(x).size))

    design = numpy.column_stack([x, numpy.ones_like(x)])
    solution = numpy.linalg.lstsq(design, y, rcond = None)[0]

    return float(solution[0]), float(solution[1])

def fitLine(x, y, method = METHOD_ROBUST):
    if (method == METHOD_ROBUST):
        return robustLine(x, y)
    elif (method == METHOD_LSTSQ):
        return leastSquaresLine(x, y)

    raise ValueError("Unknown fit method: '%s'. Expected one of %s." % (method, METHODS))

def center(values, method = METHOD_ROBUST):
    """
    Location estimate: lower median (robust) or mean (least squares).
    """

    if (method == METHOD_LSTSQ):
        values = numpy.asarray(values, dtype = float)
        values = values[numpy.isfinite(values)]
        if (values.size == 0):
            raise InsufficientDataError('Mean of an empty set.', needed = 1, available = 0)

        return float(numpy.mean(values))

    return lowerMedian(values)

def ratioThroughOrigin(x, y, method = METHOD_ROBUST):
    """
    Estimate k in y = k * x.
    Robust: the median of the ratios y / x. Least squares: sum(xy) / sum(x^2).
    """

    x, y = _finitePairs(x, y)
    keep = (x != 0)
    x = x[keep]
    y = y[keep]

    if (x.size == 0):
        raise InsufficientDataError('No usable (nonzero) abscissae.', needed = 1, available = 0)

    if (method == METHOD_LSTSQ):
        return float(numpy.dot(x, y) / numpy.dot(x, x))

    return lowerMedian(y / x)

def _finitePairs(x, y):
    x = numpy.asarray(x, dtype = float).ravel()
    y = numpy.asarray(y, dtype = float).ravel()

    if (x.size != y.size):
        raise ValueError('Mismatched lengths: %d abscissae and %d values.' % (x.size, y.size))

    keep = numpy.isfinite(x) & numpy.isfinite(y)
    return x[keep], y[keep]
