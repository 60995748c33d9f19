import math

import numpy

from obeq.util import util
from obeq.util.errors import DomainError

# Relative tolerance for recognizing geometric / arithmetic spacing.
SPACING_TOLERANCE = 1e-9

class GridFunction(object):
    """
    A real-valued function tabulated on a strictly increasing abscissa grid,
    with a validity flag per grid point.
    Values at invalid points are kept (they may be garbage) but are never used by estimators.
    Non-finite values are always treated as invalid.

    Instances are immutable: the backing arrays are read-only and
    every transformation returns a new GridFunction.
    """

    def __init__(self, grid, values, valid = None, positive = True):
        grid = numpy.array(grid, dtype = float)
        values = numpy.array(values, dtype = float)

        if (grid.ndim != 1 or grid.size == 0):
            raise DomainError('A grid must be a non-empty 1-D sequence.')

        if (values.shape != grid.shape):
            raise DomainError('Grid has %d points but %d values were given.'
                    % (grid.size, values.size))

        if (not util.isStrictlyIncreasing(grid)):
            raise DomainError('Grid abscissae must be strictly increasing.')

        if (positive and grid[0] <= 0):
            raise DomainError('Grid abscissae must be positive, got %g.' % (grid[0]))

        if (valid is None):
            valid = numpy.ones(grid.shape, dtype = bool)
        else:
            valid = numpy.array(valid, dtype = bool)
            if (valid.shape != grid.shape):
                raise DomainError('Grid has %d points but %d validity flags were given.'
                        % (grid.size, valid.size))

        valid &= numpy.isfinite(values)

        for array in (grid, values, valid):
            array.setflags(write = False)

        self._grid = grid
        self._values = values
        self._valid = valid

    @staticmethod
    def fromFunction(grid, function, positive = True):
        """
        Tabulate a scalar function.
        Points where the function raises a ValueError or returns a non-finite value are invalid.
        """

        grid = numpy.asarray(grid, dtype = float)
        values = numpy.full(grid.shape, numpy.nan)

        for i in range(grid.size):
            try:
                values[i] = float(function(float(grid[i])))
            except (ValueError, OverflowError):
                pass

        return GridFunction(grid, values, positive = positive)

    def getGrid(self):
        return self._grid

    def getValues(self):
        return self._values

    def getValid(self):
        return self._valid

    def validCount(self):
        return int(numpy.sum(self._valid))

    def validPoints(self):
        """
        Returns (abscissae, values) restricted to the valid points.
        """

        return self._grid[self._valid], self._values[self._valid]

    def indexOf(self, x):
        """
        The index of the grid node at x, or None if x is not on the grid.
        """

        return util.nearestIndex(self._grid, x)

    def valueAt(self, x):
        """
        The tabulated value at the grid node x.
        Raises a DomainError if x is off-grid or the point is invalid.
        """

        index = self.indexOf(x)
        if (index is None):
            raise DomainError('%g is not on the grid.' % (x))

        if (not self._valid[index]):
            raise DomainError('The value at %g is not valid.' % (x))

        return float(self._values[index])

    def ratio(self):
        """
        The common ratio of a geometric grid, or None if the grid is not geometric.
        """

        if (self._grid.size < 2 or self._grid[0] <= 0):
            return None

        ratios = self._grid[1:] / self._grid[:-1]
        if (not numpy.allclose(ratios, ratios[0], rtol = SPACING_TOLERANCE, atol = 0)):
            return None

        return float(self._grid[-1] / self._grid[0]) ** (1.0 / (self._grid.size - 1))

    def step(self):
        """
        The common step of an arithmetic grid, or None if the grid is not arithmetic.
        """

        if (self._grid.size < 2):
            return None

        steps = numpy.diff(self._grid)
        scale = max(1.0, float(numpy.max(numpy.abs(self._grid))))
        if (numpy.max(numpy.abs(steps - steps[0])) > SPACING_TOLERANCE * scale):
            return None

        return float(self._grid[-1] - self._grid[0]) / (self._grid.size - 1)

    def ratioSteps(self, r):
        """
        The index shift m with grid[k + m] = r * grid[k] on a geometric grid.
        Raises a DomainError for non-geometric grids and off-grid ratios.
        """

        rho = self.ratio()
        if (rho is None):
            raise DomainError('Multiplicative shifts need a geometric grid.')

        if (r <= 0):
            raise DomainError('Ratios must be positive, got %g.' % (r))

        steps = int(round(math.log(r) / math.log(rho)))
        if (abs(rho ** steps - r) > SPACING_TOLERANCE * max(1.0, r) * max(1, abs(steps))):
            raise DomainError('Ratio %g is not a power of the grid ratio %g.' % (r, rho))

        return steps

    def withValues(self, values, valid = None):
        if (valid is None):
            valid = self._valid

        return GridFunction(self._grid, values, valid, positive = False)

    def withValid(self, valid):
        return GridFunction(self._grid, self._values, valid, positive = False)

    def restrict(self, keep):
        """
        Keep only the grid points where `keep` is True.
        """

        keep = numpy.asarray(keep, dtype = bool)
        return GridFunction(self._grid[keep], self._values[keep], self._valid[keep],
                positive = False)

    def restrictAbove(self, threshold):
        return self.restrict(self._grid > threshold)

    def restrictBelow(self, threshold):
        return self.restrict(self._grid <= threshold)

    def toDict(self):
        """
        The documented JSON shape: {grid, values, valid_flags}.
        Non-finite values are written as null.
        """

        values = [float(value) if numpy.isfinite(value) else None for value in self._values]

        return {
            'grid': [float(x) for x in self._grid],
            'values': values,
            'valid_flags': [bool(flag) for flag in self._valid],
        }

    @staticmethod
    def fromDict(data):
        for key in ('grid', 'values', 'valid_flags'):
            if (key not in data):
                raise ValueError("Grid function JSON is missing the '%s' field." % (key))

        values = [numpy.nan if value is None else value for value in data['values']]
        return GridFunction(data['grid'], values, data['valid_flags'], positive = False)

    def __len__(self):
        return int(self._grid.size)

    def __eq__(self, other):
        if (not isinstance(other, GridFunction)):
            return False

        return (numpy.array_equal(self._grid, other._grid)
                and numpy.array_equal(self._valid, other._valid)
                and numpy.array_equal(self._values[self._valid], other._values[other._valid]))

    def __hash__(self):
        return hash(util.digestArrays(self._grid, self._values, self._valid))

    def __str__(self):
        return 'GridFunction(%d points on [%g, %g], %d valid)' % (len(self), self._grid[0],
                self._grid[-1], self.validCount())

def geometricGrid(x0, rho, points):
    """
    x_k = x0 * rho^k for k = 0 .. points - 1.
    """

    if (x0 <= 0):
        raise DomainError('Grid start must be positive, got %g.' % (x0))

    if (rho <= 1):
        raise DomainError('Grid ratio must exceed 1, got %g.' % (rho))

    if (points < 2):
        raise DomainError('A grid needs at least two points, got %d.' % (points))

    return x0 * rho ** numpy.arange(points, dtype = float)

def arithmeticGrid(x0, step, points):
    """
    x_k = x0 + k * step for k = 0 .. points - 1.
    """

    if (step <= 0):
        raise DomainError('Grid step must be positive, got %g.' % (step))

    if (points < 2):
        raise DomainError('A grid needs at least two points, got %d.' % (points))

    return x0 + step * numpy.arange(points, dtype = float)
