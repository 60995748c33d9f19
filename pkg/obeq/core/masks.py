"""
Negligible ("exceptional") point sets on tabulation grids.

A 1-D mask marks grid points, a 2-D mask marks grid pairs.
Each mask carries the kind of ideal it stands in for:

 - `sparse_random`: independent Bernoulli exclusions, the stand-in for Lebesgue null sets.
 - `finite`: a handful of explicit points.
 - `bounded`: everything below a threshold.
 - `countable_surrogate`: a fixed sparse index pattern (every k-th point).

The 2-D masks also implement the section property used for plane sets
("M[x] is negligible for almost all x") and the three unimodular images
T1(x, y) = (y, x), T2(x, y) = (x + y, -y), T3(x, y) = (-x - y, x).
"""

import dataclasses
import logging

import numpy
import scipy.stats

from obeq.util import probability
from obeq.util import util
from obeq.util.errors import DomainError

KIND_SPARSE_RANDOM = 'sparse_random'
KIND_FINITE = 'finite'
KIND_BOUNDED = 'bounded'
KIND_COUNTABLE = 'countable_surrogate'
IDEAL_KINDS = [KIND_SPARSE_RANDOM, KIND_FINITE, KIND_BOUNDED, KIND_COUNTABLE]

# Kinds standing in for sigma-ideals (closed under countable unions).
SIGMA_KINDS = [KIND_SPARSE_RANDOM, KIND_COUNTABLE]

DEFAULT_FRACTION = 0.05
DEFAULT_CAP = 0.2
MAX_FRACTION = 0.5

# Tail probability of the binomial count a negligible section may reach by chance.
SECTION_LEVEL = 1e-3

# Members of a sigma-ideal contain no interval: no run of this many consecutive grid points.
DEFAULT_MIN_RUN = 3

UNIMODULAR_MAPS = ['T1', 'T2', 'T3']

# Significant digits used to group image points into sections.
SECTION_DIGITS = 12

@dataclasses.dataclass(frozen = True, eq = False)
class ExceptionalMask1D(object):
    grid: numpy.ndarray
    excluded: numpy.ndarray
    idealKind: str = KIND_SPARSE_RANDOM
    cap: float = DEFAULT_CAP
    threshold: float = None
    seed: int = None
    fraction: float = None

    def __post_init__(self):
        grid = numpy.array(self.grid, dtype = float)
        excluded = numpy.array(self.excluded, dtype = bool)

        _checkGrid(grid, 'grid')
        if (excluded.shape != grid.shape):
            raise DomainError('Mask has %d flags for %d grid points.' % (excluded.size, grid.size))

        _checkKind(self.idealKind)

        if (self.idealKind == KIND_SPARSE_RANDOM and excluded.mean() > self.cap):
            raise DomainError('Sparse mask excludes %.3f of the grid, above the cap %g.'
                    % (excluded.mean(), self.cap))

        if (self.idealKind == KIND_BOUNDED):
            if (self.threshold is None):
                raise DomainError('Bounded masks need a threshold.')

            if (numpy.any(grid[excluded] >= self.threshold)):
                raise DomainError('Bounded mask excludes points at or above its threshold %g.'
                        % (self.threshold))

        grid.setflags(write = False)
        excluded.setflags(write = False)
        object.__setattr__(self, 'grid', grid)
        object.__setattr__(self, 'excluded', excluded)

    @staticmethod
    def empty(grid, idealKind = KIND_SPARSE_RANDOM):
        grid = numpy.asarray(grid, dtype = float)
        threshold = None
        if (idealKind == KIND_BOUNDED):
            threshold = float(grid[0])

        return ExceptionalMask1D(grid, numpy.zeros(grid.shape, dtype = bool), idealKind,
                threshold = threshold)

    def isExcluded(self, index):
        return bool(self.excluded[index])

    def excludedFraction(self):
        return float(self.excluded.mean())

    def excludedPoints(self):
        return [float(x) for x in self.grid[self.excluded]]

    def toDict(self):
        return {
            'grid': [float(x) for x in self.grid],
            'excluded_indices': [int(i) for i in numpy.nonzero(self.excluded)[0]],
            'ideal_kind': self.idealKind,
            'seed': self.seed,
            'fraction': self.fraction,
            'threshold': self.threshold,
        }

    @staticmethod
    def fromDict(data):
        grid = numpy.asarray(data['grid'], dtype = float)
        excluded = numpy.zeros(grid.shape, dtype = bool)
        excluded[numpy.asarray(data['excluded_indices'], dtype = int)] = True

        return ExceptionalMask1D(grid, excluded, data.get('ideal_kind', KIND_SPARSE_RANDOM),
                threshold = data.get('threshold'), seed = data.get('seed'),
                fraction = data.get('fraction'))

    def __eq__(self, other):
        if (not isinstance(other, ExceptionalMask1D)):
            return False

        return (numpy.array_equal(self.grid, other.grid)
                and numpy.array_equal(self.excluded, other.excluded)
                and self.idealKind == other.idealKind)

@dataclasses.dataclass(frozen = True, eq = False)
class ExceptionalMask2D(object):
    """
    Excluded grid pairs: excluded[i, j] refers to (xGrid[i], yGrid[j]).
    """

    xGrid: numpy.ndarray
    yGrid: numpy.ndarray
    excluded: numpy.ndarray
    idealKind: str = KIND_SPARSE_RANDOM
    seed: int = None
    fraction: float = None

    def __post_init__(self):
        xGrid = numpy.array(self.xGrid, dtype = float)
        yGrid = numpy.array(self.yGrid, dtype = float)
        excluded = numpy.array(self.excluded, dtype = bool)

        _checkGrid(xGrid, 'x grid')
        _checkGrid(yGrid, 'y grid')
        _checkKind(self.idealKind)

        if (excluded.shape != (xGrid.size, yGrid.size)):
            raise DomainError('Mask shape %s does not match the grids (%d, %d).'
                    % (str(excluded.shape), xGrid.size, yGrid.size))

        for array in (xGrid, yGrid, excluded):
            array.setflags(write = False)

        object.__setattr__(self, 'xGrid', xGrid)
        object.__setattr__(self, 'yGrid', yGrid)
        object.__setattr__(self, 'excluded', excluded)

    @staticmethod
    def empty(xGrid, yGrid, idealKind = KIND_SPARSE_RANDOM):
        xGrid = numpy.asarray(xGrid, dtype = float)
        yGrid = numpy.asarray(yGrid, dtype = float)
        return ExceptionalMask2D(xGrid, yGrid, numpy.zeros((xGrid.size, yGrid.size), dtype = bool),
                idealKind)

    def isExcluded(self, i, j):
        return bool(self.excluded[i, j])

    def excludedCount(self):
        return int(numpy.sum(self.excluded))

    def excludedFraction(self):
        return float(self.excluded.mean())

    def excludedPoints(self):
        """
        The excluded pairs as a list of (x, y) tuples.
        """

        rows, cols = numpy.nonzero(self.excluded)
        return [(float(self.xGrid[i]), float(self.yGrid[j])) for i, j in zip(rows, cols)]

    def sectionFractions(self, axis = 0):
        """
        For axis 0: the excluded fraction of each x-column section M[x].
        For axis 1: the excluded fraction of each y-row section.
        """

        return self.excluded.mean(axis = 1 - axis)

    def toDict(self):
        rows, cols = numpy.nonzero(self.excluded)

        return {
            'x_grid': [float(x) for x in self.xGrid],
            'y_grid': [float(y) for y in self.yGrid],
            'excluded_indices': [[int(i), int(j)] for i, j in zip(rows, cols)],
            'ideal_kind': self.idealKind,
            'seed': self.seed,
            'fraction': self.fraction,
        }

    @staticmethod
    def fromDict(data):
        for key in ('x_grid', 'y_grid', 'excluded_indices'):
            if (key not in data):
                raise ValueError("Mask JSON is missing the '%s' field." % (key))

        xGrid = numpy.asarray(data['x_grid'], dtype = float)
        yGrid = numpy.asarray(data['y_grid'], dtype = float)
        excluded = numpy.zeros((xGrid.size, yGrid.size), dtype = bool)

        indices = numpy.asarray(data['excluded_indices'], dtype = int).reshape(-1, 2)
        excluded[indices[:, 0], indices[:, 1]] = True

        return ExceptionalMask2D(xGrid, yGrid, excluded, data.get('ideal_kind', KIND_SPARSE_RANDOM),
                seed = data.get('seed'), fraction = data.get('fraction'))

    def __eq__(self, other):
        if (not isinstance(other, ExceptionalMask2D)):
            return False

        return (numpy.array_equal(self.xGrid, other.xGrid)
                and numpy.array_equal(self.yGrid, other.yGrid)
                and numpy.array_equal(self.excluded, other.excluded))

@dataclasses.dataclass(frozen = True)
class IdealReport(object):
    """
    The outcome of `idealAxiomCheck`. Violations are described in `violations`.
    """

    kind: str
    unionClosed: bool
    hereditary: bool
    affineInvariant: bool
    proper: bool
    boundary: bool
    violations: tuple

    def passed(self):
        return (len(self.violations) == 0)

    def toDict(self):
        return dataclasses.asdict(self)

def generateSparseMask1d(grid, fraction = DEFAULT_FRACTION, seed = probability.DEFAULT_SEED,
        cap = DEFAULT_CAP):
    grid = numpy.asarray(grid, dtype = float)
    _checkFraction(fraction)

    excluded = probability.bernoulliMask(grid.shape, fraction, seed)

    # Trim the (rare) excess over the cap so the kind's invariant holds.
    limit = int(numpy.floor(cap * grid.size))
    indices = numpy.nonzero(excluded)[0]
    if (indices.size > limit):
        excluded[indices[limit:]] = False

    return ExceptionalMask1D(grid, excluded, KIND_SPARSE_RANDOM, cap = cap, seed = seed,
            fraction = fraction)

def generateFiniteMask1d(grid, points):
    """
    Exclude the grid nodes at the given points (off-grid points are ignored).
    """

    grid = numpy.asarray(grid, dtype = float)
    excluded = numpy.zeros(grid.shape, dtype = bool)

    indices = util.nearestIndices(grid, numpy.asarray(points, dtype = float))
    excluded[indices[indices >= 0]] = True

    return ExceptionalMask1D(grid, excluded, KIND_FINITE)

def generateBoundedMask1d(grid, threshold):
    """
    Exclude every grid point below the threshold.
    """

    grid = numpy.asarray(grid, dtype = float)
    return ExceptionalMask1D(grid, grid < threshold, KIND_BOUNDED, threshold = float(threshold))

def generateCountableMask1d(grid, period = 20, offset = 0):
    """
    Exclude every `period`-th grid point, starting at `offset`.
    """

    grid = numpy.asarray(grid, dtype = float)
    excluded = numpy.zeros(grid.shape, dtype = bool)
    excluded[offset::period] = True

    return ExceptionalMask1D(grid, excluded, KIND_COUNTABLE)

def generateSparseMask2d(xGrid, yGrid, fraction = DEFAULT_FRACTION,
        seed = probability.DEFAULT_SEED):
    """
    Exclude each grid pair independently with the given probability.
    """

    xGrid = numpy.asarray(xGrid, dtype = float)
    yGrid = numpy.asarray(yGrid, dtype = float)

    _checkGrid(xGrid, 'x grid')
    _checkGrid(yGrid, 'y grid')
    _checkFraction(fraction)

    excluded = probability.bernoulliMask((xGrid.size, yGrid.size), fraction, seed)

    mask = ExceptionalMask2D(xGrid, yGrid, excluded, KIND_SPARSE_RANDOM, seed = seed,
            fraction = fraction)

    logging.debug('Generated a %dx%d pair mask excluding %d pairs (target fraction %g).'
            % (xGrid.size, yGrid.size, mask.excludedCount(), fraction))

    return mask

def scaleMask(mask, r):
    """
    The mask of (1/r) M on the same grids: (x, y) is excluded iff (r x, r y) is an excluded node.
    Images that fall off the grids are not excluded.
    """

    if (not (r > 0)):
        raise DomainError('Scale factor must be positive, got %g.' % (r))

    rows = util.nearestIndices(mask.xGrid, r * mask.xGrid)
    cols = util.nearestIndices(mask.yGrid, r * mask.yGrid)

    excluded = numpy.zeros(mask.excluded.shape, dtype = bool)

    validRows = numpy.nonzero(rows >= 0)[0]
    validCols = numpy.nonzero(cols >= 0)[0]
    if (validRows.size > 0 and validCols.size > 0):
        excluded[numpy.ix_(validRows, validCols)] = mask.excluded[numpy.ix_(rows[validRows],
                cols[validCols])]

    return dataclasses.replace(mask, excluded = excluded)

def unionMask(first, second):
    if (not (numpy.array_equal(first.xGrid, second.xGrid)
            and numpy.array_equal(first.yGrid, second.yGrid))):
        raise DomainError('Only masks on the same grids can be joined.')

    return dataclasses.replace(first, excluded = first.excluded | second.excluded)

def restrictMask(mask, xGrid, yGrid):
    """
    The mask on sub-grids of its grids. Nodes of the new grids that are not nodes of the
    original grids are not excluded.
    """

    xGrid = numpy.asarray(xGrid, dtype = float)
    yGrid = numpy.asarray(yGrid, dtype = float)

    rows = util.nearestIndices(mask.xGrid, xGrid)
    cols = util.nearestIndices(mask.yGrid, yGrid)

    excluded = numpy.zeros((xGrid.size, yGrid.size), dtype = bool)
    validRows = numpy.nonzero(rows >= 0)[0]
    validCols = numpy.nonzero(cols >= 0)[0]
    if (validRows.size > 0 and validCols.size > 0):
        excluded[numpy.ix_(validRows, validCols)] = mask.excluded[numpy.ix_(rows[validRows],
                cols[validCols])]

    return ExceptionalMask2D(xGrid, yGrid, excluded, mask.idealKind, seed = mask.seed,
            fraction = mask.fraction)

def inducedPairMask(xMask, yMask):
    """
    The pairs touched by excluded points of a column mask and a row mask:
    (x, y) is excluded iff x is excluded in `xMask` or y is excluded in `yMask`.
    """

    excluded = xMask.excluded[:, numpy.newaxis] | yMask.excluded[numpy.newaxis, :]
    return ExceptionalMask2D(xMask.grid, yMask.grid, excluded, xMask.idealKind,
            seed = xMask.seed, fraction = xMask.fraction)

def sectionProperty(mask, cap = DEFAULT_CAP, axis = 0):
    """
    The section property of plane negligible sets: the fraction of sections whose excluded
    fraction exceeds `cap` is itself at most `cap`.
    """

    heavy = mask.sectionFractions(axis) > cap
    return bool(heavy.mean() <= cap)

def heavySections(mask, cap = DEFAULT_CAP, level = SECTION_LEVEL):
    """
    Returns boolean arrays (heavyColumns, heavyRows) of the sections that are not negligible.
    Sections excluded almost entirely (above 1 - cap) are heavy.
    The others are measured over the cross-sections that are not full, and are heavy when their
    excluded share is above `cap` and also above what the mask's own density explains:
    the upper `level` tail of a binomial count at that density.
    An axis on which every section would be heavy carries no section information,
    so none of its sections are reported.
    """

    columnShare = mask.sectionFractions(axis = 0)
    rowShare = mask.sectionFractions(axis = 1)

    fullColumns = columnShare > (1.0 - cap)
    fullRows = rowShare > (1.0 - cap)

    block = mask.excluded[numpy.ix_(~fullColumns, ~fullRows)]
    density = float(block.mean()) if (block.size > 0) else 0.0

    heavyColumns = numpy.array(fullColumns)
    if (not numpy.all(fullRows)):
        threshold = _sectionThreshold(density, int(numpy.sum(~fullRows)), cap, level)
        heavyColumns |= mask.excluded[:, ~fullRows].mean(axis = 1) > threshold

    heavyRows = numpy.array(fullRows)
    if (not numpy.all(fullColumns)):
        threshold = _sectionThreshold(density, int(numpy.sum(~fullColumns)), cap, level)
        heavyRows |= mask.excluded[~fullColumns, :].mean(axis = 0) > threshold

    if (numpy.all(heavyColumns)):
        heavyColumns[:] = False

    if (numpy.all(heavyRows)):
        heavyRows[:] = False

    return heavyColumns, heavyRows

def sectionMask(mask, axis = 0, cap = DEFAULT_CAP):
    """
    The 1-D mask of the sections (columns for axis 0, rows for axis 1) that are not negligible
    (see `heavySections`).
    """

    grid = mask.xGrid if (axis == 0) else mask.yGrid
    heavy = heavySections(mask, cap)[axis]

    return ExceptionalMask1D(grid, heavy, KIND_FINITE, cap = cap)

def unimodularImage(mask, which):
    """
    The exact image of the excluded pairs under T1, T2 or T3, as a list of (x, y) tuples.
    """

    points = numpy.asarray(mask.excludedPoints(), dtype = float).reshape(-1, 2)
    image = _applyUnimodular(points, which)

    return [(float(x), float(y)) for x, y in image]

def unimodularHypothesisCheck(mask, cap = DEFAULT_CAP):
    """
    Whether T(M) has the section property for T in {T1, T2, T3}.
    Sections of an image are measured against the image of the full grid product,
    so a section's excluded fraction is the share of its image points that are excluded.
    Returns a dict {map name: bool}.
    """

    xs, ys = numpy.meshgrid(mask.xGrid, mask.yGrid, indexing = 'ij')
    allPoints = numpy.column_stack([xs.ravel(), ys.ravel()])
    flags = mask.excluded.ravel()

    results = {}
    for which in UNIMODULAR_MAPS:
        image = _applyUnimodular(allPoints, which)
        keys = numpy.round(image[:, 0], SECTION_DIGITS)

        uniqueKeys, inverse = numpy.unique(keys, return_inverse = True)
        totals = numpy.bincount(inverse, minlength = uniqueKeys.size)
        excludedCounts = numpy.bincount(inverse, weights = flags.astype(float),
                minlength = uniqueKeys.size)

        heavy = (excludedCounts / totals) > cap
        results[which] = bool(heavy.mean() <= cap)

    return results

def idealAxiomCheck(sets, kind, grid, cap = DEFAULT_CAP, scales = (-2.0, 0.5, 3.0),
        shifts = (-1.0, 0.0, 2.5), seed = probability.DEFAULT_SEED, minRun = DEFAULT_MIN_RUN):
    """
    Check the ideal axioms on sample sets of the given kind, relative to a working grid:
    closure under finite unions, heredity (random subsets), invariance under x -> a x + b,
    properness (the union does not cover the grid) and, for sigma kinds,
    the boundary property (no member contains a run of `minRun` consecutive grid points).
    Violations are reported, never raised.
    """

    _checkKind(kind)
    grid = numpy.asarray(grid, dtype = float)
    sets = [numpy.unique(numpy.asarray(points, dtype = float)) for points in sets]
    generator = probability.getGenerator(seed)

    violations = []

    for index, points in enumerate(sets):
        if (not _isMember(points, kind, grid, cap)):
            violations.append('set %d is not a member of the %s ideal' % (index, kind))

    union = numpy.unique(numpy.concatenate(sets)) if (len(sets) > 0) else numpy.array([])
    unionClosed = _isMember(union, kind, grid, cap)
    if (not unionClosed):
        violations.append('the union of the sets is not a member')

    hereditary = True
    for index, points in enumerate(sets):
        subset = points[generator.random(points.size) < 0.5]
        if (not _isMember(subset, kind, grid, cap)):
            hereditary = False
            violations.append('a subset of set %d is not a member' % (index))

    affineInvariant = True
    for index, points in enumerate(sets):
        for scale in scales:
            for shift in shifts:
                if (not _isMember(scale * points + shift, kind, grid, cap)):
                    affineInvariant = False
                    violations.append('the image %g * set %d + %g is not a member'
                            % (scale, index, shift))

    covered = util.nearestIndices(grid, union) if (union.size > 0) else numpy.array([], dtype = int)
    proper = bool(numpy.unique(covered[covered >= 0]).size < grid.size)
    if (not proper):
        violations.append('the union covers the whole working grid (ideal is not proper)')

    boundary = True
    if (kind in SIGMA_KINDS):
        for index, points in enumerate(sets):
            if (_longestRun(points, grid) >= minRun):
                boundary = False
                violations.append('set %d contains %d or more consecutive grid points'
                        % (index, minRun))

    for violation in violations:
        logging.warning('Ideal axiom violation (%s): %s.' % (kind, violation))

    return IdealReport(kind, unionClosed, hereditary, affineInvariant, proper, boundary,
            tuple(violations))

def _isMember(points, kind, grid, cap):
    points = numpy.asarray(points, dtype = float)
    if (not numpy.all(numpy.isfinite(points))):
        return False

    if (kind == KIND_SPARSE_RANDOM):
        # Negligible: covers at most a `cap` share of the working grid.
        indices = util.nearestIndices(grid, points)
        return bool(numpy.unique(indices[indices >= 0]).size <= cap * grid.size)

    # Finite lists of finite reals are finite, bounded and countable.
    return True

def _longestRun(points, grid):
    indices = util.nearestIndices(grid, points)
    onGrid = numpy.zeros(grid.shape, dtype = bool)
    onGrid[indices[indices >= 0]] = True

    longest = 0
    current = 0
    for flag in onGrid:
        current = (current + 1) if flag else 0
        longest = max(longest, current)

    return longest

def _applyUnimodular(points, which):
    x = points[:, 0]
    y = points[:, 1]

    if (which == 'T1'):
        return numpy.column_stack([y, x])
    elif (which == 'T2'):
        return numpy.column_stack([x + y, -y])
    elif (which == 'T3'):
        return numpy.column_stack([-x - y, x])

    raise ValueError("Unknown unimodular map: '%s'. Expected one of %s." % (which, UNIMODULAR_MAPS))

def _checkGrid(grid, name):
    if (grid.ndim != 1 or grid.size == 0):
        raise DomainError('The %s must be a non-empty 1-D sequence.' % (name))

    if (not util.isStrictlyIncreasing(grid) or grid[0] <= 0):
        raise DomainError('The %s must be strictly increasing and positive.' % (name))

def _checkFraction(fraction):
    if (not (0 <= fraction < MAX_FRACTION)):
        raise DomainError('Exclusion fraction must lie in [0, %g), got %g.'
                % (MAX_FRACTION, fraction))

def _checkKind(kind):
    if (kind not in IDEAL_KINDS):
        raise DomainError("Unknown ideal kind: '%s'. Expected one of %s." % (kind, IDEAL_KINDS))

def _sectionThreshold(density, size, cap, level):
    """
    The section share above which a section of `size` cells is heavy at the given mask density.
    """

    if (size == 0 or density <= 0.0 or density >= 1.0):
        return cap

    count = scipy.stats.binom.isf(level, size, density)
    return max(cap, float(count) / size)
