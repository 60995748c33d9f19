"""
Distance-correlation test of independence with a permutation p-value.
"""

import dataclasses
import logging

import numpy
import scipy.spatial.distance

from obeq.util import probability
from obeq.util.errors import DomainError
from obeq.util.errors import InsufficientDataError

MIN_SAMPLES = 200
MIN_PERMUTATIONS = 199
DEFAULT_PERMUTATIONS = 999

# The statistic costs O(n^2) memory and time, larger samples are subsampled.
DEFAULT_MAX_POINTS = 1000
MAX_POINTS_LIMIT = 2000

@dataclasses.dataclass(frozen = True)
class IndependenceResult(object):
    pValue: float
    statistic: float
    permutations: int
    sampleSize: int
    usedSize: int
    seed: int

    def subsampled(self):
        return self.usedSize < self.sampleSize

    def toDict(self):
        return {
            'p_value': self.pValue,
            'statistic': self.statistic,
            'permutations': self.permutations,
            'sample_size': self.sampleSize,
            'used_size': self.usedSize,
            'subsampled': self.subsampled(),
            'seed': self.seed,
        }

def distanceCorrelation(u, v):
    """
    The (squared-root normalized) sample distance correlation of two 1-D samples.
    """

    centeredU = _centeredDistances(u)
    centeredV = _centeredDistances(v)

    return _correlation(centeredU, centeredV)

def independenceTest(u, v, permutations = DEFAULT_PERMUTATIONS, seed = probability.DEFAULT_SEED,
        maxPoints = DEFAULT_MAX_POINTS):
    """
    Permutation test of the independence of u and v.
    Returns an `IndependenceResult` with p = (1 + #{permuted >= observed}) / (1 + permutations).
    """

    u = numpy.asarray(u, dtype = float).ravel()
    v = numpy.asarray(v, dtype = float).ravel()

    if (u.size != v.size):
        raise DomainError('Samples differ in length: %d and %d.' % (u.size, v.size))

    if (u.size < MIN_SAMPLES):
        raise InsufficientDataError('The independence test needs at least %d pairs, got %d.'
                % (MIN_SAMPLES, u.size), needed = MIN_SAMPLES, available = u.size)

    if (permutations < MIN_PERMUTATIONS):
        raise DomainError('The independence test needs at least %d permutations, got %d.'
                % (MIN_PERMUTATIONS, permutations))

    if (not (MIN_SAMPLES <= maxPoints <= MAX_POINTS_LIMIT)):
        raise DomainError('The subsample size must lie in [%d, %d], got %d.'
                % (MIN_SAMPLES, MAX_POINTS_LIMIT, maxPoints))

    generator = probability.getGenerator(seed)

    size = u.size
    if (size > maxPoints):
        keep = numpy.sort(generator.choice(size, maxPoints, replace = False))
        u = u[keep]
        v = v[keep]

    centeredU = _centeredDistances(u)
    centeredV = _centeredDistances(v)

    statistic = _correlation(centeredU, centeredV)

    # The normalization does not change under permutations, so compare the raw covariances.
    observed = numpy.vdot(centeredU, centeredV)
    tolerance = 1e-12 * abs(observed)

    exceed = 0
    for _ in range(int(permutations)):
        order = generator.permutation(u.size)
        permuted = numpy.vdot(centeredU, centeredV[numpy.ix_(order, order)])
        if (permuted >= observed - tolerance):
            exceed += 1

    pValue = (1.0 + exceed) / (1.0 + permutations)

    logging.debug('Independence test on %d of %d pairs: dCor = %.6f, p = %.6f.'
            % (u.size, size, statistic, pValue))

    return IndependenceResult(float(pValue), float(statistic), int(permutations), int(size),
            int(u.size), seed)

def _centeredDistances(values):
    values = numpy.asarray(values, dtype = float).reshape(-1, 1)
    distances = scipy.spatial.distance.squareform(
            scipy.spatial.distance.pdist(values, metric = 'euclidean'))

    return distances - distances.mean(axis = 0)[numpy.newaxis, :] \
            - distances.mean(axis = 1)[:, numpy.newaxis] + distances.mean()

def _correlation(centeredU, centeredV):
    n2 = centeredU.size

    covariance = numpy.vdot(centeredU, centeredV) / n2
    varianceU = numpy.vdot(centeredU, centeredU) / n2
    varianceV = numpy.vdot(centeredV, centeredV) / n2

    if (varianceU <= 0 or varianceV <= 0):
        return 0.0

    return float(numpy.sqrt(max(covariance, 0.0)) / numpy.sqrt(numpy.sqrt(varianceU * varianceV)))
