"""
Deciding whether a tabulated G is constant off a negligible set.

The characteristic profile w(t) = (1 / upper) * integral over (0, upper] of exp(i t G(y)) dy
has modulus one for every t exactly when G is almost everywhere constant,
and then w(t) = exp(i kappa t).
The integral is a composite trapezoid rule on the (irregular) grid;
masked points get no weight and the remaining weights are renormalized.
"""

import cmath
import dataclasses
import logging
import math

import numpy

from obeq.util import probability
from obeq.util import robust
from obeq.util.errors import DomainError
from obeq.util.errors import InsufficientDataError

MIN_POINTS = 16
DEFAULT_UPPER = 1.0
DEFAULT_T_LIST = (1.0, 2.5, 5.0, 10.0)
DEFAULT_CORRUPTION_FRACTION = 0.05
TOLERANCE_FLOOR = 1e-4

@dataclasses.dataclass(frozen = True)
class SemiconstantVerdict(object):
    isSemiconstant: bool
    kappaEstimate: float
    profileDeviation: float
    scalingDeviation: float = None
    phaseEstimate: float = None
    tolerance: float = None

    def toDict(self):
        return {
            'is_semiconstant': self.isSemiconstant,
            'kappa_estimate': self.kappaEstimate,
            'profile_deviation': self.profileDeviation,
            'scaling_deviation': self.scalingDeviation,
            'phase_estimate': self.phaseEstimate,
            'tolerance': self.tolerance,
        }

def defaultTolerance(corruptionFraction = DEFAULT_CORRUPTION_FRACTION):
    return 5.0 * corruptionFraction + TOLERANCE_FLOOR

def quadratureWeights(G, upper = DEFAULT_UPPER):
    """
    Normalized trapezoid weights for the grid points in (0, upper].
    The first node also carries the segment (0, x_0].
    Returns (indices, weights); invalid points have zero weight.
    """

    grid = G.getGrid()
    indices = numpy.nonzero((grid > 0) & (grid <= upper))[0]

    valid = G.getValid()[indices]
    if (numpy.sum(valid) < MIN_POINTS):
        raise InsufficientDataError('The profile needs at least %d valid points in (0, %g], got %d.'
                % (MIN_POINTS, upper, numpy.sum(valid)), needed = MIN_POINTS,
                available = int(numpy.sum(valid)))

    nodes = grid[indices]
    # Node k carries half of each neighboring interval.
    weights = numpy.zeros(nodes.size)
    gaps = numpy.diff(nodes)
    weights[:-1] += gaps / 2.0
    weights[1:] += gaps / 2.0
    weights[0] += nodes[0]

    weights[~valid] = 0.0

    return indices, probability.normalize(weights)

def characteristicProfile(G, t, upper = DEFAULT_UPPER):
    """
    w(t), the average of exp(i t G) over (0, upper].
    w(0) is exactly one.
    """

    indices, weights = quadratureWeights(G, upper)

    if (t == 0):
        return complex(1.0, 0.0)

    values = numpy.where(weights > 0, G.getValues()[indices], 0.0)
    return complex(numpy.sum(weights * numpy.exp(1j * t * values)))

def scalingConsistency(G, x, t, upper = DEFAULT_UPPER):
    """
    |x w(t) - integral over (0, x] of exp(i t G(u)) du|.
    Small when G(x y) = G(y), i.e. when the average over (0, x] equals the one over (0, upper].
    """

    if (not (x > 0)):
        raise DomainError('The scaling point must be positive, got %g.' % (x))

    if (x > G.getGrid()[-1] * (1.0 + 1e-12)):
        raise DomainError('The grid ends at %g, before the scaling point %g.'
                % (G.getGrid()[-1], x))

    return x * abs(characteristicProfile(G, t, upper) - characteristicProfile(G, t, x))

def isSemiconstant(G, tList = DEFAULT_T_LIST, tol = None,
        corruptionFraction = DEFAULT_CORRUPTION_FRACTION, upper = DEFAULT_UPPER):
    """
    Decide semi-constancy from max |1 - |w(t)|| over `tList`.
    The constant is the (lower) median of G's valid values;
    the phase arg w(t) / t at the smallest |t| is reported next to it.
    The scaling consistency at upper / 2 is reported as `scalingDeviation` and takes no part in
    the verdict.
    """

    nonzero = sorted([float(t) for t in tList if (t != 0)], key = abs)
    if (len(nonzero) < 2):
        raise DomainError('The verdict needs at least two nonzero t values, got %s.'
                % (list(tList)))

    if (tol is None):
        tol = defaultTolerance(corruptionFraction)

    profiles = [characteristicProfile(G, t, upper) for t in nonzero]
    profileDeviation = max([abs(1.0 - abs(w)) for w in profiles])

    kappa = robust.lowerMedian(G.getValues()[G.getValid()])
    phase = cmath.phase(profiles[0]) / nonzero[0]

    scalingDeviation = None
    try:
        scalingDeviation = max([scalingConsistency(G, upper / 2.0, t, upper) for t in nonzero])
    except InsufficientDataError:
        logging.debug('Too few points in (0, %g] for the scaling check.' % (upper / 2.0))

    verdict = bool(profileDeviation <= tol and math.isfinite(kappa))

    if (not verdict):
        logging.warning('Table is not semi-constant: profile deviation %g exceeds %g.'
                % (profileDeviation, tol))

    return SemiconstantVerdict(verdict, float(kappa), float(profileDeviation), scalingDeviation,
            float(phase), float(tol))
