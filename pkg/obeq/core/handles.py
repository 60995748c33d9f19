"""
Function handles for the general solution family:
additive functions A(x + y) = A(x) + A(y) and logarithmic type functions L(xy) = L(x) + L(y).

Measurable representatives are the linear and the kappa * log handles.
`LatticeAdditive` is additive but not linear: it is evaluated exactly on Q(sqrt 2)
and declines every other input.
"""

import abc
import fractions
import math

from obeq.core.field import QuadraticSurd
from obeq.util import probability
from obeq.util import reflection
from obeq.util.errors import DomainError

KIND_ADDITIVE = 'additive'
KIND_LOGARITHMIC = 'logarithmic'

DEFAULT_CHECK_SAMPLES = 64
CHECK_TOLERANCE = 1e-9

class SolutionHandle(abc.ABC):
    """
    A handle maps a positive point to a real value.
    Handles must raise a `obeq.util.errors.DomainError` for points outside their evaluable domain.

    Non-abstract children should make sure that their constructors accept keyword arguments only,
    since handles are typically created reflexively from configuration.
    """

    kind = None

    @abc.abstractmethod
    def __call__(self, x):
        pass

    @abc.abstractmethod
    def samples(self, count, seed = probability.DEFAULT_SEED):
        """
        Return `count` points of the evaluable domain, used to check the handle's identity.
        """

        pass

    @abc.abstractmethod
    def getArgs(self):
        pass

    def toDict(self):
        return {
            'name': type(self).__name__,
            'args': self.getArgs(),
        }

    @staticmethod
    def loadHandle(name, args = None):
        """
        Load a handle with the given class name.
        The name can be fully qualified or just the bare class name.
        """

        if (args is None):
            args = {}

        handleClass = reflection.loadSubclass(SolutionHandle, name, 'obeq.core')
        return handleClass(**args)

    @staticmethod
    def fromDict(data):
        return SolutionHandle.loadHandle(data['name'], data.get('args', {}))

class LinearAdditive(SolutionHandle):
    """
    The measurable additive function A(x) = slope * x.
    """

    kind = KIND_ADDITIVE

    def __init__(self, slope = 0.0):
        self.slope = float(slope)

    def __call__(self, x):
        _checkPositive(x)
        return self.slope * float(x)

    def samples(self, count, seed = probability.DEFAULT_SEED):
        generator = probability.getGenerator(seed)
        return [float(x) for x in 10.0 ** generator.uniform(-2, 2, size = count)]

    def getArgs(self):
        return {'slope': self.slope}

class LatticeAdditive(SolutionHandle):
    """
    A(q1 + q2 sqrt 2) = u * q1 + v * q2 for rational q1, q2.
    This is additive on Q(sqrt 2) and, unless v = u sqrt 2 (impossible for rational u, v
    other than zero), not the restriction of any linear function.
    Only exact `obeq.core.field.QuadraticSurd`, int and Fraction inputs are accepted.
    """

    kind = KIND_ADDITIVE

    def __init__(self, u = 3, v = 5, box = 50):
        self.u = fractions.Fraction(u)
        self.v = fractions.Fraction(v)
        self.box = int(box)

    def __call__(self, x):
        if (isinstance(x, (int, fractions.Fraction))):
            x = QuadraticSurd(x)

        if (not isinstance(x, QuadraticSurd)):
            raise DomainError('The lattice additive function is only evaluable on Q(sqrt 2),'
                    + ' got %r.' % (x))

        return self.u * x.rational + self.v * x.irrational

    def samples(self, count, seed = probability.DEFAULT_SEED):
        generator = probability.getGenerator(seed)

        points = []
        while (len(points) < count):
            q1, q2 = generator.integers(-self.box, self.box + 1, size = 2)
            denominator = int(generator.integers(1, 8))
            point = QuadraticSurd(fractions.Fraction(int(q1), denominator), int(q2))
            if (point.sign() > 0):
                points.append(point)

        return points

    def getArgs(self):
        return {'u': str(self.u), 'v': str(self.v), 'box': self.box}

class KappaLogarithm(SolutionHandle):
    """
    The measurable logarithmic type function L(x) = kappa * log(x).
    For kappa == 0 it returns the exact integer 0, so exact computations stay exact.
    """

    kind = KIND_LOGARITHMIC

    def __init__(self, kappa = 0.0):
        self.kappa = float(kappa)

    def __call__(self, x):
        _checkPositive(x)

        if (self.kappa == 0):
            return 0

        return self.kappa * math.log(float(x))

    def samples(self, count, seed = probability.DEFAULT_SEED):
        generator = probability.getGenerator(seed)
        return [float(x) for x in 10.0 ** generator.uniform(-2, 2, size = count)]

    def getArgs(self):
        return {'kappa': self.kappa}

def checkAdditive(handle, count = DEFAULT_CHECK_SAMPLES, seed = probability.DEFAULT_SEED):
    """
    Returns the largest relative violation of A(x + y) = A(x) + A(y) over sampled pairs.
    """

    points = handle.samples(2 * count, seed = seed)
    worst = 0.0

    for x, y in zip(points[0::2], points[1::2]):
        left = handle(x + y)
        right = handle(x) + handle(y)
        scale = 1.0 + abs(float(left)) + abs(float(right))
        worst = max(worst, abs(float(left - right)) / scale)

    return worst

def checkLogarithmic(handle, count = DEFAULT_CHECK_SAMPLES, seed = probability.DEFAULT_SEED):
    """
    Returns the largest relative violation of L(xy) = L(x) + L(y) over sampled pairs.
    """

    points = handle.samples(2 * count, seed = seed)
    worst = 0.0

    for x, y in zip(points[0::2], points[1::2]):
        left = handle(x * y)
        right = handle(x) + handle(y)
        scale = 1.0 + abs(float(left)) + abs(float(right))
        worst = max(worst, abs(float(left - right)) / scale)

    return worst

def _checkPositive(x):
    try:
        value = float(x)
    except (TypeError, ValueError):
        raise DomainError('Expected a real number, got %r.' % (x))

    if (not math.isfinite(value) or value <= 0):
        raise DomainError('Expected a positive finite number, got %r.' % (x))
