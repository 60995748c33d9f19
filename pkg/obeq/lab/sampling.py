"""
Seeded sample generation and sample files.
"""

import csv
import dataclasses
import math

import numpy

from obeq.util import probability
from obeq.util.errors import DomainError
from obeq.util.errors import InsufficientDataError

CSV_HEADERS = ['x', 'y']

@dataclasses.dataclass(frozen = True)
class GammaSpec(object):
    """
    The gamma law with density rate^shape / Gamma(shape) x^(shape - 1) exp(-rate x)
    on (0, infinity).
    """

    shape: float
    rate: float = 1.0

    def __post_init__(self):
        for name in ('shape', 'rate'):
            value = float(getattr(self, name))
            if (not (math.isfinite(value) and value > 0)):
                raise DomainError('Gamma %s must be positive, got %r.' % (name, value))

            object.__setattr__(self, name, value)

    def mean(self):
        return self.shape / self.rate

    def toDict(self):
        return dataclasses.asdict(self)

    @staticmethod
    def fromDict(data):
        return GammaSpec(data['shape'], data.get('rate', 1.0))

def sampleGamma(spec, n, seed = probability.DEFAULT_SEED):
    """
    `n` independent draws from the gamma law.
    """

    if (n < 1):
        raise InsufficientDataError('Need a positive sample size, got %d.' % (n),
                needed = 1, available = n)

    generator = probability.getGenerator(seed)
    return generator.gamma(spec.shape, 1.0 / spec.rate, size = int(n))

def sampleGammaPair(specX, specY, n, seed = probability.DEFAULT_SEED):
    """
    Independent samples of X and Y, drawn from separate streams of one seed.
    """

    streamX, streamY = probability.spawnGenerators(seed, 2)

    if (n < 1):
        raise InsufficientDataError('Need a positive sample size, got %d.' % (n),
                needed = 1, available = n)

    x = streamX.gamma(specX.shape, 1.0 / specX.rate, size = int(n))
    y = streamY.gamma(specY.shape, 1.0 / specY.rate, size = int(n))

    return x, y

def lognormalSamples(n, seed = probability.DEFAULT_SEED, mean = 0.0, sigma = 1.0):
    """
    Independent lognormal X and Y, for which U = X + Y and V = X / (X + Y) are dependent.
    """

    if (n < 1):
        raise InsufficientDataError('Need a positive sample size, got %d.' % (n),
                needed = 1, available = n)

    streamX, streamY = probability.spawnGenerators(seed, 2)
    return (streamX.lognormal(mean, sigma, size = int(n)),
            streamY.lognormal(mean, sigma, size = int(n)))

def transformUV(x, y):
    """
    U = X + Y and V = X / (X + Y).
    """

    x = numpy.asarray(x, dtype = float)
    y = numpy.asarray(y, dtype = float)

    if (x.shape != y.shape):
        raise DomainError('Samples differ in length: %d and %d.' % (x.size, y.size))

    if (not (numpy.all(x > 0) and numpy.all(y > 0))):
        raise DomainError('All samples must be positive.')

    u = x + y
    return u, x / u

def readSamplesCsv(path):
    """
    Read paired samples from a CSV with the header `x,y`.
    Returns (x, y) arrays.
    """

    x = []
    y = []

    with open(path, 'r', newline = '') as file:
        reader = csv.DictReader(file)
        if (reader.fieldnames is None or list(reader.fieldnames[:2]) != CSV_HEADERS):
            raise ValueError("Sample file '%s' must start with the header %s."
                    % (path, ','.join(CSV_HEADERS)))

        for row in reader:
            try:
                x.append(float(row['x']))
                y.append(float(row['y']))
            except (TypeError, ValueError):
                raise ValueError("Sample file '%s' has a bad row on line %d."
                        % (path, reader.line_num))

    return numpy.array(x), numpy.array(y)

def writeSamplesCsv(path, x, y):
    with open(path, 'w', newline = '') as file:
        writer = csv.writer(file)
        writer.writerow(CSV_HEADERS)
        for pair in zip(x, y):
            writer.writerow(['%.17g' % (value) for value in pair])
