"""
Various utilities for working with seeded randomness and weights.
All randomness in obeq flows through numpy generators built here,
so that a run is fully determined by its seeds.
"""

import math

import numpy

DEFAULT_SEED = 0

def normalize(weights):
    """
    Normalize a non-negative weight vector by dividing each value by the sum of all values.
    A vector summing to zero is returned unchanged.
    """

    weights = numpy.asarray(weights, dtype = float)

    total = float(numpy.sum(weights))
    if (math.isclose(total, 0)):
        return weights

    return weights / total

def getGenerator(seed = DEFAULT_SEED):
    """
    Get a numpy random generator for the given seed.
    A `None` seed falls back to `DEFAULT_SEED` rather than to OS entropy.
    """

    if (seed is None):
        seed = DEFAULT_SEED

    return numpy.random.default_rng(int(seed))

def spawnGenerators(seed, count):
    """
    Get `count` independent generators derived from one seed.
    The streams do not depend on the order (or thread) they are consumed in.
    """

    if (seed is None):
        seed = DEFAULT_SEED

    sequence = numpy.random.SeedSequence(int(seed))
    return [numpy.random.default_rng(child) for child in sequence.spawn(count)]

def bernoulliMask(shape, probability, seed):
    """
    A boolean array where each entry is independently True with the given probability.
    """

    generator = getGenerator(seed)
    return generator.random(shape) < probability

def uniformGarbage(count, low, high, seed):
    """
    Draw `count` garbage values uniformly from [low, high].
    """

    generator = getGenerator(seed)
    return generator.uniform(low, high, size = count)

def deriveSeeds(seed, count):
    """
    `count` independent integer seeds derived from one seed, for components that record their seed.
    """

    if (seed is None):
        seed = DEFAULT_SEED

    sequence = numpy.random.SeedSequence(int(seed))
    return [int(child.generate_state(1)[0]) for child in sequence.spawn(count)]
