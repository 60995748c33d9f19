"""
Corrupt tabulated a, b, c, d on sparse random exceptional sets.

Reads a.json, b.json, c.json and d.json from the input directory.
Each table is overwritten with uniform garbage on a random subset of its grid points
(each point independently with probability --fraction). The garbage stays flagged as valid:
estimators must cope with it, or be told where it is through the mask files.

Writes the corrupted tables, their masks (mask_a.json .. mask_d.json),
and the pair mask (mask.json) of the pairs touched by corrupted a or b entries.
"""

import logging
import os
import sys

import numpy

from obeq.bin import arguments
from obeq.core import masks
from obeq.util import probability
from obeq.util import serialization

NAME = 'corrupt'

TABLE_NAMES = ['a', 'b', 'c', 'd']

DEFAULT_GARBAGE = 1.0e6

DEFAULTS = {
    'input': '.',
    'fraction': masks.DEFAULT_FRACTION,
    'cap': masks.DEFAULT_CAP,
    'garbage': DEFAULT_GARBAGE,
}

def readCommand(argv):
    parser = arguments.getParser(__doc__, NAME)

    parser.add_argument('-i', '--input', dest = 'input',
            action = 'store', type = str, default = None,
            help = 'the directory holding a.json .. d.json (default: the current directory)')

    parser.add_argument('-f', '--fraction', dest = 'fraction',
            action = 'store', type = float, default = None,
            help = 'the probability that a point is corrupted (default: %g)'
                % (masks.DEFAULT_FRACTION))

    parser.add_argument('--cap', dest = 'cap',
            action = 'store', type = float, default = None,
            help = 'the largest fraction a negligible set may cover (default: %g)'
                % (masks.DEFAULT_CAP))

    parser.add_argument('--garbage', dest = 'garbage',
            action = 'store', type = float, default = None,
            help = 'garbage is uniform on [-garbage, garbage] (default: %g)' % (DEFAULT_GARBAGE))

    options = arguments.parseArgs(parser, argv)
    return arguments.resolveConfig(NAME, options, DEFAULTS), options

def corruptTable(table, mask, magnitude, seed):
    """
    Overwrite the excluded points of a table with uniform garbage, keeping them flagged valid.
    """

    values = numpy.array(table.getValues())
    indices = numpy.nonzero(mask.excluded)[0]

    values[indices] = probability.uniformGarbage(indices.size, -magnitude, magnitude, seed)
    valid = numpy.array(table.getValid())
    valid[indices] = True

    return table.withValues(values, valid)

def run(argv):
    config, options = readCommand(argv)

    fraction = float(config.get('fraction'))
    cap = float(config.get('cap'))
    magnitude = float(config.get('garbage'))

    if (not (0.0 < cap < masks.MAX_FRACTION)):
        raise ValueError('The cap must lie in (0, %g), got %g.' % (masks.MAX_FRACTION, cap))

    if (not (0.0 <= fraction <= cap)):
        raise ValueError('The corruption fraction %g exceeds the cap %g.' % (fraction, cap))

    if (not (magnitude > 0)):
        raise ValueError('The garbage magnitude must be positive, got %g.' % (magnitude))

    paths = {name: os.path.join(config.get('input'), '%s.json' % (name))
            for name in TABLE_NAMES}
    if (options.config is not None):
        paths['config'] = options.config

    digests = arguments.digestInputs(paths)
    tables = {name: serialization.loadGridFunction(paths[name]) for name in TABLE_NAMES}

    seeds = probability.deriveSeeds(config.seed, 2 * len(TABLE_NAMES))
    metadata = arguments.envelope(config, digests)

    tableMasks = {}
    for index, name in enumerate(TABLE_NAMES):
        table = tables[name]
        mask = masks.generateSparseMask1d(table.getGrid(), fraction, seeds[index], cap = cap)
        tableMasks[name] = mask

        corrupted = corruptTable(table, mask, magnitude, seeds[len(TABLE_NAMES) + index])

        serialization.saveGridFunction(arguments.outputPath(config, '%s.json' % (name)),
                corrupted, metadata)
        serialization.saveMask(arguments.outputPath(config, 'mask_%s.json' % (name)), mask,
                metadata)

        logging.debug('Corrupted %d of %d points of %s.'
                % (int(numpy.sum(mask.excluded)), len(table), name))

    pairMask = masks.inducedPairMask(tableMasks['a'], tableMasks['b'])
    path = arguments.outputPath(config, 'mask.json')
    serialization.saveMask(path, pairMask, metadata)

    logging.info('Corrupted tables with fraction %g; the pair mask excludes %d pairs (%s).'
            % (fraction, pairMask.excludedCount(), path))

    return tableMasks, pairMask

def main(argv):
    """
    Entry point for the corrupt command.
    Returns the exit code.
    """

    return arguments.runCommand(run, argv)

if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
