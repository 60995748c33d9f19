"""
Decide whether one tabulated function is constant almost everywhere on (0, upper].
Writes verdict.json.
"""

import logging
import sys

from obeq.bin import arguments
from obeq.core import semiconstant
from obeq.util import serialization

NAME = 'semiconstant'

DEFAULTS = {
    'table': None,
    'tList': list(semiconstant.DEFAULT_T_LIST),
    'corruptionFraction': semiconstant.DEFAULT_CORRUPTION_FRACTION,
    'upper': semiconstant.DEFAULT_UPPER,
}

def readCommand(argv):
    parser = arguments.getParser(__doc__, NAME)

    parser.add_argument('--table', dest = 'table',
            action = 'store', type = str, default = None,
            help = 'the grid function JSON to test (required)')

    parser.add_argument('--t-list', dest = 'tList',
            action = 'store', type = str, default = None,
            help = 'comma separated frequencies t of w(t) (default: %s)'
                % (','.join(['%g' % (t) for t in semiconstant.DEFAULT_T_LIST])))

    parser.add_argument('--corruption-fraction', dest = 'corruptionFraction',
            action = 'store', type = float, default = None,
            help = 'the tolerated corrupted fraction, sets the default tolerance (default: %g)'
                % (semiconstant.DEFAULT_CORRUPTION_FRACTION))

    parser.add_argument('--upper', dest = 'upper',
            action = 'store', type = float, default = None,
            help = 'the integration window is (0, upper] (default: %g)'
                % (semiconstant.DEFAULT_UPPER))

    options = arguments.parseArgs(parser, argv)
    return arguments.resolveConfig(NAME, options, DEFAULTS), options

def run(argv):
    config, options = readCommand(argv)

    if (config.get('table') is None):
        raise ValueError('A table to test is required (--table).')

    paths = {'table': config.get('table')}
    if (options.config is not None):
        paths['config'] = options.config

    digests = arguments.digestInputs(paths)
    table = serialization.loadGridFunction(config.get('table'))

    verdict = semiconstant.isSemiconstant(table, arguments.parseFloatList(config.get('tList')),
            tol = config.tolerance,
            corruptionFraction = float(config.get('corruptionFraction')),
            upper = float(config.get('upper')))

    data = arguments.envelope(config, digests)
    data.update(verdict.toDict())

    path = arguments.outputPath(config, 'verdict.json')
    serialization.writeJson(path, data)

    logging.info('Semi-constant: %s (kappa = %g, profile deviation %g), wrote %s.'
            % (verdict.isSemiconstant, verdict.kappaEstimate, verdict.profileDeviation, path))

    return verdict

def main(argv):
    """
    Entry point for the semiconstant command.
    Returns the exit code.
    """

    return arguments.runCommand(run, argv)

if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
