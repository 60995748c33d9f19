"""
Tabulate a solution of the additive equation on a geometric grid.

The solution is given by exactly one of:
 --params 'lambda=-1,kappa1=1,kappa2=2,alpha=0,beta=0,gamma=0'
 --gamma 'shape1,shape2,rate' (the log-density tables of two gamma laws)
 a "general" object in the config file (handles and constants of a general solution).
With none of them the zero solution is tabulated.

Writes a.json, b.json, c.json and d.json into the output directory.
"""

import logging
import sys

from obeq.bin import arguments
from obeq.core import reduction
from obeq.core import solutions
from obeq.util import serialization

NAME = 'tabulate'

TABLE_NAMES = ['a', 'b', 'c', 'd']

DEFAULTS = {
    'params': None,
    'gamma': None,
    'general': None,
    'x0': reduction.DEFAULT_X0,
    'rho': reduction.DEFAULT_RHO,
    'points': reduction.DEFAULT_POINTS,
}

def readCommand(argv):
    """
    Parse the command arguments into a `obeq.bin.arguments.RunConfig`.
    """

    parser = arguments.getParser(__doc__, NAME)

    parser.add_argument('--params', dest = 'params',
            action = 'store', type = str, default = None,
            help = 'comma separated solution constants, e.g. \'lambda=-1,kappa1=1\' '
                + '(missing ones are zero, delta is derived)')

    parser.add_argument('--gamma', dest = 'gamma',
            action = 'store', type = str, default = None,
            help = 'tabulate the log-densities of G(shape1, rate) and G(shape2, rate), '
                + 'given as \'shape1,shape2,rate\'')

    parser.add_argument('--x0', dest = 'x0',
            action = 'store', type = float, default = None,
            help = 'the first grid point (default: %g)' % (reduction.DEFAULT_X0))

    parser.add_argument('--rho', dest = 'rho',
            action = 'store', type = float, default = None,
            help = 'the grid ratio, must exceed 1 (default: %g)' % (reduction.DEFAULT_RHO))

    parser.add_argument('--points', dest = 'points',
            action = 'store', type = int, default = None,
            help = 'the number of grid points (default: %d)' % (reduction.DEFAULT_POINTS))

    options = arguments.parseArgs(parser, argv)
    return arguments.resolveConfig(NAME, options, DEFAULTS), options

def buildTables(config):
    """
    The (a, b, c, d) tables described by the config.
    """

    sources = [name for name in ('params', 'gamma', 'general') if config.get(name) is not None]
    if (len(sources) > 1):
        raise ValueError('Give only one of params, gamma or general, got %s.' % (sources))

    grid = reduction.tabulationGrid(float(config.get('x0')), float(config.get('rho')),
            int(config.get('points')))

    if (config.get('general') is not None):
        spec = solutions.GeneralSolutionSpec.fromDict(config.get('general'))
        logging.info('Tabulating a general solution on %d points.' % (grid.size))
        return solutions.tabulateGeneral(spec, grid)

    if (config.get('gamma') is not None):
        values = arguments.parseFloatList(config.get('gamma'))
        if (len(values) != 3):
            raise ValueError('Expected \'shape1,shape2,rate\', got %s.' % (values))

        params = solutions.gammaToParams(*values)
    elif (config.get('params') is not None):
        values = arguments.parseKeyValues(config.get('params'))

        unknown = sorted(set(values) - set(solutions.PARAM_NAMES))
        if (len(unknown) > 0):
            raise ValueError('Unknown solution constants: %s.' % (unknown))

        params = solutions.OBParams.fromDict(values)
    else:
        params = solutions.OBParams.zero()

    logging.info('Tabulating %s on %d points.' % (str(params), grid.size))
    return solutions.tabulate(params, grid)

def run(argv):
    config, options = readCommand(argv)

    digests = {}
    if (options.config is not None):
        digests = arguments.digestInputs({'config': options.config})

    tables = buildTables(config)
    metadata = arguments.envelope(config, digests)

    for name, table in zip(TABLE_NAMES, tables):
        path = arguments.outputPath(config, '%s.json' % (name))
        serialization.saveGridFunction(path, table, metadata)
        logging.info('Wrote %s.' % (path))

    return tables

def main(argv):
    """
    Entry point for the tabulate command.
    The args are a blind pass of `sys.argv` with the executable stripped.
    Returns the exit code.
    """

    return arguments.runCommand(run, argv)

if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
