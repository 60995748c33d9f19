"""
Recover the solution constants from tabulated (possibly corrupted) a, b, c, d.

Reads a.json, b.json, c.json and d.json from the input directory,
optionally a pair mask (--mask) and the per-table masks mask_a.json .. mask_d.json
(--table-masks).
Writes report.json and recover.svg (the fitted Lambda(r) against lam (r - 1)
and the residual tables).

Large stage residuals are reported, not treated as failures.
"""

import logging
import os
import sys

from obeq.bin import arguments
from obeq.core import pexider
from obeq.core import reduction
from obeq.ui import plots
from obeq.util import robust
from obeq.util import serialization
from obeq.util.errors import DomainError

NAME = 'recover'

TABLE_NAMES = ['a', 'b', 'c', 'd']

DEFAULTS = {
    'input': '.',
    'mask': None,
    'tableMasks': False,
    'method': robust.METHOD_ROBUST,
    'ratioSteps': list(reduction.DEFAULT_RATIO_STEPS),
}

def readCommand(argv):
    parser = arguments.getParser(__doc__, NAME)

    parser.add_argument('-i', '--input', dest = 'input',
            action = 'store', type = str, default = None,
            help = 'the directory holding a.json .. d.json (default: the current directory)')

    parser.add_argument('-m', '--mask', dest = 'mask',
            action = 'store', type = str, default = None,
            help = 'a pair mask on the grid of a and b (default: no mask)')

    parser.add_argument('--table-masks', dest = 'tableMasks',
            action = 'store_true', default = None,
            help = 'also read mask_a.json .. mask_d.json from the input directory')

    parser.add_argument('--method', dest = 'method',
            action = 'store', type = str, default = None, choices = robust.METHODS,
            help = 'the fit method (default: %s)' % (robust.METHOD_ROBUST))

    parser.add_argument('--ratio-steps', dest = 'ratioSteps',
            action = 'store', type = str, default = None,
            help = 'the ratios r = rho^k as comma separated k (default: %s)'
                % (','.join([str(step) for step in reduction.DEFAULT_RATIO_STEPS])))

    options = arguments.parseArgs(parser, argv)
    config = arguments.resolveConfig(NAME, options, DEFAULTS,
            defaultTolerance = pexider.DEFAULT_TOLERANCE)

    return config, options

def ratioSteps(config):
    steps = arguments.parseFloatList(config.get('ratioSteps'))
    if (any([step != int(step) or step == 0 for step in steps])):
        raise ValueError('Ratio steps must be nonzero integers, got %s.' % (steps))

    return [int(step) for step in steps]

def run(argv):
    config, options = readCommand(argv)

    directory = config.get('input')
    paths = {name: os.path.join(directory, '%s.json' % (name)) for name in TABLE_NAMES}

    if (config.get('mask') is not None):
        paths['mask'] = config.get('mask')

    if (config.get('tableMasks')):
        for name in TABLE_NAMES:
            paths['mask_' + name] = os.path.join(directory, 'mask_%s.json' % (name))

    if (options.config is not None):
        paths['config'] = options.config

    digests = arguments.digestInputs(paths)
    a, b, c, d = [serialization.loadGridFunction(paths[name]) for name in TABLE_NAMES]

    mask2d = None
    if ('mask' in paths):
        mask2d = serialization.loadMask(paths['mask'])

    masks1d = None
    if (config.get('tableMasks')):
        masks1d = {name: serialization.loadMask(paths['mask_' + name]) for name in TABLE_NAMES}

    rho = a.ratio()
    if (rho is None):
        raise DomainError('Recovery needs tables on a geometric grid.')

    ratios = reduction.ratioSet(rho, ratioSteps(config))

    report = reduction.recoverAll(a, b, c, d, mask2d = mask2d, ratios = ratios,
            method = config.get('method'), tolerance = config.tolerance, masks1d = masks1d)

    data = report.toDict(digests)
    data['config'] = config.toDict()

    path = arguments.outputPath(config, 'report.json')
    serialization.writeJson(path, data)

    view = plots.RecoveryView()
    view.update(report)
    view.save(arguments.outputPath(config, 'recover.svg'))

    logging.info('Recovered %s (largest stage residual %g), wrote %s.'
            % (str(report.params), report.maxStageResidual(), path))

    return report

def main(argv):
    """
    Entry point for the recover command.
    Returns the exit code.
    """

    return arguments.runCommand(run, argv)

if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
