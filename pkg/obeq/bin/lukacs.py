"""
Estimate gamma parameters from paired positive samples.

The samples are read from a CSV file with the header x,y (--samples),
or simulated: independent G(shape-x, rate) and G(shape-y, rate) draws,
or independent lognormal draws (--preset lognormal, for which the estimate must be refused).

If U = X + Y and V = X / (X + Y) pass the independence test,
estimate.json holds the shapes and the rate, and lukacs.svg the fitted log-densities.
Otherwise estimate.json holds the rejected test and no parameters.
"""

import logging
import sys

from obeq.bin import arguments
from obeq.lab import independence
from obeq.lab import lukacs
from obeq.lab import sampling
from obeq.ui import plots
from obeq.util import probability
from obeq.util import serialization
from obeq.util.errors import IndependenceRejectedError

NAME = 'lukacs'

PRESET_GAMMA = 'gamma'
PRESET_LOGNORMAL = 'lognormal'
PRESETS = [PRESET_GAMMA, PRESET_LOGNORMAL]

DEFAULT_SAMPLES = 200000

DEFAULTS = {
    'samples': None,
    'preset': PRESET_GAMMA,
    'shapeX': 2.0,
    'shapeY': 3.0,
    'rate': 1.0,
    'n': DEFAULT_SAMPLES,
    'permutations': independence.DEFAULT_PERMUTATIONS,
    'maxPoints': independence.DEFAULT_MAX_POINTS,
    'writeSamples': False,
}

def readCommand(argv):
    parser = arguments.getParser(__doc__, NAME)

    parser.add_argument('--samples', dest = 'samples',
            action = 'store', type = str, default = None,
            help = 'read samples from a CSV with the header x,y instead of simulating them')

    parser.add_argument('--preset', dest = 'preset',
            action = 'store', type = str, default = None, choices = PRESETS,
            help = 'the law to simulate (default: %s)' % (PRESET_GAMMA))

    parser.add_argument('--shape-x', dest = 'shapeX',
            action = 'store', type = float, default = None,
            help = 'the simulated shape of X (default: %g)' % (DEFAULTS['shapeX']))

    parser.add_argument('--shape-y', dest = 'shapeY',
            action = 'store', type = float, default = None,
            help = 'the simulated shape of Y (default: %g)' % (DEFAULTS['shapeY']))

    parser.add_argument('--rate', dest = 'rate',
            action = 'store', type = float, default = None,
            help = 'the common simulated rate (default: %g)' % (DEFAULTS['rate']))

    parser.add_argument('-n', '--num-samples', dest = 'n',
            action = 'store', type = int, default = None,
            help = 'the number of simulated pairs (default: %d)' % (DEFAULT_SAMPLES))

    parser.add_argument('--permutations', dest = 'permutations',
            action = 'store', type = int, default = None,
            help = 'permutations of the independence test (default: %d)'
                % (independence.DEFAULT_PERMUTATIONS))

    parser.add_argument('--max-points', dest = 'maxPoints',
            action = 'store', type = int, default = None,
            help = 'subsample size of the independence test (default: %d)'
                % (independence.DEFAULT_MAX_POINTS))

    parser.add_argument('--write-samples', dest = 'writeSamples',
            action = 'store_true', default = None,
            help = 'also write the simulated samples to samples.csv')

    options = arguments.parseArgs(parser, argv)
    config = arguments.resolveConfig(NAME, options, DEFAULTS,
            defaultTolerance = lukacs.DEFAULT_LEVEL)

    return config, options

def loadSamples(config, sampleSeed):
    """
    Returns (x, y, inputPaths).
    """

    if (config.get('samples') is not None):
        x, y = sampling.readSamplesCsv(config.get('samples'))
        logging.info('Read %d sample pairs from %s.' % (x.size, config.get('samples')))
        return x, y, {'samples': config.get('samples')}

    n = int(config.get('n'))

    if (config.get('preset') == PRESET_LOGNORMAL):
        x, y = sampling.lognormalSamples(n, sampleSeed)
    elif (config.get('preset') == PRESET_GAMMA):
        specX = sampling.GammaSpec(config.get('shapeX'), config.get('rate'))
        specY = sampling.GammaSpec(config.get('shapeY'), config.get('rate'))
        x, y = sampling.sampleGammaPair(specX, specY, n, sampleSeed)
    else:
        raise ValueError("Unknown preset: '%s'. Expected one of %s." % (config.get('preset'),
                PRESETS))

    logging.info('Simulated %d %s sample pairs.' % (n, config.get('preset')))

    if (config.get('writeSamples')):
        path = arguments.outputPath(config, 'samples.csv')
        sampling.writeSamplesCsv(path, x, y)
        logging.info('Wrote %s.' % (path))

    return x, y, {}

def rejectedReport(ex):
    return {
        'rejected': True,
        'independence_pvalue': ex.pValue,
        'statistic': ex.statistic,
        'level': ex.level,
    }

def run(argv):
    config, options = readCommand(argv)

    sampleSeed, testSeed = probability.deriveSeeds(config.seed, 2)
    x, y, paths = loadSamples(config, sampleSeed)

    if (options.config is not None):
        paths['config'] = options.config

    labConfig = lukacs.LukacsConfig(seed = testSeed, permutations = int(config.get('permutations')),
            maxPoints = int(config.get('maxPoints')), level = config.tolerance)

    data = arguments.envelope(config, arguments.digestInputs(paths))
    data['lab_config'] = labConfig.toDict()

    estimate = None
    try:
        estimate = lukacs.characterize(x, y, labConfig)
    except IndependenceRejectedError as ex:
        logging.info(str(ex))
        data.update(rejectedReport(ex))

    if (estimate is not None):
        data['rejected'] = False
        data.update(estimate.toDict())

        view = plots.DensityView()
        view.update(estimate)
        view.save(arguments.outputPath(config, 'lukacs.svg'))

        logging.info('Estimated shape_x = %.4f, shape_y = %.4f, rate = %.4f (p = %g).'
                % (estimate.shapeX, estimate.shapeY, estimate.rate, estimate.independencePValue))

    path = arguments.outputPath(config, 'estimate.json')
    serialization.writeJson(path, data)
    logging.info('Wrote %s.' % (path))

    return estimate

def main(argv):
    """
    Entry point for the lukacs command.
    Returns the exit code; a rejected independence test is a result, not a failure.
    """

    return arguments.runCommand(run, argv)

if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
