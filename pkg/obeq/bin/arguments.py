"""
The argument handling and run configuration shared by all commands.
"""

import argparse
import dataclasses
import logging
import os
import textwrap

from obeq import __version__
from obeq.util import probability
from obeq.util import serialization
from obeq.util import util
from obeq.util.logs import initLogging
from obeq.util.logs import setVerbosity

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3

class ArgumentParser(argparse.ArgumentParser):
    """
    An argument parser whose usage errors are ValueErrors (exit code 1) instead of exits.
    """

    def error(self, message):
        raise ValueError('%s: %s' % (self.prog, message))

@dataclasses.dataclass(frozen = True)
class RunConfig(object):
    """
    The fully resolved configuration of one command run.
    """

    command: str
    seed: int
    out: str
    tolerance: float
    settings: dict

    def get(self, name):
        return self.settings[name]

    def toDict(self):
        return {
            'command': self.command,
            'seed': self.seed,
            'out': self.out,
            'tolerance': self.tolerance,
            'settings': dict(self.settings),
        }

def getParser(description, name):
    """
    Loads the arguments common to every command.
    Command options should default to None, so that `resolveConfig` can tell
    which ones were given on the command line.
    """

    parser = ArgumentParser(description = textwrap.dedent(description), prog = name,
            formatter_class = argparse.RawTextHelpFormatter)

    parser.add_argument('-c', '--config', dest = 'config',
            action = 'store', type = str, default = None,
            help = 'read settings from a JSON file, flags override it (default: %(default)s)')

    parser.add_argument('-d', '--debug', dest = 'debug',
            action = 'store_true', default = False,
            help = 'set logging level to debug (default: %(default)s)')

    parser.add_argument('-o', '--out', dest = 'out',
            action = 'store', type = str, default = None,
            help = 'write outputs into this directory (default: the current directory)')

    parser.add_argument('-q', '--quiet', dest = 'quiet',
            action = 'store_true', default = False,
            help = 'set logging level to warning (default: %(default)s)')

    parser.add_argument('-s', '--seed', dest = 'seed',
            action = 'store', type = int, default = None,
            help = 'seed every random choice of the run (default: %d)' % (probability.DEFAULT_SEED))

    parser.add_argument('-t', '--tolerance', dest = 'tolerance',
            action = 'store', type = float, default = None,
            help = 'the command\'s numeric tolerance (default: per command)')

    return parser

def parseArgs(parser, argv):
    options, otherjunk = parser.parse_known_args(argv)
    if (len(otherjunk) != 0):
        raise ValueError('Unrecognized options: \'%s\'.' % (str(otherjunk)))

    setVerbosity(options.quiet, options.debug)

    return options

def resolveConfig(command, options, defaults, defaultTolerance = None):
    """
    Build a `RunConfig`: defaults, then the JSON config file, then command-line flags.
    `defaults` maps setting names (matching the option `dest`s) to default values.
    """

    settings = dict(defaults)
    seed = None
    out = None
    tolerance = defaultTolerance

    if (options.config is not None):
        fileSettings = serialization.readJson(options.config)

        seed = fileSettings.pop('seed', seed)
        out = fileSettings.pop('out', out)
        tolerance = fileSettings.pop('tolerance', tolerance)

        unknown = sorted(set(fileSettings) - set(defaults))
        if (len(unknown) > 0):
            raise ValueError("Unknown settings in '%s': %s." % (options.config, unknown))

        settings.update(fileSettings)

    for name in defaults:
        value = getattr(options, name, None)
        if (value is not None):
            settings[name] = value

    if (options.seed is not None):
        seed = options.seed

    if (options.out is not None):
        out = options.out

    if (options.tolerance is not None):
        tolerance = options.tolerance

    if (seed is None):
        seed = probability.DEFAULT_SEED

    if (out is None):
        out = '.'

    if (tolerance is not None and not (tolerance > 0)):
        raise ValueError('The tolerance must be positive, got %g.' % (tolerance))

    config = RunConfig(command, int(seed), str(out), tolerance, settings)
    logging.debug('Seed value: %d' % (config.seed))

    return config

def envelope(config, digests = None):
    """
    The metadata embedded in every output.
    """

    return {
        'version': __version__,
        'config': config.toDict(),
        'input_digests': dict(digests or {}),
    }

def digestInputs(paths):
    """
    Map input names to the SHA-256 digests of their files.
    """

    return {name: util.digestFile(path) for name, path in sorted(paths.items())}

def outputPath(config, filename):
    os.makedirs(config.out, exist_ok = True)
    return os.path.join(config.out, filename)

def parseFloatList(text):
    """
    Parse '1,2.5,5' (or a JSON list) into a list of floats.
    """

    if (isinstance(text, (list, tuple))):
        return [float(value) for value in text]

    try:
        return [float(value) for value in str(text).split(',') if value.strip() != '']
    except ValueError:
        raise ValueError('Expected a comma separated list of numbers, got \'%s\'.' % (text))

def parseKeyValues(text):
    """
    Parse 'lambda=-1,kappa1=1' (or a JSON object) into a dict of floats.
    """

    if (isinstance(text, dict)):
        return {str(key): float(value) for key, value in text.items()}

    values = {}
    for item in str(text).split(','):
        if (item.strip() == ''):
            continue

        if ('=' not in item):
            raise ValueError('Expected key=value, got \'%s\'.' % (item))

        key, value = item.split('=', 1)
        values[key.strip()] = float(value)

    return values

def exitCode(exception):
    """
    The exit code of a failed run: 1 for validation, 2 for I/O, 3 for numerical problems.
    """

    if (isinstance(exception, OSError)):
        return EXIT_IO

    if (isinstance(exception, ArithmeticError)):
        return EXIT_NUMERICAL

    return EXIT_VALIDATION

def runCommand(command, argv):
    """
    Run a command body and map its failure onto an exit code.
    """

    initLogging()

    try:
        command(argv)
    except (ValueError, LookupError, OSError, ArithmeticError) as ex:
        logging.error(str(ex))
        return exitCode(ex)

    return EXIT_OK
