"""
Dispatch to the obeq commands:

    python3 -m obeq.bin.cli <command> [options]

Run a command with --help to see its options.
"""

import logging
import sys

from obeq.bin import corrupt
from obeq.bin import lukacs
from obeq.bin import recover
from obeq.bin import semiconstant
from obeq.bin import tabulate
from obeq.bin.arguments import EXIT_VALIDATION
from obeq.util.logs import initLogging

COMMANDS = {
    'tabulate': tabulate.main,
    'corrupt': corrupt.main,
    'recover': recover.main,
    'lukacs': lukacs.main,
    'semiconstant': semiconstant.main,
}

def usage():
    return 'usage: python3 -m obeq.bin.cli {%s} [options]' % (','.join(COMMANDS))

def main(argv):
    """
    Entry point for the dispatcher.
    The first argument names the command, the rest are passed on to it.
    Returns the command's exit code.
    """

    if (len(argv) == 0 or argv[0] in ('-h', '--help')):
        print(__doc__.strip())
        print(usage())
        return 0 if (len(argv) > 0) else EXIT_VALIDATION

    command = COMMANDS.get(argv[0])
    if (command is None):
        initLogging()
        logging.error("Unknown command: '%s'. %s" % (argv[0], usage()))
        return EXIT_VALIDATION

    return command(argv[1:])

if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
