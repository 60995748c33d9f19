import logging

LOG_FORMAT = '%(levelname)s - %(asctime)s - %(message)s'

def initLogging(logging_level = logging.INFO):
    """
    Initializes the logging format and level.
    Calling this more than once only updates the level.
    """

    logging.basicConfig(format = LOG_FORMAT, level = logging_level)
    updateLoggingLevel(logging_level)

def updateLoggingLevel(logging_level):
    """
    Updates the logging level.
    """

    logger = logging.getLogger()
    logger.setLevel(logging_level)

def setVerbosity(quiet = False, debug = False):
    """
    Pick the logging level from the common --quiet/--debug flags.
    """

    if (quiet and debug):
        raise ValueError('Logging cannot be set to both debug and quiet.')

    if (quiet):
        updateLoggingLevel(logging.WARNING)
    elif (debug):
        updateLoggingLevel(logging.DEBUG)
