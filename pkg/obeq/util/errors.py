"""
Exceptions raised by obeq.
Each one extends the builtin family that already describes it,
so callers may catch either the specific class or the builtin one.
The command-line layer maps the builtin families onto exit codes
(see `obeq.bin.arguments.exitCode`).
"""

class DomainError(ValueError):
    """
    An argument lies outside the domain of an operation
    (non-positive abscissa, off-grid ratio, a handle declining a point, ...).
    """

    pass

class InsufficientDataError(ValueError):
    """
    Not enough samples, valid points, or pairs to compute an estimate.
    """

    def __init__(self, message, needed = None, available = None):
        super().__init__(message)

        self.needed = needed
        self.available = available

class DegenerateGridError(ValueError):
    """
    Fewer than two distinct usable abscissae.
    """

    pass

class StageError(ArithmeticError):
    """
    A stage of the reduction pipeline could not be computed.
    """

    def __init__(self, stage, cause):
        super().__init__("Stage '%s' failed: %s" % (stage, str(cause)))

        self.stage = stage
        self.cause = cause

class IndependenceRejectedError(ValueError):
    """
    U = X + Y and V = X / (X + Y) were found dependent,
    so the gamma characterization does not apply and no parameters are reported.
    """

    def __init__(self, pValue, statistic, level):
        super().__init__('Independence of U and V rejected (p = %g <= %g).' % (pValue, level))

        self.pValue = pValue
        self.statistic = statistic
        self.level = level
