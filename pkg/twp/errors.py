class InstanceFormatError(ValueError):
    """A measure, parameter or function file could not be parsed.

    The message names the file, the measure and the offending atom.
    """


class InvariantViolation(AssertionError):
    """An exact inequality that holds by theorem failed numerically.

    Raised by checks whose failure can only mean a defect in the code (e.g.,
    necessity of the testing conditions, weak type (1,1) of the dyadic maximal
    function, the stopping-count bound).
    """
