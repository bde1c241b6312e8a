"""
Error types for the plate lab.

Every solver error derives from PlateLabError so the experiment driver can
capture failures per record without aborting a sweep.
"""


class PlateLabError(Exception):
    """Base class for all plate lab errors."""


class InvalidInputError(PlateLabError, ValueError):
    """A precondition of an operation is violated."""


class RangeError(PlateLabError, ValueError):
    """A request lies outside a table or an admissible parameter range."""


class DivergenceError(PlateLabError):
    """The ODE state became non-finite.

    Attributes:
        last_r (float): Last radius with a finite state.
    """

    def __init__(self, message, last_r):
        super().__init__(f"{message} (last finite r = {last_r:.6g})")
        self.last_r = last_r


class NoZeroError(PlateLabError):
    """A shooting trajectory has no first zero before r_max."""

    def __init__(self, message, beta=None):
        super().__init__(message)
        self.beta = beta


class NoSolutionError(PlateLabError):
    """No sign change of the shooting residual was found.

    Attributes:
        table (list): (beta, Q) pairs that were scanned; Q is None where the
            trajectory had no first zero.
    """

    def __init__(self, message, table):
        super().__init__(message)
        self.table = table


class NoDataError(PlateLabError):
    """A scan produced no usable points."""


class PositivityWindowError(PlateLabError):
    """A quadratic form is not positive definite for the requested sigma/alpha."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class NumericalError(PlateLabError):
    """A linear-algebra kernel failed.

    Attributes:
        condition (float): Condition estimate of the offending matrix, if known.
    """

    def __init__(self, message, condition=None):
        if condition is not None:
            message = f"{message} (condition ~ {condition:.3e})"
        super().__init__(message)
        self.condition = condition


class ConfigParseError(PlateLabError):
    """Malformed experiment file.

    Attributes:
        line (int): 1-based line of the problem.
        column (int): 1-based column of the problem.
    """

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ConfigValidationError(PlateLabError):
    """One or more config fields violate their preconditions.

    Attributes:
        violations (list): (field, message) pairs, all of them.
    """

    def __init__(self, violations):
        lines = "; ".join(f"{field}: {message}" for field, message in violations)
        super().__init__(f"{len(violations)} invalid field(s): {lines}")
        self.violations = list(violations)
