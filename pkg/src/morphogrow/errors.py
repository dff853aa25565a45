"""Exception hierarchy shared by all solvers."""


class MorphoError(Exception):
    """Base class for every error raised by :mod:`morphogrow`."""


class InvalidArgument(MorphoError, ValueError):
    pass


class InvalidCoefficient(InvalidArgument):
    pass


class InvalidStretch(InvalidArgument):
    pass


class SingularSystem(MorphoError, ArithmeticError):
    pass


class NoBracket(MorphoError, ArithmeticError):
    pass


class NumericFailure(MorphoError, ArithmeticError):
    pass


class OutOfDomain(MorphoError, ValueError):
    pass


class OutOfRange(MorphoError, ValueError):
    pass


class NotMonotone(MorphoError, ValueError):
    pass


class InconsistentGeometry(MorphoError, ValueError):
    pass


class GrowthCollapse(MorphoError):
    """A growth field reached a non-positive value.

    ``partial`` holds whatever trajectory was accumulated before the
    failure (``None`` when raised outside a time march).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ConfigError(MorphoError):
    """Scenario document could not be parsed or validated.

    ``problems`` is a list of ``(field_path, message)`` pairs.
    """

    def __init__(self, problems):
        self.problems = list(problems)
        lines = [f"{path}: {msg}" for path, msg in self.problems]
        super().__init__("invalid scenario:\n  " + "\n  ".join(lines))
