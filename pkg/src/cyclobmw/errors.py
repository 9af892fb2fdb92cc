"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


class SingularityError(ZeroDivisionError):
    """A closed form was requested at a point where it is undefined."""


class RangeError(IndexError):
    """Not enough parameter data to evaluate the requested identity."""


class InputError(ValueError):
    """Malformed user input (parameter files, word syntax, CLI values)."""
