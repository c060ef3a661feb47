"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """Bad shapes, non-finite input, or otherwise invalid arguments."""


class StateError(RuntimeError):
    """An incremental solver was driven out of order or after finalization."""


class ComputationError(ArithmeticError):
    """Arithmetic produced a non-finite value (overflow)."""


class ParseError(ValueError):
    """Malformed input file. ``lineno`` is 1-based, or None if unknown."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
