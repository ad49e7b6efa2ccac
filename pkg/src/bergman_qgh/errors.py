"""Exception types shared across the package.

The CLI maps :class:`InputError` to exit code 2 and :class:`InvariantViolation`
to exit code 1.
"""


class InputError(ValueError):
    """Bad user input: wrong dimension, out-of-range parameter, parse failure."""


class InvariantViolation(RuntimeError):
    """A mathematical guarantee failed to hold; indicates a bug."""


class SymbolParseError(InputError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
