"""Exception types shared across turanlab."""


class TuranLabError(Exception):
    """Base class for all errors raised by turanlab."""


class InputError(TuranLabError, ValueError):
    """Malformed or out-of-range input."""


class CapacityError(InputError):
    """A graph would exceed the 32-vertex limit."""


class Graph6Error(InputError):
    """Malformed graph6 text. ``offset`` is the index of the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class PreconditionError(TuranLabError, ValueError):
    """An operation's mathematical precondition does not hold."""


class CapExceeded(TuranLabError):
    """Enumeration refused because ``n`` is above the configured cap."""
