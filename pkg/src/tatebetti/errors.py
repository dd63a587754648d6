"""Exceptions raised across the package."""


class TateBettiError(Exception):
    """Base class for every error this package raises on purpose."""


class InputError(TateBettiError, ValueError):
    """Malformed user input (problem file, module reference, flags)."""


class ParseError(InputError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if text else ""
        super().__init__(f"{message}{where}" + (f": {text!r}" if text else ""))


class NotArtinian(InputError):
    """The quotient ring is infinite dimensional (or exceeds the size cap)."""


class NotLocal(InputError):
    """The quotient ring has more than one maximal ideal."""


class NotGorenstein(InputError):
    """A complete resolution was requested over a ring with socle dimension != 1."""


class NotReduced(TateBettiError, ValueError):
    """A module that must have no free summand has one."""


class NonMinimalInput(TateBettiError, ValueError):
    pass


class InsufficientWindow(TateBettiError, ValueError):
    pass


class InvariantViolation(TateBettiError, AssertionError):
    """Two routes that must agree did not, or a structural check failed."""
