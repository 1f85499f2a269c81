class GrigError(Exception):
    """Base class for all errors raised by lgrig."""


class InvalidSpec(GrigError):
    pass


class DepthExceeded(GrigError):
    """A length or level left the guarded range or the memory budget."""


class NotAFactor(GrigError):
    pass


class OutOfRange(GrigError):
    pass


class BracketError(GrigError):
    """The search window chosen for R(n) did not certify the result."""


class UnknownCheck(GrigError):
    pass


class ParseError(GrigError):
    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position
