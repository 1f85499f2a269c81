"""l-Grigorchuk subshifts: construction, exact language metrics and claim checks."""

from lgrig.errors import (
    BracketError,
    DepthExceeded,
    GrigError,
    InvalidSpec,
    NotAFactor,
    OutOfRange,
    ParseError,
    UnknownCheck,
)
from lgrig.lspec import LSpec, parse_lspec
from lgrig.session import SubshiftSession

__all__ = [
    "BracketError",
    "DepthExceeded",
    "GrigError",
    "InvalidSpec",
    "LSpec",
    "NotAFactor",
    "OutOfRange",
    "ParseError",
    "SubshiftSession",
    "UnknownCheck",
    "parse_lspec",
]

__version__ = "0.1.0"
