"""Exception types shared across the package."""


class LfdsError(Exception):
    """Base class for all errors raised by lfds_height."""


class UsageError(LfdsError, ValueError):
    """Invalid arguments: mismatched moduli, non-prime p, bad divisor, ..."""


class ParseError(LfdsError, ValueError):
    """A system file or inline system could not be parsed."""


class CapacityError(LfdsError):
    """A state space is larger than the enumeration cap allows."""


class ConfigError(LfdsError):
    """An experiment configuration cannot be satisfied."""
