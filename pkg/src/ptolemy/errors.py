"""Exception types raised by the library."""


class DomainError(ValueError):
    """An operation was called outside its mathematical domain.

    Examples: mixing scalars from different fields, inverting zero,
    taking a cross-ratio of coincident points.
    """


class NumericalDomainError(DomainError):
    """A computed quantity fell outside its admissible range beyond tolerance."""


class ConfigError(ValueError):
    """Invalid campaign configuration or CLI input."""
