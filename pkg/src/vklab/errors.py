"""Exception types shared by the package and mapped to CLI exit codes."""


class VKLabError(Exception):
    pass


class ParseError(VKLabError, ValueError):
    """Malformed word, path, factorization, presentation or sheet file."""


class TransversalityError(VKLabError):
    """Projectivization refused: the factorization product is not the full twist."""


class TrackingError(VKLabError):
    """Numerical path tracking failed (step underflow or ambiguous matching)."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x
