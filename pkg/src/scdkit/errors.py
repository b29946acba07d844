class ScdError(Exception):
    """Base class for all errors raised by scdkit."""


class DimensionError(ScdError, ValueError):
    """Dimension out of the supported range or mismatched between inputs."""


class PreconditionError(ScdError, ValueError):
    """An operation was applied outside its domain (e.g. tau on 1^n)."""


class NotUnimodalError(ScdError, ValueError):
    pass


class CapacityError(ScdError, ValueError):
    """More chains use a necklace edge than its capacity allows."""


class EncodingError(ScdError):
    """The CNF builder derived an empty clause or an inconsistent model."""


class SolverError(ScdError):
    """The external SAT solver crashed, timed out, or produced garbage."""


class CertificateParseError(ScdError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
