"""Exception hierarchy.  Every failure the CLI can report derives from EnvradError."""


class EnvradError(Exception):
    """Base class for computational failures (CLI exit code 1)."""


class InvalidInput(EnvradError):
    """Malformed or inconsistent input data (CLI exit code 2)."""


class DimensionMismatch(InvalidInput):
    pass


class RingMismatch(InvalidInput):
    pass


class ActionNotCompatible(InvalidInput):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ModulusViolated(InvalidInput):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedRing(EnvradError):
    pass


class FactorLimitExceeded(EnvradError):
    """Trial division gave up: the cofactor is beyond the desk-scale bound."""


class InfiniteModule(EnvradError):
    pass


class CapExceeded(EnvradError):
    pass


class StabilizationCapExceeded(EnvradError):
    pass
