"""
Exception hierarchy for the gluing-orbit toolkit
"""


class GluingToolkitError(ValueError):
    """Base class for every error raised by the toolkit"""


class InvalidSpec(GluingToolkitError):
    """A system spec failed validation"""

    def __init__(self, message, path=""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class NegativeIterateOnOneSided(GluingToolkitError):
    """Backward iterate requested on a one-sided (non-invertible) system"""


class SystemMismatch(GluingToolkitError):
    """Points from different systems were combined"""


class RankMismatch(GluingToolkitError):
    """A gap does not have rank(C) - 1 entries"""


class NotAnSft(GluingToolkitError):
    """An SFT-only operation was called on another system"""


class PoolRequired(GluingToolkitError):
    """A pool-based search got no candidates"""


class EmptyPool(GluingToolkitError):
    """A greedy computation got an empty pool"""


class StayAwayViolated(GluingToolkitError):
    """The (x, y, eps) triple cannot feed the dichotomy construction"""


class GluingFailed(GluingToolkitError):
    """No gap up to the bound glues an orbit sequence"""

    def __init__(self, message, instance=None):
        self.instance = instance
        super().__init__(message)


class BadArgs(GluingToolkitError):
    """Arguments outside the documented domain"""


class NotMinimal(GluingToolkitError):
    """A covering time was requested for a non-minimal system"""


class NotFinite(GluingToolkitError):
    """A finite-space computation was requested on an infinite system"""


class UnsupportedOperation(GluingToolkitError):
    """The system kind does not support the operation"""


class JobValidationError(GluingToolkitError):
    """A job file failed validation"""

    def __init__(self, message, field=""):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)
