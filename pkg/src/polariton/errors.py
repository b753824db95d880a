"""Exception hierarchy shared by all modules."""


class PolaritonError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveCharge(PolaritonError):
    """sigma_R <= sigma_L: the light-induced charge is not positive and no
    stable plasma oscillation exists."""


class SingularInput(PolaritonError):
    pass


class OutsideRegime(PolaritonError):
    pass


class NoConvergence(PolaritonError):
    """Root iteration failed. Carries the last iterate and its residual."""

    def __init__(self, message, last=None, residual=None, iterations=None):
        super().__init__(message)
        self.last = last
        self.residual = residual
        self.iterations = iterations


class UnstableMode(PolaritonError):
    pass


class ZeroFrequency(PolaritonError):
    pass


class QuadratureFailure(PolaritonError):
    def __init__(self, message, failures=None):
        super().__init__(message)
        self.failures = failures or []


class ConfigError(PolaritonError):
    pass
