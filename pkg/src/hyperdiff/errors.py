"""Exception hierarchy shared by all hyperdiff modules."""


class HyperdiffError(Exception):
    """Base class for every error raised by the package."""


class SingularTensor(HyperdiffError):
    pass


class NonPositiveJacobian(HyperdiffError):
    pass


class NonFiniteEnergy(HyperdiffError):
    pass


class ExponentOverflow(HyperdiffError):
    """Fiber exponent k2*(I4 - 1)**2 exceeded the cap; raised instead of returning inf."""


class DegenerateDenominator(HyperdiffError):
    """The analytical series has (numerically) zero variance, so FVU is undefined."""


class NonConvergence(HyperdiffError):
    pass


class RootNotBracketed(HyperdiffError):
    pass


class ConfigError(HyperdiffError):
    pass
