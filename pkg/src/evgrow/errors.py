"""Exception hierarchy shared by all evgrow modules."""


class EvgrowError(Exception):
    """Base class for library errors."""


class FamilyInvariantError(EvgrowError):
    """A family specification violates a construction invariant."""


class MeanOutOfRange(EvgrowError, ValueError):
    """A mean vector lies outside the interior of the mean-value space."""


class NoConvergence(EvgrowError, RuntimeError):
    pass


class NotDiscrete(EvgrowError, TypeError):
    pass


class TooLarge(EvgrowError):
    """Exact enumeration would exceed the configured outcome cap."""


class InfeasibleSet(EvgrowError, ValueError):
    pass


class Degenerate(EvgrowError, ValueError):
    """The mean set touches the null mean (violates separation)."""


class NoSuchRadius(EvgrowError, ValueError):
    pass


class QuadratureFailure(EvgrowError, RuntimeError):
    pass


class BracketFailure(EvgrowError, RuntimeError):
    pass


class OriginRay(EvgrowError, ValueError):
    """Radial estimators are undefined at the origin."""


class UnsupportedDimension(EvgrowError, ValueError):
    pass


class NotNice(EvgrowError, ValueError):
    """A surrounding mean set is not nice with respect to the family."""


class ConfigError(EvgrowError, ValueError):
    pass
