"""Exception types shared across the package."""


class FreedynError(Exception):
    pass


class DegenerateInterval(FreedynError, ValueError):
    """Grid interval has zero or negative length."""


class ZeroSpinor(FreedynError, ValueError):
    """Spinor weights are all zero, nothing to normalize."""


class GridMismatch(FreedynError, ValueError):
    """Two fields or a field and an operator live on different grids."""


class UnsupportedPotential(FreedynError, ValueError):
    """The requested transform kind cannot eliminate this potential."""


class NonInvertible(FreedynError, ValueError):
    """A transform field has a node where |det U| falls below the floor."""


class PreconditionViolated(FreedynError, ValueError):
    """An operation was called outside its stated domain of validity."""


class ConfigError(FreedynError, ValueError):
    pass


class MissingKey(ConfigError):
    pass


class UnknownKey(ConfigError):
    pass


class TypeMismatch(ConfigError):
    pass
