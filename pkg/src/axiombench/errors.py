"""Exception types raised by the harness."""


class UsageError(ValueError):
    """A caller violated an operation's precondition (bad shape, bad argument)."""


class HarnessIncompatibility(TypeError):
    """The model under evaluation does not implement the required contract."""


class IndeterminateResult(ArithmeticError):
    """A statistic cannot be computed from the given sample (too few informative values)."""
