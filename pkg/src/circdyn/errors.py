"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class CircDynError(Exception):
    """Base class for all library errors."""

    exit_code = 2


class DomainError(CircDynError, ValueError):
    """An input violates a mathematical precondition."""

    exit_code = 2


class ParseError(CircDynError, ValueError):
    exit_code = 1


class CapExceeded(CircDynError):
    """A search or simulation hit an explicit cap before finishing."""

    exit_code = 3

    def __init__(self, cap_name: str, cap: int, detail: str = ""):
        self.cap_name = cap_name
        self.cap = cap
        msg = f"{cap_name}={cap} exceeded"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotAcyclic(DomainError):
    pass


class GoodnessViolation(DomainError):
    pass


class RatioUnbounded(DomainError):
    """A dicycle carries no tokens, so the cycle ratio is infinite."""


class PositiveCycle(DomainError):
    """Longest walks are unbounded because some dicycle has positive weight."""


class MultiplicityMismatch(CircDynError):
    """Vertices fired a different number of times over one period."""


class NotStronglyConnected(DomainError):
    pass


class InvalidColoring(DomainError):
    pass


class InadmissibleSchedule(DomainError):
    pass
