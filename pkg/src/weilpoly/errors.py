"""Exception types shared across the package."""


class WeilPolyError(Exception):
    pass


class NotSquarefree(WeilPolyError):
    pass


class PrecisionExhausted(WeilPolyError):
    pass


class DomainError(WeilPolyError):
    pass


class DeltaPositive(WeilPolyError):
    pass


class PreconditionViolated(WeilPolyError):
    pass


class NotWeil(WeilPolyError):
    pass


class NotPrimePower(WeilPolyError, ValueError):
    pass


class BudgetExceeded(WeilPolyError):
    pass
