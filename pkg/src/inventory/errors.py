"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A search ran out of its iteration or node budget.

    ``partial`` carries whatever had been computed when the budget tripped.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class PreconditionError(ValueError):
    """An argument is outside the domain an operation is defined on."""
