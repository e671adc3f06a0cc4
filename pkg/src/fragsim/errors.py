"""Semantic exception hierarchy; public functions never raise bare ValueError."""


class FragsimError(Exception):
    """Base error for this package."""


class DomainError(FragsimError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class BudgetError(FragsimError):
    """A simulation would exceed the configured memory/size budget."""

    def __init__(self, required_bytes: int, budget_bytes: int, what: str):
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes
        super().__init__(
            f"{what} requires {required_bytes} bytes, exceeding the budget of "
            f"{budget_bytes} bytes (set FRAGSIM_BUDGET_BYTES to raise it)"
        )


class ConvergenceError(FragsimError):
    """An iterative solver failed to reach the requested residual."""


class SpecError(FragsimError, ValueError):
    """An experiment spec is invalid; the message names the offending field."""
