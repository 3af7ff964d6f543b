"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """Raised when a computation would exceed its configured resource budget.

    Carries enough context to report what was attempted and what the cap was,
    so the CLI can map it to a clean exit code instead of a traceback.
    """

    def __init__(self, what: str, needed: int, budget: int):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed}, budget is {budget}")
