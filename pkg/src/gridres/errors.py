"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """A backtracking search ran past its configured node budget."""

    def __init__(self, budget: int):
        super().__init__(f"search budget exceeded ({budget} nodes)")
        self.budget = budget


class CounterexampleError(RuntimeError):
    """An identity the engine is built to certify failed on concrete input.

    Raised only when exact arithmetic contradicts a statement the package
    verifies; it signals either corrupted input or a genuine counterexample
    and is never swallowed.
    """
