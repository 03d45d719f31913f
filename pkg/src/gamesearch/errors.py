class BudgetExceeded(RuntimeError):
    """A search or metrology pass went over its node budget."""

    def __init__(self, message: str, budget: int = 0):
        super().__init__(message)
        self.budget = budget


class InvariantViolation(AssertionError):
    """Two passes that must agree on the minimax value did not (a search bug)."""


class OracleError(InvariantViolation):
    """The best-move oracle is corrupt or incomplete (table saturation)."""


class ConfigError(ValueError):
    pass
