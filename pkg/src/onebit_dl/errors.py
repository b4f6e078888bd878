"""Exception hierarchy shared by all modules."""


class ParameterError(ValueError):
    """Invalid argument value or incompatible dimensions."""


class RankError(ParameterError):
    """A matrix that must have full column rank does not."""


class NumericError(ArithmeticError):
    """Non-finite input or intermediate value."""


class NumericDivergenceError(NumericError):
    """Learning produced NaN/Inf at a given outer iteration."""

    def __init__(self, iteration, what="dictionary", cost_history=()):
        self.iteration = iteration
        self.cost_history = list(cost_history)
        super().__init__(f"non-finite {what} at outer iteration {iteration}")
