from typing import Sequence


class AnalysisError(Exception):
    """Base class for errors raised while deriving a verdict."""
    exit_code = 2

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class BudgetExceededError(AnalysisError):
    """Exception raised when an enumeration exceeds its configured cap."""
    exit_code = 3

    def __init__(self, what: str, cap: int):
        self.what = what
        self.cap = cap
        super().__init__(f"{what} exceeded the configured cap of {cap}")


class PathBudgetExceededError(BudgetExceededError):
    """Exception raised when a continent pair has more simple paths than allowed."""

    def __init__(self, pair: tuple[int, int], cap: int):
        self.pair = pair
        super().__init__(f"Simple-path enumeration for continent pair {pair}", cap)


class SearchBudgetExceededError(BudgetExceededError):
    """Exception raised when the balancing-set search space is larger than allowed."""

    def __init__(self, candidates: int, cap: int):
        self.candidates = candidates
        super().__init__(f"Balancing-set search over {candidates} partitions", cap)


class GaugeConflictError(AnalysisError):
    """Exception raised when a definite cycle inside a continent has negative sign."""

    def __init__(self, cycle: Sequence[str]):
        self.cycle = list(cycle)
        super().__init__(f"Definite cycle with negative sign: {' - '.join(self.cycle)}")


class FactorizationMismatchError(AnalysisError):
    """Exception raised when the direct and continent-factorized balancing null spaces differ."""

    def __init__(self, direct_rank: int, factorized_rank: int, angle: float):
        self.direct_rank = direct_rank
        self.factorized_rank = factorized_rank
        self.angle = angle
        super().__init__(
            f"Balancing null space mismatch: direct rank {direct_rank}, factorized rank {factorized_rank}, "
            f"largest principal angle {angle:.3e}"
        )


class MultipleNBSEdgesOnPathError(AnalysisError):
    """Exception raised when a path checked for isolation carries more than one balancing edge."""

    def __init__(self, edges: Sequence[tuple[str, str]]):
        self.edges = list(edges)
        super().__init__(f"Path carries {len(self.edges)} balancing-set edges: {self.edges}")


class InfeasibleRecipeError(AnalysisError):
    """Exception raised when an instance recipe cannot be realized."""

    def __init__(self, message: str):
        super().__init__(f"Infeasible recipe: {message}")
