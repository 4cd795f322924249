class DynamicsError(Exception):
    """Base class for integration and outcome errors."""
    exit_code = 2

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class StepTooLargeError(DynamicsError):
    """Exception raised when a fixed RK4 step exceeds the stability bound 2/lambda_max."""

    def __init__(self, step: float, bound: float):
        self.step = step
        self.bound = bound
        super().__init__(f"RK4 step {step:.6g} exceeds the stability bound {bound:.6g}; increase --steps")


class NotSettledError(DynamicsError):
    """Exception raised when the terminal state is still moving."""
    exit_code = 4

    def __init__(self, residual: float, tolerance: float, suggested_horizon: float):
        self.residual = residual
        self.tolerance = tolerance
        self.suggested_horizon = suggested_horizon
        super().__init__(
            f"Trajectory not settled: |L x(T)| = {residual:.3e} > {tolerance:.3e}; "
            f"try --horizon {suggested_horizon:.6g}"
        )
