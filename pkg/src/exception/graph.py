class InvalidGraphError(ValueError):
    """Base class for graph documents or weights that cannot be analyzed."""
    exit_code = 2

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class GraphDocumentError(InvalidGraphError):
    """Exception raised for malformed graph documents."""

    def __init__(self, message: str):
        super().__init__(f"Malformed graph document: {message}")


class SelfLoopError(InvalidGraphError):
    """Exception raised when an edge joins a node to itself."""

    def __init__(self, node: str):
        self.node = node
        super().__init__(f"Self-loop on node {node!r}")


class DuplicateEdgeError(InvalidGraphError):
    """Exception raised when an unordered node pair carries more than one edge."""

    def __init__(self, u: str, v: str):
        self.u = u
        self.v = v
        super().__init__(f"Duplicate edge between {u!r} and {v!r}")


class DimensionMismatchError(InvalidGraphError):
    """Exception raised when a weight is not a d x d matrix."""

    def __init__(self, expected: int, shape: tuple, where: str = ""):
        self.expected = expected
        self.shape = tuple(shape)
        location = f" on {where}" if where else ""
        super().__init__(f"Expected a {expected}x{expected} weight{location}, got shape {self.shape}")


class AsymmetricWeightError(InvalidGraphError):
    """Exception raised when a weight is asymmetric beyond the symmetrization tolerance."""

    def __init__(self, asymmetry: float, tolerance: float, where: str = ""):
        self.asymmetry = asymmetry
        self.tolerance = tolerance
        location = f" on {where}" if where else ""
        super().__init__(f"Asymmetric weight{location}: max |M - M^T| = {asymmetry:.3e} > {tolerance:.3e}")


class IndefiniteWeightError(InvalidGraphError):
    """Exception raised when a weight has eigenvalues of both strict signs."""

    def __init__(self, min_eigenvalue: float, max_eigenvalue: float, where: str = ""):
        self.min_eigenvalue = min_eigenvalue
        self.max_eigenvalue = max_eigenvalue
        location = f" on {where}" if where else ""
        super().__init__(
            f"Indefinite weight{location}: eigenvalues span [{min_eigenvalue:.3e}, {max_eigenvalue:.3e}]"
        )


class NegativeWeightInUnsignedInputError(InvalidGraphError):
    """Exception raised when an unsigned network carries a negative-type weight."""

    def __init__(self, u: str, v: str):
        self.u = u
        self.v = v
        super().__init__(f"Unsigned input has a negative weight on edge ({u!r}, {v!r})")
