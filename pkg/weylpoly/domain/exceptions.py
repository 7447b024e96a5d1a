class WeylPolyError(Exception):
    """Base exception for all weylpoly errors."""
    pass

class ValidationError(WeylPolyError):
    """Raised when an argument violates a precondition (index, rank, dominance, algebra)."""
    pass

class OperatorSyntaxError(ValidationError):
    """Raised when an operator expression cannot be parsed.

    Attrs:
      position: character offset of the offending atom in the expression
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position

class ConfigurationError(WeylPolyError):
    """Raised when there's an error with configuration."""
    pass

class RankLimitError(WeylPolyError):
    """Raised when a full Weyl group enumeration exceeds the configured rank cap."""
    pass

class DivisionError(WeylPolyError):
    """Raised when an exact division of formal sums leaves a remainder."""
    pass

class ExpansionError(WeylPolyError):
    """Raised when the polytope expansion triangular solve does not terminate."""
    pass
