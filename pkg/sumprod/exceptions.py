class ApplicationError(Exception):
    """Base class for application-specific errors."""
    pass

class DomainError(ApplicationError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""
    pass

class FactorizationLimitError(DomainError):
    """Raised when trial division would exceed the configured candidate cap."""
    def __init__(self, message="Factorization limit exceeded.", limit=None, remainder=None):
        super().__init__(message)
        self.limit = limit
        self.remainder = remainder

class NotRepresentableError(DomainError):
    """Raised when (x+y+z)^3 is not an integer multiple of xyz."""
    pass

class ContractError(ApplicationError):
    """Raised when the exact hypothesis of an identity does not hold."""
    def __init__(self, message="Contract violated.", residual=None):
        super().__init__(message)
        self.residual = residual

class DegenerateInputError(ContractError):
    """Raised for the all-equal input, where f = g = h = 0."""
    pass

class PreconditionFailedError(ApplicationError):
    """Raised when a hypothesis of the coprimality claim is not met."""
    def __init__(self, message="Precondition failed.", hypothesis=None):
        super().__init__(message)
        self.hypothesis = hypothesis

class QuerySyntaxError(ApplicationError):
    """Raised for malformed command-line or batch arguments."""
    pass
