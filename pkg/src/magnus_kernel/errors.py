"""Exception types shared across the package."""


class RankMismatchError(ValueError):
    pass


class GeneratorIndexError(ValueError):
    pass


class NotInvertibleError(ValueError):
    """Raised when supplied image tables fail the mutual-inverse check."""


class NotIAError(ValueError):
    """Raised when an operation needs an IA-automorphism and gets something else."""


class NotInSubgroupError(ValueError):
    pass


class NotLieElementError(ValueError):
    pass


class CapExceededError(ValueError):
    """Parameters outside the desk-scale limits (n <= 6, d <= 12, degree <= 6)."""


class ParseError(ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class FiltrationError(ValueError):
    """The automorphism is not deep enough in the Johnson filtration."""


class NotInKernelError(ValueError):
    """The automorphism is not in the kernel of the Magnus representation."""
