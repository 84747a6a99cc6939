"""Exception hierarchy shared by the services and the command line."""


class ReflektError(Exception):
    """Base class for every error raised by reflekt."""


class ParameterError(ReflektError, ValueError):
    """Invalid key, mismatched modulus or rank, or a violated precondition."""


class UnsupportedKeyError(ParameterError):
    """The operation is not defined for this group key."""


class SizeError(ReflektError):
    """A configured budget would be exceeded."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


class DomainError(ReflektError, ValueError):
    """A cyclotomic value is not in the requested subfield."""

    def __init__(self, message: str, coeffs: tuple = ()):
        super().__init__(message)
        self.coeffs = coeffs


class ConsistencyError(ReflektError):
    """An internal mathematical check failed."""


class NotAHomomorphismError(ReflektError):
    """Generator images do not extend to a homomorphism."""


class NotAnAutomorphismError(ReflektError):
    """A map fails to be a bijective endomorphism."""

    def __init__(self, message: str, condition: str = ""):
        super().__init__(message)
        self.condition = condition
