"""Exception hierarchy shared by all modules."""


class PittkaError(Exception):
    pass


class DomainError(PittkaError, ValueError):
    """Parameter outside the region where a formula is defined."""


class DivergenceError(PittkaError, ArithmeticError):
    """An integral or norm that should be finite is not."""


class ConvergenceError(PittkaError, RuntimeError):
    """Numerical procedure failed to reach its tolerance."""


class DegenerateInputError(PittkaError, ValueError):
    pass


class UnsupportedParameterError(PittkaError, ValueError):
    pass
