class QOrderError(Exception):
    """Base class for library errors."""


class InputError(QOrderError, ValueError):
    """Malformed or ill-typed input; maps to CLI exit code 2."""


class LatticeError(InputError):
    """A poset operation needed a bound that does not exist."""


class BudgetExceeded(QOrderError):
    """An exhaustive search hit its configured budget before finishing."""
