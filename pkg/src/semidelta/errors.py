"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: usage/parse problems exit with 2,
resource guards (size, precision, digit budget) with 3.
"""


class SemiDeltaError(Exception):
    """Base class for all library errors."""


class UsageError(SemiDeltaError):
    """Invalid input outside the expression grammar (bad flags, bad tables)."""


class MixedRingError(UsageError, TypeError):
    """Arithmetic between scalars living in different rings."""


class ExprSyntaxError(UsageError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class NotALoopSpaceError(UsageError):
    """Loop or free-loop construction applied outside the loop-space fragment."""


class NotPIntegralError(UsageError):
    """A value with negative valuation was requested in a p-adic ring."""


class NotAGroupError(UsageError):
    pass


class GroupoidError(UsageError):
    """Structure maps violating the groupoid or functor axioms."""


class ShapeError(UsageError):
    pass


class GuardError(SemiDeltaError):
    """A resource guard tripped; the computation was refused, not attempted."""


class PrecisionExhaustedError(GuardError, ArithmeticError):
    pass


class SearchSpaceTooLargeError(GuardError):
    pass


class SizeGuardError(GuardError):
    pass
