"""Exception hierarchy shared by all modules."""


class CommutantError(Exception):
    """Base class for every error raised by this package."""


class InputError(CommutantError):
    """Caller supplied data outside an operation's domain."""


class NotAUnit(InputError):
    pass


class NonSquare(InputError):
    pass


class NotMonic(InputError):
    pass


class NotAField(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class SizeTooSmall(InputError):
    pass


class TraceNonZero(InputError):
    pass


class ScalarInput(InputError):
    pass


class RankDeficient(InputError):
    pass


class NotSaturated(InputError):
    pass


class CharacteristicMismatch(InputError):
    pass


class NotRegularModP(InputError):
    pass


class PrecisionExhausted(InputError):
    pass


class SingularSeed(InputError):
    pass


class BadTrace(InputError):
    pass


class UnsupportedPrime(InputError):
    pass


class SearchExhausted(CommutantError):
    """A bounded candidate search ran out of budget."""


class InternalInvariantViolation(CommutantError):
    """A step that theory guarantees did not go through; this is a bug."""


class DivisionFailure(InternalInvariantViolation):
    pass


class NoLaffeyReamsForm(InputError):
    """Proof that a 2×2 integer matrix has no Laffey–Reams conjugate."""
