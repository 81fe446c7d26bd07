"""Exception hierarchy.  CLI exit codes hang off these classes."""


class HarmonicError(Exception):
    exit_code = 4


class ValidationError(HarmonicError, ValueError):
    """Input violates a symmetry pattern, finiteness or a precondition."""

    exit_code = 2


class ArityError(ValidationError):
    """Orders or slot counts do not fit the operation."""


class NotHarmonicError(ValidationError):
    """Tensor is not totally symmetric and traceless within tolerance."""


class UnresolvedClassError(ValidationError):
    """Requested symmetry class has no displayed normal form."""


class ParseError(HarmonicError):
    exit_code = 3


class ConsistencyError(HarmonicError):
    """An internal identity failed (e.g. two gamma computations disagree)."""

    exit_code = 4
