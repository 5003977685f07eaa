"""Exception types raised by the toolkit."""


class SemiradError(Exception):
    """Base class for all toolkit errors."""


class NonSquare(SemiradError, ValueError):
    """A square matrix was required."""


class NotHermitian(SemiradError, ValueError):
    """Input fails the Hermitian residual test."""


class NotPSD(SemiradError, ValueError):
    """Input has an eigenvalue below the negative-clip tolerance."""


class NonConvergence(SemiradError, ArithmeticError):
    """The eigensolver exhausted its sweep budget."""


class DimensionMismatch(SemiradError, ValueError):
    """Operands have incompatible dimensions."""


class NotAdjointable(SemiradError, ValueError):
    """The operator admits no adjoint with respect to the metric."""


class DegenerateZ(SemiradError, ValueError):
    """The pivot vector of a Buzano check has (numerically) zero seminorm."""


class BadShape(SemiradError, ValueError):
    """Instance generation parameters out of range."""


class UnknownCheck(SemiradError, KeyError):
    """No registered check with the requested id."""


class NotAnInequality(SemiradError, ValueError):
    """The tightness probe only applies to inequality check families."""


class ConsistencyError(SemiradError, ArithmeticError):
    """Two internally redundant computations disagreed beyond tolerance.

    Raised when the null-space and range membership tests disagree, or when
    the compression and theta-sup radius routes drift apart; either indicates
    a numerical defect rather than a property violation.
    """
