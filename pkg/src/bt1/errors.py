"""Exception types shared across the package."""


class Bt1Error(Exception):
    """Base class for all errors raised by this package."""


class PermutationParseError(Bt1Error):
    """Malformed permutation input (CLI exit code 2)."""


class ConstraintError(Bt1Error):
    """Input violates a structural constraint, e.g. c/d mismatch (exit 3)."""


class NotMinusPair(Bt1Error):
    """A pi-order was requested for a pair outside the Minus region."""


class PathExplosion(Bt1Error):
    """Path enumeration exceeded the configured ceiling."""


class RTooLarge(Bt1Error):
    """Factorial enumeration refused: r exceeds the configured bound (exit 4)."""


class NotBT1(Bt1Error):
    """A semilinear pair fails the kernel/image matching conditions."""


class NotStabilized(Bt1Error):
    """Fixed-point counts did not stabilize within the extension bound."""


class CyclicLinear(Bt1Error):
    """A degree-1 equation mentions its own left-hand variable."""


class DimensionCeiling(Bt1Error):
    """Weight search refused: too many variables for the exact LP."""


class InternalError(Bt1Error):
    """Defensive invariant tripped; indicates a bug (exit 5)."""
