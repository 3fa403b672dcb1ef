"""Exception hierarchy shared by all diophlab modules."""


class DiophlabError(Exception):
    """Base class for all library errors."""


class PrecisionInsufficient(DiophlabError):
    """An interval is too wide to certify the requested decision."""


class UnevaluatableDigitStream(DiophlabError):
    """A digit-stream oracle ran out of digits before reaching the target width."""


class RationalTheta(DiophlabError):
    """Operation requires an irrational theta."""


class KRational(DiophlabError):
    """Theta lies in (the image of) the number field, violating K-irrationality."""


class ZeroTheta(DiophlabError):
    """Operation requires theta != 0."""


class LengthMismatch(DiophlabError):
    """Sequences have different lengths."""


class DimensionMismatch(DiophlabError):
    """Matrix / vector dimensions are inconsistent."""


class DependentRows(DiophlabError):
    """Lattice basis rows are linearly dependent over Q."""


class WitnessNotFound(DiophlabError):
    """A bounded witness search was exhausted without a find."""

    def __init__(self, bound, message=None):
        self.bound = bound
        super().__init__(message or f"no witness found within search bound {bound}")


class SearchExhausted(DiophlabError):
    """A bounded construction search was exhausted."""

    def __init__(self, stage, bound, message=None):
        self.stage = stage
        self.bound = bound
        super().__init__(message or f"search exhausted at stage {stage} (bound {bound})")


class NotPositive(DiophlabError):
    """Field element fails the coordinatewise positivity precondition."""


class EnumerationCapExceeded(DiophlabError):
    """Pigeonhole enumeration would exceed the configured cap."""


class NotAutomorphism(DiophlabError):
    """Supplied basis matrix is not a field automorphism."""


class NonIntegralCoefficients(DiophlabError):
    """Conjugate-product polynomial produced non-integer coefficients (arithmetic bug)."""


class UnsupportedProjection(DiophlabError):
    """Render projection outside the sample's dimensions."""


class WrongInstanceShape(DiophlabError):
    """Harness instance does not match the named conjecture's hypotheses."""


class OracleParseError(DiophlabError):
    """Text could not be parsed as an oracle literal."""
