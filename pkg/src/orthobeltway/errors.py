"""Exception hierarchy shared by all orthobeltway modules."""


class BeltwayError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionError(BeltwayError):
    """More points than ambient dimensions where a k <= n reduction is required."""


class DimensionMismatch(BeltwayError):
    """Two points of different ambient dimension were combined."""


class NotPSD(BeltwayError):
    """A candidate Gram matrix has an eigenvalue below the negativity threshold."""


class RankExceeded(BeltwayError):
    """A Gram matrix has numerical rank larger than the target dimension."""


class PreconditionError(BeltwayError):
    """Input violates a structural precondition of the requested construction."""


class NoRealSolution(BeltwayError):
    """The swap construction has no real last coordinate (negative norm residual)."""


class DegeneratePartner(BeltwayError):
    """The swap construction collapses to the input's own orbit."""


class CollisionError(BeltwayError):
    """Signal support is not collision-free, so the finite moment encoding is lossy."""


class NotCollisionFree(CollisionError):
    """An invariant set contains coinciding pair orbits, so enumeration is refused."""


class NotRadiallyCollisionFree(BeltwayError):
    """Unique recovery requires pairwise distinct point magnitudes."""


class InconsistentWeights(BeltwayError):
    """Off-diagonal weight products cannot be realized by any single weight vector."""


class WeightProductsNotDistinct(BeltwayError):
    """Direct weight-product addressing requires pairwise distinct products."""


class BudgetExceeded(BeltwayError):
    """Backtracking enumeration exhausted its node budget."""


class InvalidInvariantSet(BeltwayError):
    """An invariant set is structurally malformed (counts, ordering, or triples)."""


class ScaleError(BeltwayError):
    """Half-circle embedding scale is smaller than the largest pairwise distance."""


class DegenerateParameters(BeltwayError):
    """Parametric point sets collapsed to fewer than the required distinct elements."""


class ConfigError(BeltwayError):
    """Invalid experiment configuration."""


class FileFormatError(BeltwayError):
    """A signal or invariant text file does not follow the documented format."""
