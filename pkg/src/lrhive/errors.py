"""Exception hierarchy shared across the package."""


class LRHiveError(Exception):
    """Base class for all lrhive errors."""


class ParseFailure(LRHiveError):
    """Text input could not be parsed."""


class NotWeaklyDecreasing(LRHiveError):
    """Partition parts increase somewhere."""


class NegativePart(LRHiveError):
    """Partition contains a negative entry."""


class WeightImbalance(LRHiveError):
    """Triple violates |lambda| + |mu| = |nu|."""


class RankMismatch(LRHiveError):
    """Partition lengths disagree."""


class NonIntegralScale(LRHiveError):
    """Scaled shift vector requested as integers but is not integral."""


class BudgetExceeded(LRHiveError):
    """Enumeration search exceeded its node budget."""


class DimensionMismatch(LRHiveError):
    """Vector length does not match the constraint system."""


class Infeasible(LRHiveError):
    """Linear program has no feasible point."""


class Unbounded(LRHiveError):
    """Linear program objective is unbounded."""


class FlatBody(LRHiveError):
    """Polytope is contained in a facet hyperplane (zero volume)."""


class OnBoundary(LRHiveError):
    """Point is not strictly interior to the body."""


class NotPositiveDefinite(LRHiveError):
    """Matrix passed to a Cholesky-based step is not positive definite."""


class OutOfRange(LRHiveError):
    """Parameter outside its documented domain."""


class RoundingFailure(LRHiveError):
    """Rounding transform produced an unusable body."""


class NonIntegralMidpoint(LRHiveError):
    """Convex combination of triples is not integral."""


class SamplingStarved(LRHiveError):
    """Rejection sampling ran out of attempts before collecting enough trials."""
