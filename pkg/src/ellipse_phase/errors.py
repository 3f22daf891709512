"""Exception types shared across the package."""


class EllipsePhaseError(Exception):
    """Base class for all package-specific errors."""


class DegenerateLattice(EllipsePhaseError):
    """The period ratio p2/p1 is real (or too close to real) to span a lattice."""


class AccuracyNotMet(EllipsePhaseError):
    """The evaluator cannot certify the requested relative error."""


class PoleOrZeroHit(EllipsePhaseError):
    """A sample point landed on a zero or pole; the caller should resample."""


class UnbalancedDivisor(EllipsePhaseError):
    """Zero and pole counts differ, so no doubly periodic phase exists."""


class AbelViolation(EllipsePhaseError):
    """Divisor sums are not lattice-congruent; no periodic sigma quotient exists."""


class IllConditioned(EllipsePhaseError):
    """The period pair is too close to collinear for a stable solve."""


class TooManyPoleHits(EllipsePhaseError):
    """Grid resampling kept landing on zeros or poles."""


class ContourTooClose(EllipsePhaseError):
    """No contour offset kept the required distance from zeros and poles."""


class IoFailure(EllipsePhaseError):
    """An output file could not be written."""
