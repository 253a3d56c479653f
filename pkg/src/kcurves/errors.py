"""Exception hierarchy shared by the whole package.

Every error carries the CLI exit code it maps to: 2 for invalid input,
3 for exhausted budgets, 4 for violated internal invariants.
"""

from __future__ import annotations


class KCurvesError(Exception):
    exit_code = 2


# --- surface construction -------------------------------------------------

class IncompleteGluing(KCurvesError):
    """Some edge slot is missing from (or repeated in) the gluing."""


class MixedDirectionGluing(KCurvesError):
    """A vertical slot is paired with a horizontal slot."""


class NonOrientable(KCurvesError):
    """No consistent orientation of the squares exists for this gluing."""


class ConeConditionViolated(KCurvesError):
    """A vertex is adjacent to fewer than 4 square corners."""

    def __init__(self, vertex, degree):
        super().__init__(f"vertex {vertex} has only {degree} corners (needs >= 4)")
        self.vertex = vertex
        self.degree = degree


# --- curves ---------------------------------------------------------------

class PathNotClosed(KCurvesError):
    """Input loop does not close up."""


class PathLeavesSurface(KCurvesError):
    """Input loop references slots or edges that do not exist."""


class DifferentCarriers(KCurvesError):
    """Operation on curves that live on different surfaces."""


class NotInMinimalPosition(KCurvesError):
    """A realized arrangement still contains a bigon where none may remain."""
    exit_code = 4


# --- graphs, censuses, projections ---------------------------------------

class DuplicateClassInUniverse(KCurvesError):
    """Two vertices of a k-curve graph universe are the same class."""


class LowComplexitySurface(KCurvesError):
    """Curve-graph adjacency conventions differ on this carrier (chi >= 0)."""


class NotFilling(KCurvesError):
    """The given pair/system does not fill; the requested set may be infinite."""


class GammaDoesNotFill(KCurvesError):
    """Filling-graph construction needs a filling system as input."""


class ProjectionUndefined(KCurvesError):
    """Curve is disjoint from the subsurface; no projection exists."""


class AnnularSubsurface(KCurvesError):
    """Annular projections are not supported."""


class BudgetExhausted(KCurvesError):
    """Search or enumeration ran out of its node/time budget."""
    exit_code = 3

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class EngineStall(KCurvesError):
    """Reduction flow could not certify a terminal state (internal)."""
    exit_code = 4
