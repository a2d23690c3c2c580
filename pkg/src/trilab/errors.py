"""Exception types shared across the package."""


class TrilabError(Exception):
    """Base class for all package-specific errors."""


class CollisionSingularity(TrilabError):
    """A pairwise distance is zero where the potential or force is singular."""


class DegenerateMasses(TrilabError):
    """A mass configuration outside the domain of a formula (e.g. m1 == m2)."""


class AlphaTwoSingular(TrilabError):
    """Closed-form derivative prefactor has a pole at alpha = 2."""


class NotSquarefree(TrilabError):
    """Polynomial has repeated roots where a squarefree one is required."""


class IndeterminateEnclosure(TrilabError):
    """Interval enclosure too wide to determine a sign; refine the bounds."""


class InfeasiblePoint(TrilabError):
    """Search point whose trajectory cannot be evaluated (collision or step failure)."""


class NoProgress(TrilabError):
    """Local refinement could not reduce the objective within its budget."""


class SchemaMismatch(TrilabError):
    """Input file does not match the expected CSV schema."""
