"""Exception hierarchy shared by all modules."""


class AdmeshError(Exception):
    """Base class for every error raised by the package."""


class DomainError(AdmeshError, ValueError):
    """An argument lies outside the domain of the operation."""


class GeometryError(AdmeshError, ValueError):
    """Invalid arc/boundary data or degenerate point geometry."""


class BoundaryParseError(GeometryError):
    """A boundary document could not be parsed.

    ``arc_index`` and ``field`` locate the offending entry when known.
    """

    def __init__(self, message, arc_index=None, field=None):
        where = []
        if arc_index is not None:
            where.append(f"arc {arc_index}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
        self.arc_index = arc_index
        self.field = field


class SingularMatrixError(AdmeshError, ArithmeticError):
    """A factorization or solve hit a (numerically) zero pivot at ``index``."""

    def __init__(self, message, index):
        super().__init__(message)
        self.index = index


class RankDeficiencyError(SingularMatrixError):
    """Orthonormalization failed; ``degree`` is the first degree lost to rounding."""

    def __init__(self, message, degree):
        super().__init__(message, degree)
        self.degree = degree


class ExtractionError(AdmeshError, RuntimeError):
    """Node extraction could not produce n+1 unisolvent nodes."""


class UsageError(AdmeshError, ValueError):
    """Inconsistent combination of otherwise valid inputs."""
