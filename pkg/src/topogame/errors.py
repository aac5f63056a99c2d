"""Checked error types shared across the package.

Every error carries a stable ``name`` used verbatim in CLI output and in the
wire API, so clients can match on it.
"""


class TopogameError(Exception):
    @property
    def name(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        detail = ", ".join(str(a) for a in self.args)
        return f"{self.name}({detail})" if detail else self.name


class KindMismatch(TopogameError):
    """Descriptor or point kind does not belong to the space."""


class InvalidElement(TopogameError):
    """Descriptor violates its own invariants (e.g. undeclared finite open)."""


class ModeMismatch(TopogameError):
    """Plays or strategies from different game modes were combined."""


class NotYourTurn(TopogameError):
    pass


class NotNested(TopogameError):
    pass


class PointOutside(TopogameError):
    pass


class UnknownCertificateKind(TopogameError):
    pass


class DisjointBases(TopogameError):
    pass


class RefineBoundExceeded(TopogameError):
    pass


class NoUpperBoundWithinBound(TopogameError):
    pass


class NotDirected(TopogameError):
    pass


class BoundExceeded(TopogameError):
    pass


class UnknownGame(TopogameError):
    pass


class MalformedMove(TopogameError):
    pass
