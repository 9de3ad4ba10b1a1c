"""Exception types shared across the toolkit.

Domain errors derive from :class:`StarmetricError` so callers (notably the
CLI) can distinguish bad input from genuine bugs.  :class:`InternalCheckError`
is reserved for self-checks that are mathematically guaranteed to pass; it
firing means the implementation is wrong, never the input.
"""

from __future__ import annotations


class StarmetricError(Exception):
    """Base class for all toolkit errors."""


class InvalidSpaceError(StarmetricError, ValueError):
    """A distance matrix violates a structural axiom.

    ``kind`` is one of ``"labels"``, ``"shape"``, ``"diagonal"``,
    ``"asymmetry"``, ``"negative"``, ``"coincident"`` so each axiom
    violation is reported distinctly.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class NotUltrametricError(StarmetricError, ValueError):
    """An operation requiring an ultrametric space got a non-ultrametric one.

    ``violation`` carries the first triple breaking the strong triangle
    inequality (see :class:`starmetric.spaces.Violation`).
    """

    def __init__(self, violation, message: str | None = None):
        super().__init__(message or f"space is not ultrametric: {violation}")
        self.violation = violation


class DegenerateLabelingError(StarmetricError, ValueError):
    """A labeled tree has an edge whose two endpoint labels are both zero."""

    def __init__(self, edge: tuple[str, str]):
        super().__init__(f"degenerate labeling: both endpoints of edge {edge} are labeled 0")
        self.edge = edge


class CenterViolationError(StarmetricError, ValueError):
    """A candidate star center fails the center condition.

    ``pair`` is the first witnessing pair (x, y) with d(center, x) > d(y, x).
    """

    def __init__(self, center: str, pair: tuple[str, str], message: str):
        super().__init__(message)
        self.center = center
        self.pair = pair


class SizeCapError(StarmetricError, ValueError):
    """A search was refused because the input exceeds its size cap."""


class NotCompleteMultipartiteError(StarmetricError, ValueError):
    """A four-point diametrical graph is not complete multipartite.

    For four-point inputs this certifies the space is not ultrametric.
    """


class InternalCheckError(StarmetricError, RuntimeError):
    """A theorem-backed self-check failed; this always indicates a bug."""
