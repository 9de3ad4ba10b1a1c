"""Finite metric spaces over exact rational distances.

A :class:`FiniteMetricSpace` is an ordered tuple of point labels plus a
symmetric positive matrix of ``Fraction`` distances.  Construction enforces
the structural axioms (square shape, zero diagonal, symmetry, positive
off-diagonal entries); the triangle inequalities are checked by
:func:`validate`, which distinguishes metric from ultrametric input and
reports the first violating triple.

Everything here is immutable and purely functional: operations return new
values and never mutate their inputs, so concurrent use needs no locking.
Tie-breaking is always lexicographic in the stored point order, making every
operation deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import InvalidSpaceError, NotUltrametricError, SizeCapError, InternalCheckError
from .rationals import RationalLike, format_rational, parse_rational


class FiniteMetricSpace:
    """Ordered point labels plus an exact symmetric distance matrix."""

    __slots__ = ("points", "dist", "_pos")

    def __init__(self, points: Sequence[str], dist: Sequence[Sequence[RationalLike]]):
        pts = tuple(points)
        if not pts:
            raise InvalidSpaceError("labels", "a space needs at least one point")
        if any(not isinstance(p, str) or not p for p in pts):
            raise InvalidSpaceError("labels", "point labels must be non-empty strings")
        if len(set(pts)) != len(pts):
            raise InvalidSpaceError("labels", "point labels must be unique")
        n = len(pts)
        rows = tuple(tuple(parse_rational(x) for x in row) for row in dist)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise InvalidSpaceError(
                "shape", f"distance matrix must be {n}x{n} to match {n} points"
            )
        for i in range(n):
            if rows[i][i] != 0:
                raise InvalidSpaceError(
                    "diagonal", f"d({pts[i]},{pts[i]}) = {rows[i][i]} must be 0"
                )
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise InvalidSpaceError(
                        "asymmetry",
                        f"d({pts[i]},{pts[j]}) = {rows[i][j]} but "
                        f"d({pts[j]},{pts[i]}) = {rows[j][i]}",
                    )
                if rows[i][j] < 0:
                    raise InvalidSpaceError(
                        "negative", f"d({pts[i]},{pts[j]}) = {rows[i][j]} is negative"
                    )
                if rows[i][j] == 0:
                    raise InvalidSpaceError(
                        "coincident",
                        f"d({pts[i]},{pts[j]}) = 0 but {pts[i]} != {pts[j]}",
                    )
        self.points = pts
        self.dist = rows
        self._pos = {p: i for i, p in enumerate(pts)}

    @property
    def n(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise KeyError(f"unknown point label {label!r}") from None

    def d(self, a: str, b: str) -> Fraction:
        return self.dist[self.index(a)][self.index(b)]

    @classmethod
    def from_pairs(
        cls, points: Sequence[str], pairs: Mapping[tuple[str, str], RationalLike]
    ) -> "FiniteMetricSpace":
        """Build a space from point labels and one distance per unordered pair."""
        pts = tuple(points)
        pos = {p: i for i, p in enumerate(pts)}
        n = len(pts)
        rows = [[Fraction(0)] * n for _ in range(n)]
        seen = set()
        for (a, b), value in pairs.items():
            i, j = pos[a], pos[b]
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InvalidSpaceError("labels", f"duplicate distance for pair ({a},{b})")
            seen.add(key)
            rows[i][j] = rows[j][i] = parse_rational(value)
        if len(seen) != n * (n - 1) // 2:
            raise InvalidSpaceError("shape", "missing distances for some point pairs")
        return cls(pts, rows)

    def to_dict(self) -> dict:
        """JSON-ready form: labels plus distance strings like '3' or '1/2'."""
        return {
            "points": list(self.points),
            "dist": [[format_rational(x) for x in row] for row in self.dist],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteMetricSpace":
        if not isinstance(data, dict) or "points" not in data or "dist" not in data:
            raise InvalidSpaceError("shape", "space JSON must have 'points' and 'dist'")
        return cls(data["points"], data["dist"])

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteMetricSpace):
            return NotImplemented
        return self.points == other.points and self.dist == other.dist

    def __hash__(self) -> int:
        return hash((self.points, self.dist))

    def __repr__(self) -> str:
        return f"FiniteMetricSpace({len(self.points)} points: {', '.join(self.points)})"


@dataclass(frozen=True)
class Violation:
    """A triple (x, via, y) with d(x, y) > max(d(x, via), d(via, y))."""

    x: str
    via: str
    y: str
    lhs: Fraction
    bound: Fraction

    def to_dict(self) -> dict:
        return {
            "triple": [self.x, self.via, self.y],
            "d_xy": format_rational(self.lhs),
            "bound": format_rational(self.bound),
        }


@dataclass(frozen=True)
class UltraDiagnosis:
    """Outcome of the triangle-inequality checks over all ordered triples."""

    is_metric: bool
    is_ultrametric: bool
    violation: Optional[Violation]

    def to_dict(self) -> dict:
        return {
            "is_metric": self.is_metric,
            "is_ultrametric": self.is_ultrametric,
            "violation": self.violation.to_dict() if self.violation else None,
        }


@dataclass(frozen=True)
class Spectrum:
    """The sorted distinct distances of a space, always starting at 0."""

    values: tuple[Fraction, ...]

    @property
    def diameter(self) -> Fraction:
        return self.values[-1]

    @property
    def d0(self) -> tuple[Fraction, ...]:
        """The positive distances (the spectrum without its leading 0)."""
        return self.values[1:]


def validate(space: FiniteMetricSpace) -> UltraDiagnosis:
    """Check the strong triangle inequality over every ordered triple.

    Returns the first violating triple in lexicographic point order, if any.
    ``is_metric`` reports the ordinary triangle inequality; an ultrametric
    space is always metric, so both flags are true in the good case.
    """
    dist = space.dist
    points = space.points
    n = len(points)
    violation = None
    for a in range(n):
        row_a = dist[a]
        for b in range(n):
            if b == a:
                continue
            dab = row_a[b]
            row_b = dist[b]
            for c in range(n):
                if c == a or c == b:
                    continue
                bound = dab if dab >= row_b[c] else row_b[c]
                if row_a[c] > bound:
                    violation = Violation(points[a], points[b], points[c], row_a[c], bound)
                    break
            if violation:
                break
        if violation:
            break
    if violation is None:
        return UltraDiagnosis(is_metric=True, is_ultrametric=True, violation=None)
    is_metric = all(
        dist[a][c] <= dist[a][b] + dist[b][c]
        for a in range(n)
        for b in range(n)
        if b != a
        for c in range(n)
        if c != a and c != b
    )
    return UltraDiagnosis(is_metric=is_metric, is_ultrametric=False, violation=violation)


def is_ultrametric(space: FiniteMetricSpace) -> bool:
    return validate(space).is_ultrametric


def require_ultrametric(space: FiniteMetricSpace) -> None:
    """Raise :class:`NotUltrametricError` unless the space is ultrametric."""
    diag = validate(space)
    if not diag.is_ultrametric:
        raise NotUltrametricError(diag.violation)


def spectrum(space: FiniteMetricSpace) -> Spectrum:
    """Sorted distinct distances including 0; the diameter is the last entry."""
    seen = {Fraction(0)}
    dist = space.dist
    n = space.n
    for i in range(n):
        for j in range(i + 1, n):
            seen.add(dist[i][j])
    return Spectrum(tuple(sorted(seen)))


def min_positive_distance(space: FiniteMetricSpace) -> Optional[Fraction]:
    """The smallest positive distance, or None for a singleton."""
    n = space.n
    if n < 2:
        return None
    dist = space.dist
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            if best is None or dist[i][j] < best:
                best = dist[i][j]
    return best


def restrict(space: FiniteMetricSpace, subset: Iterable[str]) -> FiniteMetricSpace:
    """Induced subspace on ``subset``, in the order given.

    Unordered set input falls back to the space's stored point order so the
    result stays deterministic.
    """
    labels = list(subset)
    if isinstance(subset, (set, frozenset)):
        labels.sort(key=space.index)
    if not labels:
        raise ValueError("cannot restrict to an empty point set")
    idx = [space.index(p) for p in labels]
    if len(set(idx)) != len(idx):
        raise ValueError("restriction subset contains repeated labels")
    dist = space.dist
    rows = [[dist[i][j] for j in idx] for i in idx]
    return FiniteMetricSpace(labels, rows)


def min_pair(space: FiniteMetricSpace) -> Optional[tuple[str, str, Fraction]]:
    """First pair (in lexicographic point order) attaining the minimum
    positive distance; None for a singleton."""
    n = space.n
    if n < 2:
        return None
    dist = space.dist
    best = None
    arg = (0, 1)
    for i in range(n):
        for j in range(i + 1, n):
            if best is None or dist[i][j] < best:
                best = dist[i][j]
                arg = (i, j)
    return (space.points[arg[0]], space.points[arg[1]], best)


def swap_isometry(space: FiniteMetricSpace, x1: str, x2: str) -> dict[str, str]:
    """The transposition of a minimum-distance pair, as a point permutation.

    Exchanging the two members of a pair realizing min D0 fixes every other
    point and preserves all distances; that preservation is re-verified here
    before returning, and a failure raises :class:`InternalCheckError`.
    """
    require_ultrametric(space)
    i, j = space.index(x1), space.index(x2)
    if i == j:
        raise ValueError("swap requires two distinct points")
    mp = min_pair(space)
    assert mp is not None
    if space.dist[i][j] != mp[2]:
        raise ValueError(
            f"pair ({x1},{x2}) at distance {space.dist[i][j]} does not attain "
            f"the minimum positive distance {mp[2]}"
        )
    perm = {p: p for p in space.points}
    perm[x1], perm[x2] = x2, x1
    for a in space.points:
        for b in space.points:
            if space.d(perm[a], perm[b]) != space.d(a, b):
                raise InternalCheckError(
                    f"swap of ({x1},{x2}) failed to preserve d({a},{b})"
                )
    return perm


def adjoin_near(
    space: FiniteMetricSpace,
    anchor: str,
    eps: RationalLike,
    label: Optional[str] = None,
) -> FiniteMetricSpace:
    """Adjoin one point at distance ``eps`` from ``anchor``.

    Requires 0 < eps < min D0, so the new pair becomes the unique minimum.
    Distances from the new point to everything else are copied from the
    anchor, which keeps the result ultrametric.  Restricting back to the
    original labels returns the input bit-exactly.
    """
    require_ultrametric(space)
    eps = parse_rational(eps)
    a = space.index(anchor)
    if eps <= 0:
        raise ValueError(f"eps = {eps} must be positive")
    floor = min_positive_distance(space)
    if floor is not None and eps >= floor:
        raise ValueError(f"eps = {eps} must be strictly below min D0 = {floor}")
    if label is None:
        label = "c"
        k = 2
        while label in space.points:
            label = f"c{k}"
            k += 1
    elif label in space.points:
        raise ValueError(f"label {label!r} is already a point of the space")
    n = space.n
    rows = [list(row) + [space.dist[a][i]] for i, row in enumerate(space.dist)]
    new_row = [space.dist[a][i] for i in range(n)] + [Fraction(0)]
    rows[a][n] = eps
    new_row[a] = eps
    rows.append(new_row)
    return FiniteMetricSpace(space.points + (label,), rows)


def _row_profile(space: FiniteMetricSpace, i: int) -> tuple[Fraction, ...]:
    return tuple(sorted(space.dist[i][j] for j in range(space.n) if j != i))


def are_isometric(
    a: FiniteMetricSpace, b: FiniteMetricSpace, max_points: int = 8
) -> Optional[dict[str, str]]:
    """Search for a distance-preserving bijection from ``a`` onto ``b``.

    Backtracks over point assignments in stored order with distance-multiset
    pruning, so the returned witness is the lexicographically first one.
    Sizes above ``max_points`` are refused explicitly rather than allowed to
    crawl through factorial search space.
    """
    if a.n > max_points or b.n > max_points:
        raise SizeCapError(
            f"isometry search capped at {max_points} points "
            f"(got {a.n} and {b.n}); raise max_points to override"
        )
    if a.n != b.n:
        return None
    n = a.n
    if sorted(x for row in a.dist for x in row) != sorted(x for row in b.dist for x in row):
        return None
    prof_a = [_row_profile(a, i) for i in range(n)]
    prof_b = [_row_profile(b, i) for i in range(n)]
    assign: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if used[j] or prof_a[i] != prof_b[j]:
                continue
            if any(a.dist[i][k] != b.dist[j][assign[k]] for k in range(i)):
                continue
            assign.append(j)
            used[j] = True
            if extend(i + 1):
                return True
            used[j] = False
            assign.pop()
        return False

    if not extend(0):
        return None
    return {a.points[i]: b.points[assign[i]] for i in range(n)}
