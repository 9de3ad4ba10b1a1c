"""Membership and embeddability decisions for star-generated ultrametrics.

Two independent criteria decide whether a finite ultrametric space is
generated by a labeled star: existence of a center (a point at least as
close to every other point as anything else is) and absence of a four-point
subspace whose diametrical graph is a 4-cycle.  For finite spaces these are
provably equivalent, so :func:`diagnose` runs both and treats any
disagreement as a fatal internal bug rather than picking a side.

The module also hosts the shift transforms (subtracting or adding a constant
to every positive distance, which preserves ultrametricity and every
diametrical classification) and the max-metric model on positive rationals,
d(p, q) = max(p, q), together with an embedding decision procedure for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from . import similarity
from .errors import InternalCheckError
from .rationals import RationalLike, format_rational, parse_rational
from .spaces import (
    FiniteMetricSpace,
    min_positive_distance,
    require_ultrametric,
    restrict,
)
from .stars import center_condition_violation


class Verdict(Enum):
    US = "US"
    FORBIDDEN = "FORBIDDEN"
    # reserved for inputs that cannot be fully scanned; never produced for
    # finite matrices, where the two criteria decide everything
    EMBEDDABLE_NOT_DECIDED = "EMBEDDABLE_NOT_DECIDED"


@dataclass(frozen=True)
class CenterWitness:
    center: str


@dataclass(frozen=True)
class ForbiddenWitness:
    quad: tuple[str, str, str, str]
    signature: tuple[int, int]
    model: str  # "X4" or "Y4"

    def to_dict(self) -> dict:
        return {
            "quad": list(self.quad),
            "signature": list(self.signature),
            "model": self.model,
        }


@dataclass(frozen=True)
class DiagnosisReport:
    verdict: Verdict
    center: Optional[CenterWitness]
    forbidden: Optional[ForbiddenWitness]


def find_center(space: FiniteMetricSpace, check: bool = True) -> Optional[CenterWitness]:
    """First point satisfying the center condition, or None.

    A center x0 satisfies d(x0, x) <= d(y, x) for every x != x0 and y != x.
    Naive cubic scan; pass ``check=False`` when the input is already known
    to be ultrametric.
    """
    if check:
        require_ultrametric(space)
    for candidate in space.points:
        if center_condition_violation(space, candidate) is None:
            return CenterWitness(candidate)
    return None


def _quad_is_c4(space: FiniteMetricSpace, quad: Sequence[int]) -> bool:
    # signature (2,2) on four points == exactly two sub-diameter pairs,
    # and those two pairs disjoint
    d = space.dist
    pairs = (
        (quad[0], quad[1]), (quad[0], quad[2]), (quad[0], quad[3]),
        (quad[1], quad[2]), (quad[1], quad[3]), (quad[2], quad[3]),
    )
    values = [d[i][j] for i, j in pairs]
    diam = max(values)
    low = [pairs[k] for k, v in enumerate(values) if v < diam]
    if len(low) != 2:
        return False
    (a, b), (c, e) = low
    return a != c and a != e and b != c and b != e


def forbidden_scan(
    space: FiniteMetricSpace, check: bool = True
) -> Optional[ForbiddenWitness]:
    """First four-point subset whose diametrical graph is a 4-cycle.

    Subsets are visited in lexicographic point order, exhaustively over all
    C(n, 4) of them.  The witness carries the model classification of the
    offending quad.  Spaces with fewer than four points trivially pass.
    """
    if check:
        require_ultrametric(space)
    n = space.n
    if n < 4:
        return None
    for quad in combinations(range(n), 4):
        if _quad_is_c4(space, quad):
            labels = tuple(space.points[i] for i in quad)
            sub = restrict(space, labels)
            qm = similarity.classify_forbidden(sub)
            return ForbiddenWitness(labels, (2, 2), qm.model)
    return None


def diagnose(space: FiniteMetricSpace, check: bool = True) -> DiagnosisReport:
    """Run both membership criteria and assert they agree.

    For finite ultrametric spaces a center exists iff no forbidden quad
    does; disagreement can only mean an implementation bug and is raised
    loudly instead of being resolved silently.
    """
    if check:
        require_ultrametric(space)
    center = find_center(space, check=False)
    forbidden = forbidden_scan(space, check=False)
    if (center is None) != (forbidden is not None):
        raise InternalCheckError(
            "membership criteria disagree: "
            f"center={center}, forbidden={forbidden}; this is a bug"
        )
    if center is not None:
        return DiagnosisReport(Verdict.US, center, None)
    return DiagnosisReport(Verdict.FORBIDDEN, None, forbidden)


def shift(space: FiniteMetricSpace, delta: RationalLike, check: bool = True) -> FiniteMetricSpace:
    """Subtract ``delta`` from every positive distance.

    Requires 0 <= delta < min D0 so distances stay positive.  The result is
    again ultrametric and the diametrical graph of every subset is unchanged,
    because subtracting a constant preserves the order of distances.
    """
    delta = parse_rational(delta)
    if delta < 0:
        raise ValueError(f"delta = {delta} must be non-negative")
    if check:
        require_ultrametric(space)
    if delta == 0:
        return space
    floor = min_positive_distance(space)
    if floor is not None and delta >= floor:
        raise ValueError(f"delta = {delta} must be strictly below min D0 = {floor}")
    n = space.n
    rows = [
        [space.dist[i][j] - delta if i != j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    return FiniteMetricSpace(space.points, rows)


def unshift(space: FiniteMetricSpace, delta: RationalLike, check: bool = True) -> FiniteMetricSpace:
    """Add ``delta`` to every positive distance; exact inverse of :func:`shift`."""
    delta = parse_rational(delta)
    if delta < 0:
        raise ValueError(f"delta = {delta} must be non-negative")
    if check:
        require_ultrametric(space)
    if delta == 0:
        return space
    n = space.n
    rows = [
        [space.dist[i][j] + delta if i != j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    return FiniteMetricSpace(space.points, rows)


def dplus_space(values: Sequence[RationalLike]) -> FiniteMetricSpace:
    """Finite slice of the max-metric on positive rationals.

    Points are labeled by their values (sorted ascending) and the distance
    between distinct points is the larger value.  Every such space is
    star-generated, with the smallest point as a center.
    """
    parsed = [parse_rational(v) for v in values]
    if not parsed:
        raise ValueError("need at least one value")
    for v in parsed:
        if v <= 0:
            raise ValueError(f"values must be positive, got {v}")
    if len(set(parsed)) != len(parsed):
        raise ValueError("values must be distinct")
    parsed.sort()
    labels = [format_rational(v) for v in parsed]
    n = len(parsed)
    rows = [
        [Fraction(0) if i == j else max(parsed[i], parsed[j]) for j in range(n)]
        for i in range(n)
    ]
    return FiniteMetricSpace(labels, rows)


def embeds_in_dplus(
    space: FiniteMetricSpace, check: bool = True
) -> Optional[dict[str, Fraction]]:
    """Injective weights w with d(x, y) = max(w(x), w(y)), or None.

    Decision procedure: each point's candidate weight is its row minimum.
    In an embeddable space that recovers the true weight of every point
    except the bottom one, whose candidate collides with the second weight.
    The minimum positive distance must then be attained by exactly one pair;
    the lexicographically smaller member of that pair is reassigned half the
    second-smallest candidate (halving again on any collision, which cannot
    actually occur), and the max equation is verified before returning.
    """
    if check:
        require_ultrametric(space)
    n = space.n
    if n == 1:
        return {space.points[0]: Fraction(1)}
    dist = space.dist
    candidates = [min(dist[i][j] for j in range(n) if j != i) for i in range(n)]
    floor = min(candidates)
    attaining = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if dist[i][j] == floor
    ]
    if len(attaining) != 1:
        return None
    bottom = attaining[0][0]
    weights = list(candidates)
    second = sorted(candidates)[1]
    value = second / 2
    taken = {w for k, w in enumerate(weights) if k != bottom}
    while value in taken:
        value /= 2
    weights[bottom] = value
    if len(set(weights)) != n:
        return None
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != max(weights[i], weights[j]):
                return None
    return {space.points[i]: weights[i] for i in range(n)}
