"""Weak similarity of finite metric spaces and four-point model matching.

Two spaces are weakly similar when a point bijection composed with a
strictly increasing bijection between their distance sets carries one metric
to the other.  Between finite totally ordered sets of equal size the
increasing bijection is unique, so the two-sided search collapses to one:
replace every distance by its rank in the sorted spectrum and look for a
bijection equating the rank matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .diametrical import diametrical_graph, multipartite_signature
from .errors import InternalCheckError, SizeCapError
from .models import MODELS, X4, Y4
from .rationals import format_rational
from .spaces import FiniteMetricSpace, require_ultrametric, spectrum

RankMatrix = tuple[tuple[int, ...], ...]


def rank_matrix(space: FiniteMetricSpace) -> RankMatrix:
    """Each distance replaced by its index in the sorted spectrum (0 = diagonal)."""
    ranks = {value: k for k, value in enumerate(spectrum(space).values)}
    return tuple(tuple(ranks[x] for x in row) for row in space.dist)


@dataclass(frozen=True)
class WeakSimilarityWitness:
    """A point bijection plus the increasing distance-set bijection it induces.

    ``phi`` maps points of the first space onto the second; ``f_pairs`` lists
    the positive distance pairs (value in the second space, value in the
    first) in increasing order, with f(0) = 0 left implicit.
    """

    phi: tuple[tuple[str, str], ...]
    f_pairs: tuple[tuple[Fraction, Fraction], ...]

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self.phi)

    @property
    def f(self) -> dict[Fraction, Fraction]:
        table = {Fraction(0): Fraction(0)}
        table.update({src: dst for src, dst in self.f_pairs})
        return table

    def verify(self, a: FiniteMetricSpace, b: FiniteMetricSpace) -> bool:
        """Re-check d_a(x, y) = f(d_b(phi x, phi y)) for every pair."""
        phi = self.mapping
        f = self.f
        for x in a.points:
            for y in a.points:
                if a.d(x, y) != f.get(b.d(phi[x], phi[y])):
                    return False
        return True

    def to_dict(self) -> dict:
        return {
            "phi": {x: y for x, y in self.phi},
            "f": [
                [format_rational(src), format_rational(dst)]
                for src, dst in self.f_pairs
            ],
        }


def weakly_similar(
    a: FiniteMetricSpace, b: FiniteMetricSpace, max_points: int = 8
) -> Optional[WeakSimilarityWitness]:
    """Search for a weak similarity from ``a`` onto ``b``.

    Present iff the spectra have equal size and some bijection equates the
    rank matrices entrywise.  Backtracking runs in stored point order with
    rank-profile pruning, so the witness is deterministic (first found).
    Spaces of different cardinality are a usage error, not a negative answer.
    """
    if a.n != b.n:
        raise ValueError(f"weak similarity needs equal point counts (got {a.n}, {b.n})")
    if a.n > max_points:
        raise SizeCapError(
            f"weak similarity search capped at {max_points} points (got {a.n}); "
            "raise max_points to override"
        )
    spec_a = spectrum(a).values
    spec_b = spectrum(b).values
    if len(spec_a) != len(spec_b):
        return None
    ra = rank_matrix(a)
    rb = rank_matrix(b)
    n = a.n
    prof_a = [tuple(sorted(ra[i][k] for k in range(n) if k != i)) for i in range(n)]
    prof_b = [tuple(sorted(rb[j][k] for k in range(n) if k != j)) for j in range(n)]
    assign: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if used[j] or prof_a[i] != prof_b[j]:
                continue
            if any(ra[i][k] != rb[j][assign[k]] for k in range(i)):
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
    witness = WeakSimilarityWitness(
        phi=tuple((a.points[i], b.points[assign[i]]) for i in range(n)),
        f_pairs=tuple(zip(spec_b[1:], spec_a[1:])),
    )
    if not witness.verify(a, b):
        raise InternalCheckError("rank-matrix match produced a non-verifying witness")
    return witness


@dataclass(frozen=True)
class QuadModel:
    """Model classification of a forbidden quad, with its explicit witness."""

    model: str  # "X4" or "Y4"
    witness: WeakSimilarityWitness


def classify_forbidden(space: FiniteMetricSpace) -> QuadModel:
    """Decide whether a 4-cycle quad matches the X4 or the Y4 model.

    Requires a four-point ultrametric space whose diametrical graph has
    signature (2, 2).  Label the two non-diameter pairs (p1, p3) and
    (p2, p4): equal chord values give the Y4 model, distinct values the X4
    model (with the point map swapped when the second chord is the smaller).
    The returned witness is re-verified before returning.
    """
    if space.n != 4:
        raise ValueError(f"forbidden-quad classification got {space.n} points")
    require_ultrametric(space)
    sig = multipartite_signature(diametrical_graph(space))
    if sig is None or sig.sizes != (2, 2):
        raise ValueError(
            "forbidden-quad classification needs diametrical signature (2, 2), "
            f"got {None if sig is None else sig.sizes}"
        )
    (p1, p3), (p2, p4) = sig.parts
    chord_a = space.d(p1, p3)
    chord_b = space.d(p2, p4)
    if chord_a == chord_b:
        model, target = "Y4", Y4
        phi = {p1: "y1", p2: "y2", p3: "y3", p4: "y4"}
    elif chord_a < chord_b:
        model, target = "X4", X4
        phi = {p1: "x1", p2: "x2", p3: "x3", p4: "x4"}
    else:
        model, target = "X4", X4
        phi = {p1: "x2", p2: "x1", p3: "x4", p4: "x3"}
    spec_s = spectrum(space).values
    spec_t = spectrum(target).values
    witness = WeakSimilarityWitness(
        phi=tuple((p, phi[p]) for p in space.points),
        f_pairs=tuple(zip(spec_t[1:], spec_s[1:])),
    )
    if not witness.verify(space, target):
        raise InternalCheckError(f"forbidden-quad witness for model {model} failed to verify")
    return QuadModel(model, witness)


def model_match(space: FiniteMetricSpace) -> Optional[str]:
    """Name of the unique canonical four-point model the space is weakly
    similar to, or None.

    Uniqueness rests on the six models being pairwise non-weakly-similar,
    which the test suite asserts outright.
    """
    if space.n != 4:
        raise ValueError(f"model matching got {space.n} points")
    for name, target in MODELS.items():
        if weakly_similar(space, target) is not None:
            return name
    return None
