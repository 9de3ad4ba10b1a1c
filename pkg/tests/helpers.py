"""Shared generators and independent oracles for the test suite.

Oracles here deliberately avoid the code paths they check: the ultrametric
enumeration oracle filters a raw product through validate(), and the
max-metric embedding oracle tries every point ordering outright.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

from starmetric import (
    FiniteMetricSpace,
    GeneratorSpec,
    LabeledStarGraph,
    sample_dendrogram,
    validate,
)

DEFAULT_ALPHABET = ("1", "2", "3", "4")


def sample_space(n: int, seed: int, index: int = 0, alphabet=DEFAULT_ALPHABET) -> FiniteMetricSpace:
    spec = GeneratorSpec(n=n, alphabet=alphabet, mode="sample", seed=seed, count=1)
    return sample_dendrogram(spec, index)


def random_star(rng: random.Random, max_leaves: int = 12) -> LabeledStarGraph:
    """A seeded non-degenerate labeled star with rational labels."""
    n_leaves = rng.randint(1, max_leaves)
    center_label = Fraction(rng.randint(0, 6), rng.choice((1, 2, 3, 4)))
    leaf_labels = {}
    for i in range(n_leaves):
        value = Fraction(rng.randint(0, 12), rng.choice((1, 2, 3, 4)))
        if center_label == 0 and value == 0:
            value = Fraction(rng.randint(1, 12), rng.choice((1, 2, 3, 4)))
        leaf_labels[f"v{i + 1}"] = value
    return LabeledStarGraph.build("hub", center_label, leaf_labels)


def brute_force_ultrametrics(n: int, alphabet) -> list[FiniteMetricSpace]:
    """Oracle enumeration: every raw symmetric matrix, filtered by validate()."""
    values = [Fraction(v) for v in alphabet]
    labels = tuple(f"p{i + 1}" for i in range(n))
    cells = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = []
    for assignment in product(values, repeat=len(cells)):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(cells, assignment):
            rows[i][j] = rows[j][i] = v
        space = FiniteMetricSpace(labels, rows)
        if validate(space).is_ultrametric:
            found.append(space)
    return found


def embeds_oracle(space: FiniteMetricSpace) -> bool:
    """Brute force over point orderings: the j-th point of a valid ordering
    is equidistant from all earlier points, at strictly increasing values."""
    n = space.n
    if n == 1:
        return True
    if n > 5:
        raise ValueError("ordering oracle is for n <= 5")
    dist = space.dist
    for order in permutations(range(n)):
        previous = None
        ok = True
        for jpos in range(1, n):
            j = order[jpos]
            values = {dist[order[i]][j] for i in range(jpos)}
            if len(values) != 1:
                ok = False
                break
            value = values.pop()
            if previous is not None and value <= previous:
                ok = False
                break
            previous = value
        if ok:
            return True
    return False


def scale(space: FiniteMetricSpace, factor) -> FiniteMetricSpace:
    f = Fraction(factor)
    return FiniteMetricSpace(
        space.points, [[x * f for x in row] for row in space.dist]
    )


def relabel(space: FiniteMetricSpace, new_points) -> FiniteMetricSpace:
    return FiniteMetricSpace(tuple(new_points), space.dist)
