"""Generators of finite ultrametric spaces and desk-scale conjecture checks.

Two space sources feed the checks: exhaustive enumeration of every
ultrametric matrix over a small distance alphabet (in lexicographic matrix
order, duplicate-free), and seeded dendrogram sampling (random recursive
partitions with strictly decreasing level values, which are ultrametric by
construction and reach every space over the alphabet).  Campaigns stream
spaces through a chosen check, stop at the first counterexample or at
budget/exhaustion, and re-verify any counterexample from its serialized form
through an independent load path before reporting it.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import combinations
from typing import Iterator, Optional

from .decision import embeds_in_dplus
from .diametrical import FourPointClass, classify_four_point
from .errors import InternalCheckError, SizeCapError
from .models import S4, W4, Z4
from .rationals import format_rational, parse_rational
from .similarity import weakly_similar
from .spaces import FiniteMetricSpace, require_ultrametric, restrict

EXHAUSTIVE_MAX_POINTS = 5
EXHAUSTIVE_MAX_ALPHABET = 4

CONJECTURE_IDS = ("equidistant", "k112", "k13")

INTERPRETATION_NOTE = (
    "'weakly isometric' is read as weak similarity (a point bijection composed "
    "with a strictly increasing bijection between distance sets); whole-space "
    "comparison against a four-point model is only evaluable at four points "
    "and is reported NOT_EVALUABLE otherwise"
)


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters shared by both space generators."""

    n: int
    alphabet: tuple[Fraction, ...]
    mode: str = "exhaustive"  # "exhaustive" | "sample"
    seed: int = 0
    count: int = 0
    override_caps: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.mode not in ("exhaustive", "sample"):
            raise ValueError(f"unknown generator mode {self.mode!r}")
        alphabet = tuple(parse_rational(v) for v in self.alphabet)
        for v in alphabet:
            if v <= 0:
                raise ValueError(f"alphabet values must be positive, got {v}")
        if any(alphabet[i] >= alphabet[i + 1] for i in range(len(alphabet) - 1)):
            raise ValueError("alphabet must be strictly increasing")
        object.__setattr__(self, "alphabet", alphabet)


def _point_labels(n: int) -> tuple[str, ...]:
    return tuple(f"p{i + 1}" for i in range(n))


def enumerate_ultrametrics(spec: GeneratorSpec) -> Iterator[FiniteMetricSpace]:
    """Every ultrametric matrix over the alphabet, exactly once.

    Assignments of the upper triangle are explored cell by cell in row-major
    order with incremental triple pruning, so survivors stream out in
    lexicographic matrix order.  Ultrametricity over a fixed alphabet only
    depends on the order of values, so pruning runs on alphabet indices.
    """
    if not spec.override_caps and (
        spec.n > EXHAUSTIVE_MAX_POINTS or len(spec.alphabet) > EXHAUSTIVE_MAX_ALPHABET
    ):
        raise SizeCapError(
            f"exhaustive enumeration capped at n <= {EXHAUSTIVE_MAX_POINTS} and "
            f"|alphabet| <= {EXHAUSTIVE_MAX_ALPHABET}; set override_caps to force"
        )
    n = spec.n
    labels = _point_labels(n)
    if n == 1:
        yield FiniteMetricSpace(labels, [[0]])
        return
    if not spec.alphabet:
        raise ValueError("alphabet must be non-empty for n >= 2")
    cells = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index_of = {cell: k for k, cell in enumerate(cells)}
    # triples completed by each cell: cell (i, j) closes {p, i, j} for p < i
    closing: list[list[tuple[int, int]]] = []
    for i, j in cells:
        closing.append([(index_of[(p, i)], index_of[(p, j)]) for p in range(i)])
    k = len(spec.alphabet)
    values = [0] * len(cells)

    def emit() -> FiniteMetricSpace:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(cells, values):
            rows[i][j] = rows[j][i] = spec.alphabet[v]
        return FiniteMetricSpace(labels, rows)

    def fill(pos: int) -> Iterator[FiniteMetricSpace]:
        if pos == len(cells):
            yield emit()
            return
        for letter in range(k):
            values[pos] = letter
            ok = True
            for ca, cb in closing[pos]:
                x, y, z = values[ca], values[cb], letter
                m = x if x >= y else y
                if z > m:
                    m = z
                if (x == m) + (y == m) + (z == m) < 2:
                    ok = False
                    break
            if ok:
                yield from fill(pos + 1)

    yield from fill(0)


def _random_partition(block: list[int], rng: random.Random) -> list[list[int]]:
    # any partition into >= 2 parts is reachable; grouping follows first
    # appearance so the outcome is fully determined by the rng stream
    k = rng.randint(2, len(block))
    while True:
        assignment = [rng.randrange(k) for _ in block]
        groups: dict[int, list[int]] = {}
        for x, g in zip(block, assignment):
            groups.setdefault(g, []).append(x)
        if len(groups) >= 2:
            return [groups[g] for g in dict.fromkeys(assignment)]


def sample_dendrogram(spec: GeneratorSpec, index: int = 0) -> FiniteMetricSpace:
    """One seeded random ultrametric space over the alphabet.

    The point set is partitioned recursively; each split draws a level from
    the alphabet and every deeper split must use a strictly smaller one, so
    the pair distance is the level of the coarsest partition separating the
    pair.  When no smaller level remains the split is forced down to
    singletons.  Deterministic per (seed, index).
    """
    n = spec.n
    labels = _point_labels(n)
    if n == 1:
        return FiniteMetricSpace(labels, [[0]])
    if not spec.alphabet:
        raise ValueError("alphabet too small: sampling n >= 2 needs at least one level")
    rng = random.Random(f"{spec.seed}:{index}")
    rows = [[Fraction(0)] * n for _ in range(n)]

    def split(block: list[int], levels: tuple[Fraction, ...]) -> None:
        level_idx = rng.randrange(len(levels))
        level = levels[level_idx]
        lower = levels[:level_idx]
        if lower:
            groups = _random_partition(block, rng)
        else:
            groups = [[x] for x in block]
        for gi in range(len(groups)):
            for gj in range(gi + 1, len(groups)):
                for x in groups[gi]:
                    for y in groups[gj]:
                        rows[x][y] = rows[y][x] = level
        for group in groups:
            if len(group) >= 2:
                split(group, lower)

    split(list(range(n)), spec.alphabet)
    return FiniteMetricSpace(labels, rows)


def generate(spec: GeneratorSpec) -> Iterator[FiniteMetricSpace]:
    """Stream from the generator selected by ``spec.mode``."""
    if spec.mode == "exhaustive":
        yield from enumerate_ultrametrics(spec)
    else:
        for index in range(spec.count):
            yield sample_dendrogram(spec, index)


# ---------------------------------------------------------------------------
# conjecture checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquidistantCheck:
    all_equal: bool
    all_quads_k1111: bool

    @property
    def agree(self) -> bool:
        return self.all_equal == self.all_quads_k1111


def check_equidistant(space: FiniteMetricSpace, check: bool = True) -> EquidistantCheck:
    """Equidistance versus all-quads-K1111, evaluated independently.

    The two sides are provably equivalent for ultrametric spaces, so a
    disagreement in the returned record indicates a bug, not mathematics.
    """
    if space.n < 4:
        raise ValueError("equidistance check needs at least four points")
    if check:
        require_ultrametric(space)
    n = space.n
    dist = space.dist
    reference = dist[0][1]
    all_equal = all(
        dist[i][j] == reference for i in range(n) for j in range(i + 1, n)
    )
    all_quads = all(
        classify_four_point(restrict(space, [space.points[i] for i in quad]))
        == FourPointClass.K1111
        for quad in combinations(range(n), 4)
    )
    return EquidistantCheck(all_equal, all_quads)


@dataclass(frozen=True)
class K112Check:
    every_quad_k112: bool
    every_quad_w4_similar: bool
    whole_space_w4_similar: Optional[bool]  # None when not evaluable (n != 4)
    biconditional_violations: tuple[tuple[str, ...], ...]

    @property
    def consistent(self) -> bool:
        if self.biconditional_violations:
            return False
        if self.whole_space_w4_similar is not None:
            return self.whole_space_w4_similar == self.every_quad_w4_similar
        return True


def check_k112_conjecture(space: FiniteMetricSpace, check: bool = True) -> K112Check:
    """Per-quad biconditional: classifies K112 iff weakly similar to W4."""
    if space.n < 4:
        raise ValueError("K112 conjecture check needs at least four points")
    if check:
        require_ultrametric(space)
    n = space.n
    quad_k112 = []
    quad_w4 = []
    violations = []
    for quad in combinations(range(n), 4):
        labels = tuple(space.points[i] for i in quad)
        sub = restrict(space, labels)
        is_k112 = classify_four_point(sub) == FourPointClass.K112
        is_w4 = weakly_similar(sub, W4) is not None
        quad_k112.append(is_k112)
        quad_w4.append(is_w4)
        if is_k112 != is_w4:
            violations.append(labels)
    whole = (weakly_similar(space, W4) is not None) if n == 4 else None
    return K112Check(all(quad_k112), all(quad_w4), whole, tuple(violations))


@dataclass(frozen=True)
class K13Check:
    statement_i: bool  # every quad K13 and none weakly similar to Z4
    statement_ii: bool  # every quad weakly similar to S4
    statement_iii: bool  # the space embeds into the max-metric model
    disagreements: tuple[tuple[str, str], ...]

    @property
    def truth_vector(self) -> tuple[bool, bool, bool]:
        return (self.statement_i, self.statement_ii, self.statement_iii)

    @property
    def consistent(self) -> bool:
        return not self.disagreements


def check_k13_conjecture(space: FiniteMetricSpace, check: bool = True) -> K13Check:
    """Evaluate the three K13 statements independently and compare them."""
    if space.n < 4:
        raise ValueError("K13 conjecture check needs at least four points")
    if check:
        require_ultrametric(space)
    n = space.n
    all_k13 = True
    any_z4 = False
    all_s4 = True
    for quad in combinations(range(n), 4):
        sub = restrict(space, [space.points[i] for i in quad])
        if classify_four_point(sub) != FourPointClass.K13:
            all_k13 = False
        if weakly_similar(sub, Z4) is not None:
            any_z4 = True
        if weakly_similar(sub, S4) is None:
            all_s4 = False
    i = all_k13 and not any_z4
    ii = all_s4
    iii = embeds_in_dplus(space, check=False) is not None
    truth = {"i": i, "ii": ii, "iii": iii}
    names = ("i", "ii", "iii")
    disagreements = tuple(
        (a, b)
        for ai, a in enumerate(names)
        for b in names[ai + 1 :]
        if truth[a] != truth[b]
    )
    return K13Check(i, ii, iii, disagreements)


# ---------------------------------------------------------------------------
# campaigns
# ---------------------------------------------------------------------------

STATUS_EXHAUSTED = "EXHAUSTED_HOLDS"
STATUS_SAMPLE = "HOLDS_ON_SAMPLE"
STATUS_COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class ConjectureReport:
    conjecture: str
    mode: str
    n: int
    alphabet: tuple[Fraction, ...]
    seed: int
    requested: Optional[int]
    instances: int
    status: str
    counterexample: Optional[dict]
    interpretation: str
    wall_time_s: float

    def to_dict(self) -> dict:
        # wall time is reported on stderr by the CLI, never in this dict,
        # so identical invocations stay byte-identical on stdout
        return {
            "conjecture": self.conjecture,
            "mode": self.mode,
            "n": self.n,
            "alphabet": [format_rational(v) for v in self.alphabet],
            "seed": self.seed,
            "requested": self.requested,
            "instances": self.instances,
            "status": self.status,
            "counterexample": self.counterexample,
            "interpretation": self.interpretation,
        }


def evaluate_conjecture(which: str, space: FiniteMetricSpace) -> Optional[str]:
    """Explanation of why ``space`` violates the conjecture, or None."""
    if which == "equidistant":
        result = check_equidistant(space, check=False)
        if not result.agree:
            return (
                f"equidistant={result.all_equal} but "
                f"all-quads-K1111={result.all_quads_k1111}"
            )
        return None
    if which == "k112":
        result = check_k112_conjecture(space, check=False)
        if result.biconditional_violations:
            quad = result.biconditional_violations[0]
            return f"quad {list(quad)} breaks the K112 <-> W4-similarity biconditional"
        if (
            result.whole_space_w4_similar is not None
            and result.whole_space_w4_similar != result.every_quad_w4_similar
        ):
            return "whole-space W4 similarity disagrees with the per-quad statement"
        return None
    if which == "k13":
        result = check_k13_conjecture(space, check=False)
        if result.disagreements:
            vec = result.truth_vector
            return (
                f"statements disagree: i={vec[0]}, ii={vec[1]}, iii={vec[2]} "
                f"(pairs {list(result.disagreements)})"
            )
        return None
    raise ValueError(f"unknown conjecture id {which!r}; expected one of {CONJECTURE_IDS}")


def _sample_trial(spec: GeneratorSpec, which: str, index: int) -> Optional[str]:
    return evaluate_conjecture(which, sample_dendrogram(spec, index))


def _reverify_counterexample(which: str, space_dict: dict) -> Optional[str]:
    # independent path: serialize to text, reload through the file-format
    # constructor, re-run the check from scratch
    reloaded = FiniteMetricSpace.from_dict(json.loads(json.dumps(space_dict)))
    return evaluate_conjecture(which, reloaded)


def run_campaign(spec: GeneratorSpec, which: str, jobs: int = 1) -> ConjectureReport:
    """Stream generated spaces through one conjecture check.

    Stops at the first counterexample (by enumeration order) or at
    exhaustion/budget.  A counterexample must re-verify from its serialized
    form or the run aborts.  ``jobs`` > 1 parallelizes sampled campaigns over
    index ranges; the merged result is identical to the sequential one.
    """
    if which not in CONJECTURE_IDS:
        raise ValueError(f"unknown conjecture id {which!r}; expected one of {CONJECTURE_IDS}")
    if spec.n < 4:
        raise ValueError("conjecture campaigns need n >= 4")
    start = time.perf_counter()
    instances = 0
    bad_space: Optional[FiniteMetricSpace] = None
    explanation: Optional[str] = None

    if spec.mode == "sample" and jobs > 1 and spec.count > 0:
        trial = partial(_sample_trial, spec, which)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(trial, range(spec.count), chunksize=64))
        instances = spec.count
        for index, outcome in enumerate(outcomes):
            if outcome is not None:
                instances = index + 1
                bad_space = sample_dendrogram(spec, index)
                explanation = outcome
                break
    else:
        for space in generate(spec):
            instances += 1
            explanation = evaluate_conjecture(which, space)
            if explanation is not None:
                bad_space = space
                break

    counterexample = None
    if bad_space is not None:
        space_dict = bad_space.to_dict()
        recheck = _reverify_counterexample(which, space_dict)
        if recheck is None:
            raise InternalCheckError(
                "counterexample failed to re-verify from its serialized form"
            )
        counterexample = {"space": space_dict, "explanation": explanation}
        status = STATUS_COUNTEREXAMPLE
    elif spec.mode == "exhaustive":
        status = STATUS_EXHAUSTED
    else:
        status = STATUS_SAMPLE

    return ConjectureReport(
        conjecture=which,
        mode=spec.mode,
        n=spec.n,
        alphabet=spec.alphabet,
        seed=spec.seed,
        requested=spec.count if spec.mode == "sample" else None,
        instances=instances,
        status=status,
        counterexample=counterexample,
        interpretation=INTERPRETATION_NOTE,
        wall_time_s=time.perf_counter() - start,
    )
