"""Membership criteria, shift transforms, and the max-metric model."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from starmetric import (
    E4,
    FiniteMetricSpace,
    FourPointClass,
    GeneratorSpec,
    NotUltrametricError,
    S4,
    Verdict,
    W4,
    X4,
    Z4,
    adjoin_near,
    are_isometric,
    classify_four_point,
    diagnose,
    dplus_space,
    embeds_in_dplus,
    enumerate_ultrametrics,
    find_center,
    forbidden_scan,
    min_pair,
    min_positive_distance,
    restrict,
    shift,
    spectrum,
    star_metric,
    unshift,
    validate,
)
from helpers import embeds_oracle, random_star, sample_space


class TestFindCenter:
    def test_s4_center_is_s1(self):
        assert find_center(S4).center == "s1"

    def test_x4_has_no_center(self):
        assert find_center(X4) is None

    def test_equidistant_first_point_wins(self):
        assert find_center(E4).center == "p1"

    def test_w4_center_is_w1(self):
        assert find_center(W4).center == "w1"

    def test_non_ultrametric_rejected(self):
        bad = FiniteMetricSpace(("a", "b", "c"), [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
        with pytest.raises(NotUltrametricError):
            find_center(bad)


class TestForbiddenScan:
    def test_x4_reports_itself(self):
        witness = forbidden_scan(X4)
        assert witness.quad == ("x1", "x2", "x3", "x4")
        assert witness.signature == (2, 2)
        assert witness.model == "X4"

    def test_forbidden_quad_survives_adjunction(self):
        grown = adjoin_near(X4, "x1", Fraction(1, 2))
        witness = forbidden_scan(grown)
        assert witness is not None
        assert witness.quad == ("x1", "x2", "x3", "x4")

    def test_s4_is_clean(self):
        assert forbidden_scan(S4) is None

    def test_small_spaces_trivially_clean(self):
        assert forbidden_scan(FiniteMetricSpace(("p",), [[0]])) is None
        assert forbidden_scan(restrict(X4, ["x1", "x2", "x3"])) is None

    def test_scan_agrees_with_the_signature_route_exhaustively(self):
        # the scan's inline 4-cycle test must match the full multipartite
        # decomposition in both directions
        from starmetric import diametrical_graph, multipartite_signature

        spec = GeneratorSpec(n=4, alphabet=("1", "2", "3"))
        for space in enumerate_ultrametrics(spec):
            sizes = multipartite_signature(diametrical_graph(space)).sizes
            assert (forbidden_scan(space, check=False) is not None) == (sizes == (2, 2))


class TestDiagnose:
    def test_s4_is_a_star_space(self):
        report = diagnose(S4)
        assert report.verdict is Verdict.US and report.center.center == "s1"

    def test_x4_is_forbidden(self):
        report = diagnose(X4)
        assert report.verdict is Verdict.FORBIDDEN
        assert report.forbidden.quad == ("x1", "x2", "x3", "x4")
        assert report.forbidden.model == "X4"

    def test_w4_is_a_star_space(self):
        report = diagnose(W4)
        assert report.verdict is Verdict.US and report.center.center == "w1"

    def test_singleton(self):
        report = diagnose(FiniteMetricSpace(("p",), [[0]]))
        assert report.verdict is Verdict.US and report.center.center == "p"

    def test_criteria_agree_on_samples(self):
        for seed in range(100):
            space = sample_space(n=(seed % 4) + 4, seed=1000 + seed)
            report = diagnose(space)  # raises InternalCheckError on disagreement
            assert report.verdict in (Verdict.US, Verdict.FORBIDDEN)


class TestShift:
    def test_s4_shift_values_and_class(self):
        shifted = shift(S4, "1/2")
        assert spectrum(shifted).d0 == (Fraction(1, 2), Fraction(3, 2), Fraction(5, 2))
        assert classify_four_point(shifted) is FourPointClass.K13
        assert validate(shifted).is_ultrametric

    def test_zero_shift_is_identity(self):
        assert shift(S4, 0) == S4

    def test_delta_must_stay_below_min_distance(self):
        with pytest.raises(ValueError):
            shift(S4, 1)
        with pytest.raises(ValueError):
            shift(S4, "-1/2")

    def test_unshift_round_trip_is_exact(self):
        for seed in range(40):
            space = sample_space(n=5, seed=2000 + seed)
            delta = min_positive_distance(space) * Fraction(seed % 3, 4)
            assert unshift(shift(space, delta), delta) == space

    def test_unshift_equidistant(self):
        grown = unshift(E4, 1)
        assert spectrum(grown).d0 == (Fraction(2),)
        assert validate(grown).is_ultrametric

    def test_unshift_keeps_x4_forbidden(self):
        stretched = unshift(X4, "1/2")
        assert spectrum(stretched).d0 == (Fraction(3, 2), Fraction(5, 2), Fraction(7, 2))
        assert diagnose(stretched).verdict is Verdict.FORBIDDEN

    def test_every_quad_classification_is_shift_invariant(self):
        for seed in range(25):
            space = sample_space(n=6, seed=3000 + seed)
            delta = min_positive_distance(space) * Fraction(1, 2)
            shifted = shift(space, delta)
            for quad in combinations(space.points, 4):
                assert classify_four_point(restrict(space, list(quad))) is (
                    classify_four_point(restrict(shifted, list(quad)))
                )


class TestDplusSpace:
    def test_isometric_to_s4(self):
        space = dplus_space(["1/2", "1", "2", "3"])
        assert space.points == ("1/2", "1", "2", "3")
        witness = are_isometric(S4, space)
        assert witness == {"s1": "1/2", "s2": "3", "s3": "1", "s4": "2"}

    def test_singleton(self):
        assert dplus_space([1]).points == ("1",)

    def test_four_values_classify_k13(self):
        assert classify_four_point(dplus_space([1, 2, 3, 4])) is FourPointClass.K13

    def test_always_a_star_space(self):
        space = dplus_space(["1/3", "2", "7/2", "9", "10"])
        report = diagnose(space)
        assert report.verdict is Verdict.US and report.center.center == "1/3"

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            dplus_space([1, 1, 2])
        with pytest.raises(ValueError):
            dplus_space([0, 1])
        with pytest.raises(ValueError):
            dplus_space([])


class TestEmbedsInDplus:
    def test_s4_witness(self):
        weights = embeds_in_dplus(S4)
        assert weights == {
            "s1": Fraction(1, 2),
            "s2": Fraction(3),
            "s3": Fraction(1),
            "s4": Fraction(2),
        }

    def test_z4_does_not_embed(self):
        assert embeds_in_dplus(Z4) is None

    def test_singleton(self):
        assert embeds_in_dplus(FiniteMetricSpace(("p",), [[0]])) == {"p": Fraction(1)}

    def test_witness_always_satisfies_the_max_equation(self):
        found = 0
        for seed in range(80):
            space = sample_space(n=(seed % 4) + 2, seed=4000 + seed)
            weights = embeds_in_dplus(space)
            if weights is None:
                continue
            found += 1
            assert len(set(weights.values())) == space.n
            for a, b in combinations(space.points, 2):
                assert space.d(a, b) == max(weights[a], weights[b])
        assert found > 0

    def test_agrees_with_ordering_oracle_exhaustively_at_n4(self):
        spec = GeneratorSpec(n=4, alphabet=("1", "2", "3"))
        positives = negatives = 0
        for space in enumerate_ultrametrics(spec):
            expected = embeds_oracle(space)
            assert (embeds_in_dplus(space) is not None) == expected
            positives += expected
            negatives += not expected
        assert positives > 0 and negatives > 0

    def test_dplus_spaces_always_embed(self):
        rng = random.Random(9)
        for _ in range(30):
            values = sorted(rng.sample(range(1, 40), rng.randint(1, 6)))
            space = dplus_space(values)
            assert embeds_in_dplus(space) is not None


class TestStructuralProperties:
    def test_star_metrics_are_always_star_spaces(self):
        rng = random.Random(31)
        for _ in range(60):
            space = star_metric(random_star(rng, max_leaves=8))
            assert diagnose(space).verdict is Verdict.US

    def test_subspace_heredity_of_the_verdict(self):
        rng = random.Random(37)
        for _ in range(25):
            space = star_metric(random_star(rng, max_leaves=6))
            for quad in combinations(space.points, 4):
                assert diagnose(restrict(space, list(quad))).verdict is Verdict.US

    def test_adjunction_at_a_center_preserves_clean_scans(self):
        rng = random.Random(41)
        for _ in range(25):
            space = star_metric(random_star(rng, max_leaves=6))
            assert forbidden_scan(space) is None
            anchor = find_center(space).center
            eps = min_positive_distance(space) / rng.randint(2, 5)
            grown = adjoin_near(space, anchor, eps)
            assert forbidden_scan(grown) is None
            assert min_pair(grown)[2] == eps

    def test_adjunction_at_a_non_center_can_create_a_forbidden_quad(self):
        # anchoring next to a point with two equidistant neighbours that are
        # closer to each other builds a 4-cycle: the new pair and that
        # neighbour pair become the two chords
        grown = adjoin_near(S4, "s2", Fraction(1, 2))
        witness = forbidden_scan(grown)
        assert witness is not None
        assert set(witness.quad) == {"s1", "s2", "s3", "c"}
        assert witness.model == "X4"

    def test_deleting_either_member_of_the_new_pair_is_safe_for_any_anchor(self):
        rng = random.Random(43)
        for _ in range(20):
            space = star_metric(random_star(rng, max_leaves=5))
            anchor = rng.choice(space.points)
            eps = min_positive_distance(space) / rng.randint(2, 4)
            grown = adjoin_near(space, anchor, eps, label="new")
            keep_anchor = restrict(grown, [p for p in grown.points if p != "new"])
            keep_new = restrict(grown, [p for p in grown.points if p != anchor])
            assert keep_anchor == space
            assert are_isometric(keep_anchor, keep_new) is not None
