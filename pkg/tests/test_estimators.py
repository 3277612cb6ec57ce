"""Closed-form estimates: exactness anchors, frozen regressions, invariants."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degcensus import (
    DegreePair,
    DegreeSequenceError,
    DomainError,
    ForbiddenGraph,
    LogEstimate,
    ParityError,
    SquareOnlyError,
    SummationInput,
    avoidance_factor,
    count_loopfree,
    enumerate_bipartite,
    estimate_bipartite,
    estimate_bipartite_avoiding,
    estimate_loopfree_avoiding,
    estimate_loopfree_digraphs,
    estimate_oriented,
    estimate_undirected,
    exact_expected_permanent,
    expected_orientations,
    expected_permanent_dense,
    expected_permanent_regular,
    expected_permanent_sparse,
    graph_to_matrix,
    loopfree_probability,
    pauling_and_residual_entropy,
    permanent_complement_ie,
    permutation_functional_stats,
    permutation_moment_oracle,
    q_correction,
    ryser_permanent,
    subgraph_probability,
    summation_bounds,
    twocycle_free_probability,
)

from conftest import degree_pairs


def log_of(fraction) -> float:
    return math.log(fraction.numerator) - math.log(fraction.denominator)


class TestLogEstimate:
    def test_assembly_invariant(self):
        est = LogEstimate.assemble("bipartite-count", 1.5, -0.25, 0.1)
        assert est.log_value == est.log_prefactor + est.correction
        assert est.value == pytest.approx(math.exp(1.25))

    def test_negative_error_rejected(self):
        with pytest.raises(DomainError):
            LogEstimate.assemble("bipartite-count", 0.0, 0.0, -0.1)

    def test_json_shape(self):
        est = LogEstimate.assemble("oriented-count", 1.0, 0.0, 0.0, notes=("x",))
        payload = est.to_json()
        assert payload["context"] == "oriented-count"
        assert payload["log_value"] == 1.0
        assert payload["notes"] == ["x"]


class TestQCorrection:
    def test_single_vertex_two_regular(self):
        # six terms, all powers of two: exact in floats
        assert q_correction(DegreePair((2,), (2,))) == -0.75

    def test_one_regular_vanishes(self):
        # every falling factorial (1)_2 is zero
        assert q_correction(DegreePair.regular(6, 1)) == 0.0

    def test_zero_sum_rejected(self):
        with pytest.raises(DomainError):
            q_correction(DegreePair((0, 0), (0, 0)))

    @given(degree_pairs(max_side=5))
    def test_side_swap_symmetry(self, dp):
        if dp.total == 0:
            return
        swapped = DegreePair(dp.t, dp.s)
        assert q_correction(dp) == q_correction(swapped)

    @given(degree_pairs(max_side=5), st.randoms(use_true_random=False))
    def test_relabel_invariance(self, dp, rnd):
        if dp.total == 0:
            return
        s = list(dp.s)
        t = list(dp.t)
        rnd.shuffle(s)
        rnd.shuffle(t)
        assert q_correction(DegreePair(s, t)) == q_correction(dp)


class TestBipartiteEstimate:
    def test_two_matchings(self):
        est = estimate_bipartite(DegreePair((1, 1), (1, 1)))
        assert est.correction == 0.0
        assert est.log_value == pytest.approx(math.log(2), rel=1e-12)

    def test_against_exact_counts(self):
        for s, t in (((2, 2, 2), (2, 2, 2)), ((3, 2, 1), (2, 2, 2))):
            dp = DegreePair(s, t)
            exact = sum(1 for _ in enumerate_bipartite(dp))
            est = estimate_bipartite(dp)
            # desk-scale margins are far outside the asymptotic regime, so
            # only demand the log error stays below the evaluated bound
            assert abs(math.log(exact) - est.log_value) <= est.error_magnitude


class TestAvoidanceFactor:
    def test_empty_set_is_exactly_one(self):
        dp = DegreePair((2, 2, 2), (2, 2, 2))
        est = avoidance_factor(dp, ForbiddenGraph.empty(3, 3))
        assert est.log_value == 0.0
        assert est.value == 1.0
        assert est.error_magnitude == 0.0

    def test_massless_set_is_exactly_one(self):
        # forbidden cell sits on a zero-degree row, so F = 0
        dp = DegreePair((2, 0), (1, 1))
        est = avoidance_factor(dp, ForbiddenGraph(2, 2, [(1, 0)]))
        assert est.value == 1.0

    def test_single_cell_on_matchings(self):
        dp = DegreePair((1, 1), (1, 1))
        est = avoidance_factor(dp, ForbiddenGraph(2, 2, [(0, 0)]))
        # -F/S - 3 F^2 / (2 S^3) with F = 1, S = 2, all dyadic
        assert est.correction == -0.6875
        assert est.value == pytest.approx(0.5028315779709409, rel=1e-12)

    def test_composition_with_base_estimate(self):
        dp = DegreePair((1, 1), (1, 1))
        x = ForbiddenGraph(2, 2, [(0, 0)])
        combined = estimate_bipartite_avoiding(dp, x)
        parts = estimate_bipartite(dp).log_value + avoidance_factor(dp, x).log_value
        assert combined.log_value == pytest.approx(parts, rel=1e-12)

    def test_diagonal_factor_formula(self):
        # F = S = n makes the exponent -1 - 3/(2n)
        for n in (4, 7):
            dp = DegreePair.regular(n, 1)
            est = avoidance_factor(dp, ForbiddenGraph.diagonal(n))
            assert est.log_value == pytest.approx(-1 - 3 / (2 * n), rel=1e-15)


class TestSubgraphProbability:
    def test_empty_pin_is_certain(self):
        dp = DegreePair((2, 2, 2), (2, 2, 2))
        est = subgraph_probability(dp, ForbiddenGraph.empty(3, 3))
        assert est.value == 1.0

    def test_pinned_cell_regression(self):
        dp = DegreePair((2, 2, 2), (2, 2, 2))
        est = subgraph_probability(dp, ForbiddenGraph(3, 3, [(0, 0)]))
        assert est.log_value == pytest.approx(-0.4283717747748315, rel=1e-12)
        # exact probability is 4/6: four of the six realisations use (0,0)
        assert abs(est.log_value - math.log(2 / 3)) <= est.error_magnitude

    def test_infeasible_pin_rejected(self):
        from degcensus import InfeasibleForbiddenError

        dp = DegreePair.regular(2, 1)
        with pytest.raises(InfeasibleForbiddenError):
            subgraph_probability(dp, ForbiddenGraph(2, 2, [(0, 0), (0, 1)]))


class TestLoopStatistics:
    def test_zero_loop_weight_is_certain(self):
        dp = DegreePair((1, 0), (0, 1))
        est = loopfree_probability(dp)
        assert est.value == 1.0 and est.error_magnitude == 0.0

    def test_one_regular_probability(self):
        est = loopfree_probability(DegreePair.regular(4, 1))
        assert est.correction == -1.0
        assert est.error_magnitude == 0.25

    def test_square_only(self):
        with pytest.raises(SquareOnlyError):
            loopfree_probability(DegreePair((2,), (1, 1)))

    def test_loopfree_count_tracks_derangements(self):
        for n in (4, 5, 6):
            dp = DegreePair.regular(n, 1)
            est = estimate_loopfree_digraphs(dp)
            exact = count_loopfree(dp)
            assert abs(math.log(exact) - est.log_value) <= 5 / n

    def test_loopfree_avoiding_regression(self):
        dp = DegreePair.regular(4, 1)
        est = estimate_loopfree_avoiding(dp, ForbiddenGraph(4, 4, [(0, 1)]))
        assert est.value == pytest.approx(6.716830089341665, rel=1e-12)
        # exact count: derangements of 4 that also avoid position (0, 1)
        assert abs(est.log_value - math.log(6)) <= est.error_magnitude

    def test_loopfree_avoiding_rejects_diagonal_cells(self):
        dp = DegreePair.regular(4, 1)
        with pytest.raises(DomainError):
            estimate_loopfree_avoiding(dp, ForbiddenGraph(4, 4, [(2, 2)]))

    def test_twocycle_free_probability(self):
        est = twocycle_free_probability(DegreePair.regular(4, 1))
        assert est.correction == -0.5  # -W^2 / (2 S^2), dyadic
        # exact: 6 oriented of the 9 loop-free one-regular digraphs
        assert abs(est.log_value - math.log(6 / 9)) <= est.error_magnitude

    def test_oriented_estimate(self):
        dp = DegreePair.regular(4, 1)
        est = estimate_oriented(dp)
        assert est.correction == -1.5  # Q = 0, then -W/S - W^2/(2 S^2)
        assert est.log_value == pytest.approx(1.6780538303479449, rel=1e-12)
        assert abs(est.log_value - math.log(6)) <= est.error_magnitude


class TestUndirectedEstimate:
    def test_odd_sum_rejected(self):
        with pytest.raises(ParityError):
            estimate_undirected((1, 1, 1))

    def test_perfect_matching_counts_are_exact(self):
        # no second-order correction when all degrees are 1, so the pairing
        # count (D - 1)!! comes out exactly
        e4 = estimate_undirected((1, 1, 1, 1))
        assert e4.exact_prefactor == Fraction(3)
        assert e4.correction == 0.0
        assert e4.log_value == math.log(3)
        e6 = estimate_undirected((1,) * 6)
        assert e6.exact_prefactor == Fraction(15)
        assert e6.log_value == math.log(15)

    def test_two_regular_prefactor(self):
        est = estimate_undirected((2, 2, 2, 2))
        assert est.exact_prefactor == Fraction(105, 16)
        assert est.correction == -0.75
        assert est.log_value == pytest.approx(1.131371627917742, rel=1e-12)

    def test_json_carries_prefactor(self):
        est = estimate_undirected((2, 2, 2, 2))
        assert est.to_json()["exact_prefactor"] == "105/16"


class TestExpectedOrientations:
    def test_eulerian_case_regression(self):
        est = expected_orientations((2, 2, 2, 2), (0, 0, 0, 0))
        assert est.log_prefactor == pytest.approx(1.2966822024302025, rel=1e-12)
        assert est.correction == -0.75
        assert est.notes == ()

    def test_validation(self):
        with pytest.raises(DegreeSequenceError):
            expected_orientations((2, 2), (0,))
        with pytest.raises(ParityError):
            expected_orientations((2, 2), (0.5, -0.5))
        with pytest.raises(ParityError):
            expected_orientations((3, 3), (0, 0))
        with pytest.raises(DomainError):
            expected_orientations((2, 2), (1, 0))
        with pytest.raises(DomainError):
            expected_orientations((2, 2), (2, -2))

    def test_infeasible_degrees_flagged_vacuous(self):
        est = expected_orientations((4, 2, 2), (0, 0, 0))
        assert any("vacuous" in note for note in est.notes)

    def test_imbalance_raises_the_exponent(self):
        base = expected_orientations((4, 4, 4, 4), (0, 0, 0, 0))
        tilted = expected_orientations((4, 4, 4, 4), (1, -1, 0, 0))
        # fewer orientations hit an unbalanced target
        assert tilted.log_value < base.log_value


class TestResidualEntropy:
    def test_two_regular_is_exactly_zero(self):
        plain, sharpened = pauling_and_residual_entropy((2, 2, 2, 2))
        assert plain == 0.0
        assert sharpened == pytest.approx(
            math.log(math.pi * 8 / 2) / 8 - 3 / 16, rel=1e-12
        )

    def test_four_regular_value(self):
        plain, _ = pauling_and_residual_entropy((4,) * 6)
        assert plain == pytest.approx(math.log(1.5), rel=1e-12)

    def test_validation(self):
        with pytest.raises(ParityError):
            pauling_and_residual_entropy((3, 3))
        with pytest.raises(DomainError):
            pauling_and_residual_entropy((2, 0, 2))

    def test_sharpened_tracks_eulerian_counts(self):
        # 4-regular on 6 vertices: entropy should sit near log(EO)/n for the
        # octahedron-like realisations; sanity only, generous window
        plain, sharpened = pauling_and_residual_entropy((4,) * 6)
        assert 0.3 < plain < 0.5
        assert sharpened > plain


class TestExpectedPermanentEstimates:
    def test_sparse_regression_and_accuracy(self):
        dp = DegreePair((2, 2, 2), (2, 2, 2))
        est = expected_permanent_sparse(dp)
        assert est.log_value == pytest.approx(0.7464841431390136, rel=1e-12)
        exact = exact_expected_permanent(dp)
        assert abs(log_of(exact) - est.log_value) <= est.error_magnitude

    def test_sparse_validation(self):
        with pytest.raises(SquareOnlyError):
            expected_permanent_sparse(DegreePair((2,), (1, 1)))
        with pytest.raises(DomainError):
            expected_permanent_sparse(DegreePair((2, 0), (1, 1)))

    def test_dense_no_holes_is_factorial(self):
        est = expected_permanent_dense(DegreePair((0, 0, 0), (0, 0, 0)))
        assert est.log_value == pytest.approx(math.log(6), rel=1e-12)
        assert est.error_magnitude == 0.0

    def test_dense_against_complement_oracle(self):
        # hole margins (2,2,2): complements have margins (1,1,1), mean 1
        dp = DegreePair((2, 2, 2), (2, 2, 2))
        est = expected_permanent_dense(dp)
        exact = exact_expected_permanent(DegreePair.regular(3, 1))
        assert exact == 1
        assert abs(est.log_value - 0.0) <= est.error_magnitude

    def test_dense_validation(self):
        with pytest.raises(DomainError):
            expected_permanent_dense(DegreePair((4, 0), (2, 2)))


class TestPermanentComplement:
    def test_hollow_matrix(self):
        from degcensus import BipartiteGraph

        holes = BipartiteGraph(4, 4, [(i, i) for i in range(4)])
        exact, window = permanent_complement_ie(DegreePair.regular(4, 1), holes)
        assert exact == 9
        assert window[0] <= exact <= window[1]

    def test_matches_ryser_on_complement(self):
        from degcensus import BipartiteGraph

        edges = [(0, 0), (0, 1), (1, 2), (2, 1), (3, 3)]
        holes = BipartiteGraph(4, 4, edges)
        exact, _ = permanent_complement_ie(holes.degree_pair(), holes)
        matrix = [
            [0 if (i, j) in holes.edges else 1 for j in range(4)]
            for i in range(4)
        ]
        assert exact == ryser_permanent(matrix)

    def test_margin_mismatch_rejected(self):
        from degcensus import BipartiteGraph

        holes = BipartiteGraph(3, 3, [(0, 0)])
        with pytest.raises(DegreeSequenceError):
            permanent_complement_ie(DegreePair.regular(3, 1), holes)


class TestRegularPermanent:
    def test_full_density_is_exact(self):
        for n in (3, 5, 8):
            est = expected_permanent_regular(n, n)
            assert est.exact == math.factorial(n)
            assert est.density_range == "exact"

    def test_out_of_range_rejected(self):
        with pytest.raises(DomainError):
            expected_permanent_regular(4, 1)
        with pytest.raises(DomainError):
            expected_permanent_regular(4, 5)

    def test_forms_present(self):
        est = expected_permanent_regular(50, 4)
        names = dict(est.forms)
        for key in ("headline", "stirling", "lw", "gm-lambda", "sparse", "dense"):
            assert key in names
        with pytest.raises(DomainError):
            est.form("nonexistent")

    def test_headline_equals_log_value(self):
        est = expected_permanent_regular(30, 3)
        assert est.form("headline") == est.log_value

    def test_stirling_cross_check(self):
        for n, d in ((100, 5), (200, 3)):
            est = expected_permanent_regular(n, d)
            rel = abs(est.form("stirling") - est.log_value) / abs(est.log_value)
            assert rel < 1e-2

    def test_density_labels(self):
        assert expected_permanent_regular(200, 3).density_range == "sparse"
        assert expected_permanent_regular(6, 2).density_range == "low"
        assert expected_permanent_regular(100, 97).density_range == "dense"


class TestSummationSandwich:
    def test_single_step_allowed(self):
        inp = SummationInput(gain=(0.2,), drag=(0.1,), cap=0.3)
        out = summation_bounds(inp)
        assert out.terms == (1.0, 0.2)
        assert out.lower <= out.total <= out.upper

    def test_validation(self):
        with pytest.raises(DomainError):
            SummationInput(gain=(), drag=(), cap=0.1)
        with pytest.raises(DomainError):
            SummationInput(gain=(0.1, 0.1), drag=(0.0,), cap=0.2)
        with pytest.raises(DomainError):
            SummationInput(gain=(0.1,), drag=(0.0,), cap=0.5)
        with pytest.raises(DomainError):
            SummationInput(gain=(-0.1,), drag=(0.0,), cap=0.2)
        with pytest.raises(DomainError):
            # cap fails to dominate max(gain)/size
            SummationInput(gain=(0.9, 0.9), drag=(0.0, 0.0), cap=0.2)

    def test_terms_follow_recurrence(self):
        inp = SummationInput(gain=(0.3, 0.3, 0.3), drag=(0.05, 0.0, -0.05), cap=0.2)
        out = summation_bounds(inp)
        assert out.terms[0] == 1.0
        for i in range(1, 4):
            expected = (inp.gain[i - 1] - (i - 1) * inp.drag[i - 1]) / i
            assert out.terms[i] == pytest.approx(expected * out.terms[i - 1])

    @given(
        st.integers(1, 30),
        st.floats(0.0, 0.3),
        st.floats(-0.05, 0.05),
        st.data(),
    )
    @settings(max_examples=100, deadline=None)
    def test_sandwich_holds(self, size, gain_level, drag_level, data):
        gain = tuple(
            data.draw(st.floats(0.0, max(gain_level, 1e-6))) for _ in range(size)
        )
        drag = tuple(
            data.draw(st.floats(-abs(drag_level), abs(drag_level)))
            for _ in range(size)
        )
        needed = max(max(gain) / size, max(abs(c) for c in drag))
        cap = min(needed + 0.01, 1 / 3 - 1e-9)
        if cap <= needed:
            return
        try:
            inp = SummationInput(gain=gain, drag=drag, cap=cap)
        except DomainError:
            return  # a negative step ratio; outside the contract
        out = summation_bounds(inp)
        assert out.lower <= out.total <= out.upper


class TestPermutationFunctional:
    def test_matches_oracle_exactly(self):
        cases = [
            ((1, 0, 0), (1, 0, 0)),
            ((1, 2, 3, 4), (0, 1, 0, 1)),
            ((2, -1, 0, 1, 3), (1, 1, 0, -1, 2)),
        ]
        for u, v in cases:
            got = permutation_functional_stats(u, v)
            mean, var, expm = permutation_moment_oracle(u, v)
            assert got.mean == pytest.approx(mean, rel=1e-12, abs=1e-12)
            assert got.variance == pytest.approx(var, rel=1e-12, abs=1e-12)
            lo, hi = got.exp_moment_window
            assert lo <= expm <= hi

    def test_constant_profile(self):
        got = permutation_functional_stats((5, 5, 5), (2, 2, 2))
        assert got.mean == pytest.approx(30.0)
        assert got.variance == 0.0

    def test_validation(self):
        with pytest.raises(DomainError):
            permutation_functional_stats((1,), (1,))
        with pytest.raises(DomainError):
            permutation_functional_stats((1, 2), (1, 2, 3))
