"""Random samplers: reproducibility, validity, and light statistics."""

import math

import pytest

from degcensus import (
    BudgetError,
    DegreePair,
    DegreeSequenceError,
    DomainError,
    EmpiricalEstimate,
    ForbiddenGraph,
    SamplerConfig,
    SquareOnlyError,
    count_loopfree,
    estimate_event_probability,
    estimate_expected_orientation_count,
    iter_bipartite_samples,
    sample_bipartite,
    sample_undirected,
)


class TestSamplerConfig:
    def test_defaults(self):
        cfg = SamplerConfig(seed=7)
        assert cfg.method == "auto"
        assert cfg.samples == 1 and cfg.streams == 1

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"seed": -1},
            {"seed": 0, "method": "bogus"},
            {"seed": 0, "burn_in": -1},
            {"seed": 0, "samples": 0},
            {"seed": 0, "max_rejections": 0},
            {"seed": 0, "streams": 0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(DomainError):
            SamplerConfig(**kwargs)

    def test_auto_resolution(self):
        cfg = SamplerConfig(seed=0)
        # s_max t_max 10 <= S picks rejection; otherwise the chain
        assert cfg.resolved_method(DegreePair.regular(12, 1)) == (
            "configuration-rejection"
        )
        assert cfg.resolved_method(DegreePair.regular(4, 2)) == "swap-chain"

    def test_burn_in_heuristic(self):
        cfg = SamplerConfig(seed=0)
        assert cfg.resolved_burn_in(10) == 10 * 10 * math.ceil(math.log(10))
        assert cfg.resolved_burn_in(1) == 0
        assert SamplerConfig(seed=0, burn_in=0).resolved_burn_in(10) == 0


class TestBipartiteSampling:
    def test_reproducible_runs(self):
        dp = DegreePair((2, 2, 1), (2, 2, 1))
        for method in ("configuration-rejection", "swap-chain"):
            cfg = SamplerConfig(seed=42, method=method, samples=5)
            a = [g.sorted_edges() for g in iter_bipartite_samples(dp, cfg)]
            b = [g.sorted_edges() for g in iter_bipartite_samples(dp, cfg)]
            assert a == b
            assert len(a) == 5

    def test_samples_realise_the_margins(self):
        dp = DegreePair((2, 2, 1), (1, 2, 2))
        for method in ("configuration-rejection", "swap-chain"):
            cfg = SamplerConfig(seed=3, method=method, samples=8)
            for g in iter_bipartite_samples(dp, cfg):
                assert g.degree_pair() == dp

    def test_stream_split_is_deterministic(self):
        dp = DegreePair.regular(4, 1)
        mono = SamplerConfig(seed=11, method="swap-chain", samples=6, streams=1)
        split = SamplerConfig(seed=11, method="swap-chain", samples=6, streams=3)
        got = [g.sorted_edges() for g in iter_bipartite_samples(dp, split)]
        assert len(got) == 6
        again = [g.sorted_edges() for g in iter_bipartite_samples(dp, split)]
        assert got == again
        # stream count changes the sequence but never validity
        for edges in got:
            assert len(edges) == 4

    def test_single_sample_helper(self):
        dp = DegreePair((1, 1), (1, 1))
        g = sample_bipartite(dp, SamplerConfig(seed=5))
        assert g.degree_pair() == dp

    def test_infeasible_margins_rejected(self):
        with pytest.raises(DegreeSequenceError):
            sample_bipartite(DegreePair((3, 1), (2, 2)), SamplerConfig(seed=0))

    def test_impossible_condition_exhausts_budget(self):
        dp = DegreePair.regular(3, 1)
        for method in ("configuration-rejection", "swap-chain"):
            cfg = SamplerConfig(seed=0, method=method, max_rejections=5)
            with pytest.raises(BudgetError):
                list(iter_bipartite_samples(dp, cfg, condition=lambda g: False))

    def test_rejection_matches_exact_probability(self):
        # one-regular on 4: P(no loop) = 9/24; generous five-sigma window
        dp = DegreePair.regular(4, 1)
        cfg = SamplerConfig(
            seed=2024, method="configuration-rejection", samples=4000
        )
        hits = sum(
            g.loop_count() == 0 for g in iter_bipartite_samples(dp, cfg)
        )
        p_exact = count_loopfree(dp) / 24
        sigma = math.sqrt(p_exact * (1 - p_exact) / 4000)
        assert abs(hits / 4000 - p_exact) < 5 * sigma

    def test_swap_chain_visits_multiple_states(self):
        dp = DegreePair((2, 2, 2), (2, 2, 2))
        cfg = SamplerConfig(seed=9, method="swap-chain", samples=30)
        seen = {g.sorted_edges() for g in iter_bipartite_samples(dp, cfg)}
        assert len(seen) > 1


class TestUndirectedSampling:
    def test_degrees_and_reproducibility(self):
        cfg = SamplerConfig(seed=17, samples=6)
        graphs = sample_undirected((2, 2, 2, 2), cfg)
        assert graphs == sample_undirected((2, 2, 2, 2), cfg)
        for edges in graphs:
            deg = [0] * 4
            for u, v in edges:
                assert u < v
                deg[u] += 1
                deg[v] += 1
            assert deg == [2, 2, 2, 2]

    def test_infeasible_rejected(self):
        with pytest.raises(DegreeSequenceError):
            sample_undirected((3, 1), SamplerConfig(seed=0))


class TestEventProbability:
    def test_unknown_event(self):
        dp = DegreePair.regular(3, 1)
        with pytest.raises(DomainError):
            estimate_event_probability(dp, SamplerConfig(seed=0), "whatever")

    def test_loop_events_need_square_pairs(self):
        dp = DegreePair((2,), (1, 1))
        with pytest.raises(SquareOnlyError):
            estimate_event_probability(dp, SamplerConfig(seed=0), "loop-free")

    def test_x_events_need_x(self):
        dp = DegreePair.regular(3, 1)
        with pytest.raises(DomainError):
            estimate_event_probability(dp, SamplerConfig(seed=0), "contains-x")

    def test_avoiding_nothing_is_certain_without_sampling(self):
        dp = DegreePair.regular(3, 1)
        cfg = SamplerConfig(seed=0, samples=50)
        est = estimate_event_probability(
            dp, cfg, "avoids-x", ForbiddenGraph.empty(3, 3)
        )
        assert est.point == 1.0 and est.stderr == 0.0
        assert est.n_samples == 50

    def test_estimates_carry_the_resolved_config(self):
        dp = DegreePair.regular(4, 1)
        cfg = SamplerConfig(seed=1, method="configuration-rejection", samples=40)
        est = estimate_event_probability(dp, cfg, "loop-free")
        assert isinstance(est, EmpiricalEstimate)
        assert est.config["seed"] == 1
        assert est.config["event"] == "loop-free"
        assert est.n_samples == 40
        assert 0.0 <= est.point <= 1.0

    def test_twocycle_free_conditions_on_loop_free(self):
        # conditional given loop-freeness: exactly 6/9 at one-regular n=4
        dp = DegreePair.regular(4, 1)
        cfg = SamplerConfig(
            seed=31, method="configuration-rejection", samples=2500
        )
        est = estimate_event_probability(dp, cfg, "twocycle-free")
        sigma = math.sqrt((6 / 9) * (3 / 9) / 2500)
        assert abs(est.point - 6 / 9) < 5 * sigma

    def test_contains_complements_avoids(self):
        dp = DegreePair((2, 2, 2), (2, 2, 2))
        x = ForbiddenGraph(3, 3, [(0, 0)])
        cfg = SamplerConfig(seed=8, samples=400)
        inside = estimate_event_probability(dp, cfg, "contains-x", x)
        outside = estimate_event_probability(dp, cfg, "avoids-x", x)
        assert inside.point + outside.point == pytest.approx(1.0)


class TestOrientationCounting:
    def test_odd_degree_is_vacuous(self):
        est = estimate_expected_orientation_count(
            (3, 3), (0, 0), SamplerConfig(seed=0, samples=10)
        )
        assert est.point == 0.0 and est.stderr == 0.0
        assert est.config["vacuous"] == "odd degree"

    def test_non_integer_delta_rejected(self):
        with pytest.raises(DomainError):
            estimate_expected_orientation_count(
                (2, 2), (0.5, -0.5), SamplerConfig(seed=0)
            )

    def test_length_mismatch_rejected(self):
        with pytest.raises(DegreeSequenceError):
            estimate_expected_orientation_count((2, 2), (0,), SamplerConfig(seed=0))

    def test_four_cycle_mean_is_exact(self):
        # every realisation of (2,2,2,2) is a labeled 4-cycle with exactly
        # two balanced orientations, so the estimator has zero variance
        est = estimate_expected_orientation_count(
            (2, 2, 2, 2), (0, 0, 0, 0), SamplerConfig(seed=13, samples=25)
        )
        assert est.point == 2.0
        assert est.stderr == 0.0
