import random

import pytest
from helpers import make_ranked, monte_carlo_metrics

from motifrank.errors import MetricError
from motifrank.metrics import average_precision, coverage, precision_at_k


class TestAveragePrecision:
    def test_distinct_scores_textbook_value(self):
        # positives at ranks 1 and 3 of four
        ranked = make_ranked([4.0, 3.0, 2.0, 1.0], [True, False, True, False])
        assert average_precision(ranked) == pytest.approx((1.0 + 2 / 3) / 2)

    def test_perfect_ranking(self):
        ranked = make_ranked([3.0, 2.0, 1.0], [True, True, False])
        assert average_precision(ranked) == 1.0

    def test_all_tied_approaches_prevalence(self):
        ranked = make_ranked([1.0] * 10, [True] * 3 + [False] * 7)
        # expected AP for one positive among many ties tends toward p/n
        mc_ap, _, _ = monte_carlo_metrics([1.0] * 10, [True] * 3 + [False] * 7, 100000, 3)
        assert average_precision(ranked) == pytest.approx(mc_ap, abs=0.01)

    def test_requires_positive(self):
        with pytest.raises(MetricError, match="positive"):
            average_precision(make_ranked([2.0, 1.0], [False, False]))

    def test_requires_labels(self):
        from motifrank.closure import ScoredPair
        from motifrank.graph import NodePair

        with pytest.raises(MetricError, match="label"):
            average_precision([ScoredPair(NodePair(0, 1), 1.0)])

    def test_rejects_empty(self):
        with pytest.raises(MetricError, match="empty"):
            average_precision([])

    def test_rejects_nan_scores(self):
        with pytest.raises(MetricError, match="finite"):
            average_precision(make_ranked([float("nan"), 1.0], [True, False]))


class TestPrecisionAtK:
    def test_simple_prefix(self):
        ranked = make_ranked([4.0, 3.0, 2.0, 1.0], [True, False, True, False])
        assert precision_at_k(ranked, 1) == 1.0
        assert precision_at_k(ranked, 2) == 0.5
        assert precision_at_k(ranked, 4) == 0.5

    def test_tie_straddling_k_averages(self):
        # one positive hidden in a four-way tie, cutoff after two slots
        ranked = make_ranked([1.0] * 4, [True, False, False, False])
        assert precision_at_k(ranked, 2) == pytest.approx(0.25)

    def test_k_bounds_enforced(self):
        ranked = make_ranked([2.0, 1.0], [True, False])
        with pytest.raises(MetricError, match="k"):
            precision_at_k(ranked, 0)
        with pytest.raises(MetricError, match="k"):
            precision_at_k(ranked, 3)


class TestCoverage:
    def test_last_positive_fraction(self):
        ranked = make_ranked([4.0, 3.0, 2.0, 1.0], [True, False, True, False])
        assert coverage(ranked) == pytest.approx(0.75)

    def test_tied_tail_uses_expected_rank(self):
        ranked = make_ranked([2.0, 1.0, 1.0, 1.0], [False, True, False, False])
        # one positive uniform over three tied slots: expected max rank 1 + 2
        assert coverage(ranked) == pytest.approx(3 / 4)

    def test_front_loaded_is_small(self):
        ranked = make_ranked([2.0, 1.0, 0.5, 0.25], [True, False, False, False])
        assert coverage(ranked) == pytest.approx(0.25)


class TestAgainstMonteCarlo:
    PATTERNS = [
        # (scores, labels): adversarial tie layouts
        ([1.0] * 8, [True, True] + [False] * 6),
        ([3.0, 2.0, 2.0, 2.0, 1.0, 1.0], [False, True, False, True, False, True]),
        ([5.0, 4.0, 4.0, 3.0, 3.0, 3.0, 2.0], [True, False, True, False, False, True, False]),
    ]

    @pytest.mark.parametrize("scores,labels", PATTERNS)
    def test_analytic_matches_shuffled_expectation(self, scores, labels):
        ranked = make_ranked(scores, labels)
        mc_ap, mc_curve, mc_cov = monte_carlo_metrics(scores, labels, 100000, 17)
        assert average_precision(ranked) == pytest.approx(mc_ap, abs=0.01)
        assert coverage(ranked) == pytest.approx(mc_cov, abs=0.01)
        for k in range(1, len(scores) + 1):
            assert precision_at_k(ranked, k) == pytest.approx(mc_curve[k - 1], abs=0.01)

    def test_random_layouts(self):
        rng = random.Random(23)
        for _ in range(5):
            n = rng.randint(4, 9)
            scores = [float(rng.randint(1, 3)) for _ in range(n)]
            labels = [rng.random() < 0.4 for _ in range(n)]
            if not any(labels):
                labels[0] = True
            ranked = make_ranked(scores, labels)
            mc_ap, mc_curve, mc_cov = monte_carlo_metrics(scores, labels, 100000, 29)
            assert average_precision(ranked) == pytest.approx(mc_ap, abs=0.01)
            assert coverage(ranked) == pytest.approx(mc_cov, abs=0.01)
            for k in range(1, n + 1):
                assert precision_at_k(ranked, k) == pytest.approx(
                    mc_curve[k - 1], abs=0.01
                )
