import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from perspectra.evalstats import (
    DegenerateSampleError,
    SurveyQuestion,
    SurveySample,
    bootstrap_ztest,
    classification_scores,
    mse,
    normal_cdf,
    read_survey_csv,
    rouge2_f1,
    rouge2_scores,
    survey_report,
    ztest_closed_form,
)
from perspectra.stance import StanceLabel

PAPER_PROPORTIONS = {
    SurveyQuestion.ORGANIZATION: 0.69,
    SurveyQuestion.COMPREHENSIVENESS: 0.74,
    SurveyQuestion.INFORMATIVENESS: 0.55,
    SurveyQuestion.PREFERENCE: 0.63,
}


def bernoulli_sample(question: SurveyQuestion, proportion: float,
                     n: int = 300) -> SurveySample:
    ones = round(proportion * n)
    return SurveySample(question=question, responses=tuple([1] * ones + [0] * (n - ones)))


class TestRouge2:
    def test_identical(self):
        assert rouge2_f1("masks slow the spread", "masks slow the spread") == 1.0

    def test_disjoint(self):
        assert rouge2_f1("alpha beta gamma", "delta epsilon zeta") == 0.0

    def test_hand_bigram_fixture(self):
        # bigrams: {a b, b c, c d} vs {a b, b c, c e}; overlap 2; P=R=2/3
        assert rouge2_f1("a b c d", "a b c e") == pytest.approx(2 / 3, abs=1e-9)

    def test_short_text_is_zero(self):
        assert rouge2_f1("one", "one two three") == 0.0
        assert rouge2_f1("", "") == 0.0

    def test_precision_recall_exposed(self):
        precision, recall, f1 = rouge2_scores("a b c", "a b c d e")
        assert precision == 1.0
        assert recall == pytest.approx(2 / 4)
        assert f1 == pytest.approx(2 * 1.0 * 0.5 / 1.5)

    @given(st.text(alphabet="ab cd", max_size=40), st.text(alphabet="ab cd", max_size=40))
    def test_symmetric_and_bounded(self, a, b):
        assert rouge2_f1(a, b) == rouge2_f1(b, a)
        assert 0.0 <= rouge2_f1(a, b) <= 1.0


class TestMse:
    def test_equal_inputs(self):
        assert mse([0.1, 0.9], [0.1, 0.9]) == 0.0

    def test_hand_values(self):
        assert mse([0, 1], [1, 1]) == 0.5
        assert mse([0.2], [0.4]) == pytest.approx(0.04)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            mse([1.0], [1.0, 2.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            mse([], [])

    @given(st.lists(st.floats(-10, 10), min_size=1, max_size=20))
    def test_zero_iff_equal(self, values):
        assert mse(values, list(values)) == 0.0
        shifted = [v + 1.0 for v in values]
        assert mse(values, shifted) > 0.0


class TestClassificationScores:
    def test_perfect(self):
        labels = [StanceLabel.SUPPORT, StanceLabel.REFUTE, StanceLabel.NEUTRAL]
        scores = classification_scores(labels, labels)
        assert scores == {"accuracy": 1.0, "macro_f1": 1.0}

    def test_single_class_predictions_on_balanced_gold(self):
        golds = [StanceLabel.SUPPORT, StanceLabel.REFUTE, StanceLabel.NEUTRAL]
        preds = [StanceLabel.SUPPORT] * 3
        scores = classification_scores(preds, golds)
        assert scores["accuracy"] == pytest.approx(1 / 3)
        assert scores["macro_f1"] == pytest.approx(1 / 6)

    def test_swapped_pair(self):
        preds = [StanceLabel.SUPPORT, StanceLabel.REFUTE]
        golds = [StanceLabel.REFUTE, StanceLabel.SUPPORT]
        assert classification_scores(preds, golds)["accuracy"] == 0.0

    def test_accepts_strings(self):
        assert classification_scores(["support"], ["support"])["accuracy"] == 1.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            classification_scores(["support"], ["support", "refute"])


class TestNormalCdf:
    def test_against_erfc_oracle(self):
        # Phi(x) = erfc(-x / sqrt(2)) / 2 is the independent reference
        for i in range(-600, 601):
            x = i / 100.0
            exact = 0.5 * math.erfc(-x / math.sqrt(2.0))
            assert abs(normal_cdf(x) - exact) < 1e-7

    def test_symmetry(self):
        assert normal_cdf(0.0) == pytest.approx(0.5, abs=1e-9)
        assert normal_cdf(1.7) + normal_cdf(-1.7) == pytest.approx(1.0, abs=1e-9)


class TestClosedForm:
    def test_paper_proportions(self):
        expected = {0.69: 7.116, 0.74: 9.477, 0.55: 1.741, 0.63: 4.664}
        for p_hat, z in expected.items():
            assert ztest_closed_form(p_hat, 0.5, 300) == pytest.approx(z, abs=5e-4)

    def test_null_proportion_gives_zero(self):
        assert ztest_closed_form(0.5, 0.5, 300) == 0.0

    def test_degenerate(self):
        with pytest.raises(DegenerateSampleError):
            ztest_closed_form(1.0, 0.5, 300)
        with pytest.raises(DegenerateSampleError):
            ztest_closed_form(0.0, 0.5, 300)

    def test_matches_formula(self):
        p_hat, p0, n = 0.61, 0.5, 250
        expected = (p_hat - p0) / (math.sqrt(p_hat * (1 - p_hat)) / math.sqrt(n))
        assert ztest_closed_form(p_hat, p0, n) == pytest.approx(expected, abs=1e-12)


class TestBootstrap:
    def test_same_seed_identical(self):
        sample = bernoulli_sample(SurveyQuestion.PREFERENCE, 0.63)
        first = bootstrap_ztest(sample, seed=42)
        second = bootstrap_ztest(sample, seed=42)
        assert first == second

    def test_different_seed_differs(self):
        sample = bernoulli_sample(SurveyQuestion.PREFERENCE, 0.63)
        assert bootstrap_ztest(sample, seed=1).z != bootstrap_ztest(sample, seed=2).z

    def test_all_ones_degenerate(self):
        sample = SurveySample(SurveyQuestion.PREFERENCE, tuple([1] * 50))
        with pytest.raises(DegenerateSampleError):
            bootstrap_ztest(sample)

    def test_matches_paper_bootstrap_z(self):
        # organization 7.29, comprehensiveness 9.57, informativeness 1.72,
        # preference 4.79, each within +/- 0.5
        reported = {
            SurveyQuestion.ORGANIZATION: 7.29,
            SurveyQuestion.COMPREHENSIVENESS: 9.57,
            SurveyQuestion.INFORMATIVENESS: 1.72,
            SurveyQuestion.PREFERENCE: 4.79,
        }
        for question, proportion in PAPER_PROPORTIONS.items():
            result = bootstrap_ztest(bernoulli_sample(question, proportion), seed=7)
            assert result.z == pytest.approx(reported[question], abs=0.5)

    def test_converges_to_closed_form(self):
        for question, proportion in PAPER_PROPORTIONS.items():
            closed = ztest_closed_form(proportion, 0.5, 300)
            for seed in range(20):
                result = bootstrap_ztest(bernoulli_sample(question, proportion), seed=seed)
                assert abs(result.z - closed) <= 0.3

    def test_significance_conclusions(self):
        for question, proportion in PAPER_PROPORTIONS.items():
            result = bootstrap_ztest(bernoulli_sample(question, proportion), seed=0)
            if question is SurveyQuestion.INFORMATIVENESS:
                assert result.p_value < 0.05
                assert result.p_value >= 0.01
                assert result.p_value == pytest.approx(0.043, abs=0.015)
            else:
                assert result.p_value < 0.01

    def test_p_value_decreases_in_z(self):
        zs = [ztest_closed_form(p, 0.5, 300) for p in (0.52, 0.55, 0.6, 0.7)]
        ps = [1.0 - normal_cdf(z) for z in zs]
        assert ps == sorted(ps, reverse=True)
        assert all(p1 > p2 for p1, p2 in zip(ps, ps[1:]))

    def test_result_metadata(self):
        sample = bernoulli_sample(SurveyQuestion.ORGANIZATION, 0.69)
        result = bootstrap_ztest(sample, sample_size=200, repeats=500, seed=11)
        assert result.n == 200
        assert result.repeats == 500
        assert result.seed == 11
        assert result.algorithm == "numpy-pcg64"

    def test_validation(self):
        sample = bernoulli_sample(SurveyQuestion.ORGANIZATION, 0.69)
        with pytest.raises(ValueError):
            bootstrap_ztest(sample, sample_size=0)
        with pytest.raises(ValueError):
            bootstrap_ztest(sample, repeats=0)
        with pytest.raises(ValueError):
            bootstrap_ztest(SurveySample(SurveyQuestion.ORGANIZATION, ()))


class TestSurveyIO:
    def write_csv(self, tmp_path, rows, header="question,response"):
        path = tmp_path / "survey.csv"
        path.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")
        return path

    def test_roundtrip(self, tmp_path):
        rows = ["organization,1", "organization,0", "preference,1"]
        samples = read_survey_csv(self.write_csv(tmp_path, rows))
        by_question = {s.question: s.responses for s in samples}
        assert by_question[SurveyQuestion.ORGANIZATION] == (1, 0)
        assert by_question[SurveyQuestion.PREFERENCE] == (1,)

    def test_unknown_question_rejected(self, tmp_path):
        path = self.write_csv(tmp_path, ["speed,1"])
        with pytest.raises(ValueError, match="speed"):
            read_survey_csv(path)

    def test_bad_response_rejected(self, tmp_path):
        path = self.write_csv(tmp_path, ["organization,2"])
        with pytest.raises(ValueError, match="0 or 1"):
            read_survey_csv(path)

    def test_bad_header_rejected(self, tmp_path):
        path = self.write_csv(tmp_path, ["organization,1"], header="q,r")
        with pytest.raises(ValueError, match="header"):
            read_survey_csv(path)

    def test_report_shape(self, tmp_path):
        rows = [f"organization,{i % 2}" for i in range(40)]
        samples = read_survey_csv(self.write_csv(tmp_path, rows))
        report = survey_report(samples, repeats=50, seed=3)
        entry = report["organization"]
        assert set(entry) == {"z", "p_value", "mean", "std", "n", "repeats",
                              "seed", "algorithm"}
        assert entry["repeats"] == 50
