"""Evaluation metrics and the bootstrap one-tailed z-test over binary surveys.

The z-test follows the survey-analysis recipe: resample the binary response
vector with replacement (sample_size draws, `repeats` times), average the
replicate means and population standard deviations, then apply

    z = (mean - p0) / (std / sqrt(sample_size))

against the null hypothesis P <= p0, with p_value = 1 - Phi(z).
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .index import tokenize
from .stance import StanceLabel

RNG_ALGORITHM = "numpy-pcg64"

DEFAULT_P0 = 0.5
DEFAULT_SAMPLE_SIZE = 300
DEFAULT_REPEATS = 1000


class DegenerateSampleError(ValueError):
    """Raised when a zero standard deviation makes the z statistic undefined."""


class SurveyQuestion(str, enum.Enum):
    ORGANIZATION = "organization"
    COMPREHENSIVENESS = "comprehensiveness"
    INFORMATIVENESS = "informativeness"
    PREFERENCE = "preference"


@dataclass(frozen=True)
class SurveySample:
    question: SurveyQuestion
    responses: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(r not in (0, 1) for r in self.responses):
            raise ValueError("survey responses must be 0 or 1")


@dataclass(frozen=True)
class ZTestResult:
    z: float
    p_value: float
    mean: float
    std: float
    n: int
    repeats: int
    seed: int
    algorithm: str = RNG_ALGORITHM

    def to_dict(self) -> dict:
        return {
            "z": self.z,
            "p_value": self.p_value,
            "mean": self.mean,
            "std": self.std,
            "n": self.n,
            "repeats": self.repeats,
            "seed": self.seed,
            "algorithm": self.algorithm,
        }


def rouge2_scores(candidate: str, reference: str) -> tuple[float, float, float]:
    """Bigram-overlap (precision, recall, F1) between two texts.

    Bigrams are multisets over the standard tokenizer's output; all three
    scores are 0 when either text has fewer than two tokens.
    """
    cand = _bigrams(tokenize(candidate))
    ref = _bigrams(tokenize(reference))
    if not cand or not ref:
        return 0.0, 0.0, 0.0
    overlap = 0
    for bigram, count in cand.items():
        overlap += min(count, ref.get(bigram, 0))
    precision = overlap / sum(cand.values())
    recall = overlap / sum(ref.values())
    if precision + recall == 0.0:
        return 0.0, 0.0, 0.0
    f1 = 2.0 * precision * recall / (precision + recall)
    return precision, recall, f1


def rouge2_f1(candidate: str, reference: str) -> float:
    return rouge2_scores(candidate, reference)[2]


def _bigrams(tokens: list[str]) -> dict[tuple[str, str], int]:
    counts: dict[tuple[str, str], int] = {}
    for pair in zip(tokens, tokens[1:]):
        counts[pair] = counts.get(pair, 0) + 1
    return counts


def mse(pred: list[float], gold: list[float]) -> float:
    if len(pred) != len(gold):
        raise ValueError(f"length mismatch: {len(pred)} vs {len(gold)}")
    if not pred:
        raise ValueError("inputs must be nonempty")
    return sum((p - g) ** 2 for p, g in zip(pred, gold)) / len(pred)


def classification_scores(preds: list, golds: list) -> dict[str, float]:
    """Accuracy and macro F1 over the three stance classes.

    Per-class F1 is 0 when undefined; the macro average always runs over
    all three classes. Labels may be StanceLabel values or their strings.
    """
    if len(preds) != len(golds):
        raise ValueError(f"length mismatch: {len(preds)} vs {len(golds)}")
    if not preds:
        raise ValueError("inputs must be nonempty")
    preds = [StanceLabel(p) for p in preds]
    golds = [StanceLabel(g) for g in golds]
    correct = sum(1 for p, g in zip(preds, golds) if p is g)
    f1_total = 0.0
    for label in StanceLabel:
        tp = sum(1 for p, g in zip(preds, golds) if p is label and g is label)
        fp = sum(1 for p, g in zip(preds, golds) if p is label and g is not label)
        fn = sum(1 for p, g in zip(preds, golds) if p is not label and g is label)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1_total += 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return {
        "accuracy": correct / len(preds),
        "macro_f1": f1_total / len(StanceLabel),
    }


# Rational approximation of the standard normal CDF, Abramowitz & Stegun
# 26.2.17 (Zelen & Severo coefficients); |error| < 7.5e-8 everywhere.
_NORM_P = 0.2316419
_NORM_B = (0.319381530, -0.356563782, 1.781477937, -1.821255978, 1.330274429)


def normal_cdf(x: float) -> float:
    """Phi(x) via a fixed-coefficient rational approximation (|err| < 1e-7)."""
    if x < 0.0:
        return 1.0 - normal_cdf(-x)
    t = 1.0 / (1.0 + _NORM_P * x)
    poly = t * (_NORM_B[0] + t * (_NORM_B[1] + t * (_NORM_B[2] + t * (_NORM_B[3] + t * _NORM_B[4]))))
    pdf = math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
    return 1.0 - pdf * poly


def ztest_closed_form(p_hat: float, p0: float, n: int) -> float:
    """z = (p_hat - p0) / (sqrt(p_hat*(1-p_hat)) / sqrt(n)).

    Closed-form oracle for the bootstrap variant; undefined (degenerate)
    when p_hat is 0 or 1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 < p_hat < 1.0:
        raise DegenerateSampleError(
            f"p_hat={p_hat} gives zero standard deviation")
    std = math.sqrt(p_hat * (1.0 - p_hat))
    return (p_hat - p0) / (std / math.sqrt(n))


def bootstrap_ztest(sample: SurveySample, p0: float = DEFAULT_P0,
                    sample_size: int = DEFAULT_SAMPLE_SIZE,
                    repeats: int = DEFAULT_REPEATS, seed: int = 0) -> ZTestResult:
    """One-tailed bootstrap z-test of P > p0 over a binary response vector.

    Each repeat draws sample_size responses with replacement using a
    PCG64 generator seeded with `seed`; the replicate means and population
    standard deviations are averaged to give the sample mean and standard
    deviation entering the z formula. Identical seeds give identical
    results.
    """
    if not sample.responses:
        raise ValueError("sample must be nonempty")
    if sample_size < 1:
        raise ValueError(f"sample_size must be >= 1, got {sample_size}")
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    rng = np.random.default_rng(seed)
    values = np.asarray(sample.responses, dtype=float)
    draws = values[rng.integers(0, len(values), size=(repeats, sample_size))]
    mean = float(draws.mean(axis=1).mean())
    std = float(draws.std(axis=1).mean())
    if std == 0.0:
        raise DegenerateSampleError(
            "all resampled values identical; z statistic undefined")
    z = (mean - p0) / (std / math.sqrt(sample_size))
    return ZTestResult(
        z=z,
        p_value=1.0 - normal_cdf(z),
        mean=mean,
        std=std,
        n=sample_size,
        repeats=repeats,
        seed=seed,
    )


def read_survey_csv(path: str | Path) -> list[SurveySample]:
    """Parse a survey CSV with header question,response into per-question samples."""
    groups: dict[SurveyQuestion, list[int]] = {}
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or \
                [f.strip() for f in reader.fieldnames] != ["question", "response"]:
            raise ValueError(
                f"{path}: expected header 'question,response', got {reader.fieldnames}")
        for row_num, row in enumerate(reader, start=2):
            try:
                question = SurveyQuestion(row["question"].strip())
            except ValueError:
                raise ValueError(
                    f"{path} row {row_num}: unknown question {row['question']!r}") from None
            value = row["response"].strip()
            if value not in ("0", "1"):
                raise ValueError(
                    f"{path} row {row_num}: response must be 0 or 1, got {value!r}")
            groups.setdefault(question, []).append(int(value))
    return [SurveySample(question=q, responses=tuple(r)) for q, r in groups.items()]


def survey_report(samples: list[SurveySample], p0: float = DEFAULT_P0,
                  sample_size: int = DEFAULT_SAMPLE_SIZE,
                  repeats: int = DEFAULT_REPEATS, seed: int = 0) -> dict:
    """Run the bootstrap z-test per question; keyed by question name."""
    return {
        sample.question.value: bootstrap_ztest(
            sample, p0=p0, sample_size=sample_size, repeats=repeats, seed=seed,
        ).to_dict()
        for sample in samples
    }
