"""Stance classification: lexicon-plus-negation baseline and remote HTTP client."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources

import httpx

from .index import Query, content_tokens, tokenize

OVERLAP_GATE = 0.1
NEGATOR_WINDOW = 3


class StanceLabel(str, enum.Enum):
    SUPPORT = "support"
    REFUTE = "refute"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class StanceResult:
    label: StanceLabel
    confidence: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence out of range: {self.confidence}")


def _load_cues() -> tuple[frozenset[str], frozenset[str], frozenset[str]]:
    text = resources.files("perspectra.data").joinpath("stance_cues.txt").read_text("utf-8")
    sections: dict[str, set[str]] = {"affirmative": set(), "negative": set(), "negators": set()}
    current: set[str] | None = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = sections[line[1:-1]]
        elif current is not None:
            current.add(line)
    return (frozenset(sections["affirmative"]),
            frozenset(sections["negative"]),
            frozenset(sections["negators"]))


AFFIRMATIVE_CUES, NEGATIVE_CUES, NEGATORS = _load_cues()


def _is_negator(tokens: list[str], i: int) -> bool:
    # "n't" in the negator list matches the (xxxn, t) token pair that the
    # letters-and-digits tokenizer produces for contractions.
    if tokens[i] in NEGATORS - {"n't"}:
        return True
    return ("n't" in NEGATORS and tokens[i] == "t"
            and i > 0 and tokens[i - 1].endswith("n"))


def sign_score(tokens: list[str]) -> int:
    """Sum of cue polarities; a negator within the 3 preceding tokens flips a cue."""
    score = 0
    for i, tok in enumerate(tokens):
        if tok in AFFIRMATIVE_CUES:
            sign = 1
        elif tok in NEGATIVE_CUES:
            sign = -1
        else:
            continue
        window = range(max(0, i - NEGATOR_WINDOW), i)
        if any(_is_negator(tokens, j) for j in window):
            sign = -sign
        score += sign
    return score


def content_jaccard(tokens_a: list[str], tokens_b: list[str]) -> float:
    set_a = set(content_tokens(tokens_a))
    set_b = set(content_tokens(tokens_b))
    if not set_a or not set_b:
        return 0.0
    return len(set_a & set_b) / len(set_a | set_b)


def classify_stance(statement: str, query: Query) -> StanceResult:
    """Deterministic baseline: cue polarity gated by statement-query overlap.

    Statements whose content-token Jaccard overlap with the query is below
    0.1 are Neutral regardless of polarity. confidence = min(1, |p|/3) * overlap.
    """
    tokens = tokenize(statement)
    if not tokens:
        return StanceResult(StanceLabel.NEUTRAL, 0.0)
    polarity = sign_score(tokens)
    overlap = content_jaccard(tokens, list(query.tokens))
    confidence = min(1.0, abs(polarity) / 3.0) * overlap
    if overlap < OVERLAP_GATE or polarity == 0:
        return StanceResult(StanceLabel.NEUTRAL, confidence)
    label = StanceLabel.SUPPORT if polarity > 0 else StanceLabel.REFUTE
    return StanceResult(label, confidence)


class RemoteStanceError(RuntimeError):
    """Remote classifier failed: unreachable, non-200 or contract violation."""

    def __init__(self, message: str, *, transient: bool = False) -> None:
        super().__init__(message)
        self.transient = transient


def remote_classify(endpoint: str, statement: str, query: Query,
                    timeout: float = 5.0) -> StanceResult:
    """POST {statement, query} to a remote model; map the reply to a StanceResult.

    Wire contract: JSON response {label: support|refute|neutral,
    confidence: number in [0,1]}. Connection failures and timeouts raise a
    transient RemoteStanceError so callers can fall back to the baseline;
    contract violations are non-transient and name the offending field.
    """
    try:
        response = httpx.post(
            endpoint,
            json={"statement": statement, "query": query.raw},
            timeout=timeout,
        )
    except httpx.TimeoutException as exc:
        raise RemoteStanceError(f"stance endpoint timed out: {exc}", transient=True) from exc
    except httpx.TransportError as exc:
        raise RemoteStanceError(f"stance endpoint unreachable: {exc}", transient=True) from exc
    if response.status_code != 200:
        raise RemoteStanceError(
            f"stance endpoint returned status {response.status_code}")
    try:
        payload = response.json()
    except ValueError as exc:
        raise RemoteStanceError("stance response is not valid JSON") from exc
    if not isinstance(payload, dict):
        raise RemoteStanceError("stance response must be a JSON object")
    label_raw = payload.get("label")
    if not isinstance(label_raw, str) or label_raw.lower() not in StanceLabel._value2member_map_:
        raise RemoteStanceError(f"invalid field 'label': {label_raw!r}")
    confidence = payload.get("confidence")
    if not isinstance(confidence, (int, float)) or isinstance(confidence, bool) \
            or not 0.0 <= float(confidence) <= 1.0:
        raise RemoteStanceError(f"invalid field 'confidence': {confidence!r}")
    return StanceResult(StanceLabel(label_raw.lower()), float(confidence))
