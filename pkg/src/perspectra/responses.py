"""Per-document response extraction: pick the sentence that best answers the query."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

from .corpus import Document
from .index import Index, Query, content_tokens, tokenize
from .stance import StanceLabel

DEFAULT_ALPHA = 0.7
_MARKER_SUFFIXES = ("s", "es", "d", "ed")


def _load_markers() -> frozenset[str]:
    text = resources.files("perspectra.data").joinpath("argument_markers.txt").read_text("utf-8")
    markers = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#") and not line.startswith("["):
            markers.add(line)
    return frozenset(markers)


ARGUMENT_MARKERS = _load_markers()


@dataclass
class Perspective:
    """A single document sentence serving as the document's direct response.

    Stance fields start at Neutral/0.0 and are filled by the stance stage.
    """

    doc_id: str
    span: tuple[int, int]
    text: str
    relevance: float
    argument: float
    combined: float
    stance: StanceLabel = StanceLabel.NEUTRAL
    stance_confidence: float = 0.0
    tokens: tuple[str, ...] = field(default_factory=tuple)


def weighted_cosine(tokens_a: list[str] | tuple[str, ...],
                    tokens_b: list[str] | tuple[str, ...],
                    index: Index) -> float:
    """Cosine similarity of idf-weighted term-count vectors; 0.0 if either is empty."""
    if not tokens_a or not tokens_b:
        return 0.0
    vec_a = _weighted_vector(tokens_a, index)
    vec_b = _weighted_vector(tokens_b, index)
    # sorted shared-token order keeps float accumulation symmetric in a/b
    dot = sum(vec_a[t] * vec_b[t] for t in sorted(vec_a.keys() & vec_b.keys()))
    if dot == 0.0:
        return 0.0
    norm_a = math.sqrt(sum(w * w for w in vec_a.values()))
    norm_b = math.sqrt(sum(w * w for w in vec_b.values()))
    return dot / (norm_a * norm_b)


def _weighted_vector(tokens, index: Index) -> dict[str, float]:
    counts: dict[str, int] = {}
    for tok in tokens:
        counts[tok] = counts.get(tok, 0) + 1
    return {tok: n * index.idf(tok) for tok, n in counts.items()}


def relevance(sentence_tokens: list[str] | tuple[str, ...], query: Query, index: Index) -> float:
    """Query relevance of a sentence: idf-weighted cosine over content tokens."""
    return weighted_cosine(content_tokens(list(sentence_tokens)), list(query.content), index)


def argument_strength(sentence_tokens: list[str] | tuple[str, ...]) -> float:
    """min(1, hits/3) where hits counts argument-marker occurrences.

    Markers match after stripping a trailing s/es/d/ed, so inflections
    like "shows" or "argued" count.
    """
    hits = 0
    for tok in sentence_tokens:
        if _is_marker(tok):
            hits += 1
    return min(1.0, hits / 3.0)


def _is_marker(token: str) -> bool:
    if token in ARGUMENT_MARKERS:
        return True
    for suffix in _MARKER_SUFFIXES:
        if token.endswith(suffix) and token[: -len(suffix)] in ARGUMENT_MARKERS:
            return True
    return False


def extract_perspective(doc: Document, query: Query, index: Index,
                        alpha: float = DEFAULT_ALPHA) -> Perspective:
    """Return the document sentence maximizing alpha*relevance + (1-alpha)*argument.

    Ties go to the earliest span. Raises ValueError for a document with no
    sentences.
    """
    if not doc.sentences:
        raise ValueError(f"document {doc.id!r} has no sentences")
    best: Perspective | None = None
    for span in doc.sentences:
        text = doc.sentence_text(span)
        tokens = tuple(tokenize(text))
        rel = relevance(tokens, query, index)
        arg = argument_strength(tokens)
        combined = alpha * rel + (1.0 - alpha) * arg
        if best is None or combined > best.combined:
            best = Perspective(
                doc_id=doc.id, span=span, text=text,
                relevance=rel, argument=arg, combined=combined,
                tokens=tokens,
            )
    assert best is not None
    return best
