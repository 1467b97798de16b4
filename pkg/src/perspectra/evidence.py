"""Evidence mining: rank document sentences corroborating a perspective."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Document
from .index import Index, Query, tokenize
from .responses import Perspective, relevance
from .stance import StanceLabel, classify_stance

DEFAULT_BETA = 0.6
MAX_EVIDENCE = 3


@dataclass(frozen=True)
class EvidenceSentence:
    doc_id: str
    span: tuple[int, int]
    text: str
    evidence_prob: float
    relevance: float
    consistent: bool


def evidence_score(sentence_tokens: list[str] | tuple[str, ...],
                   perspective: Perspective, query: Query, index: Index,
                   beta: float = DEFAULT_BETA) -> float:
    """beta-blend of relevance to the perspective and relevance to the query."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta}")
    persp_query = Query.from_text(perspective.text)
    to_perspective = relevance(sentence_tokens, persp_query, index)
    to_query = relevance(sentence_tokens, query, index)
    return beta * to_perspective + (1.0 - beta) * to_query


def mine_evidence(doc: Document, perspective: Perspective, query: Query,
                  index: Index, beta: float = DEFAULT_BETA) -> list[EvidenceSentence]:
    """Top-3 stance-consistent sentences supporting the perspective.

    Every sentence except the perspective's is a candidate. Consistency
    means the baseline classifies the sentence as supporting the
    perspective text. Survivors are ranked by relevance to the user query,
    ties broken by span start; at most three are returned (zero is valid).
    """
    if perspective.doc_id != doc.id:
        raise ValueError(
            f"perspective belongs to {perspective.doc_id!r}, not {doc.id!r}")
    persp_query = Query.from_text(perspective.text)
    candidates: list[EvidenceSentence] = []
    for span in doc.sentences:
        if span == perspective.span:
            continue
        text = doc.sentence_text(span)
        tokens = tokenize(text)
        if classify_stance(text, persp_query).label is not StanceLabel.SUPPORT:
            continue
        candidates.append(EvidenceSentence(
            doc_id=doc.id,
            span=span,
            text=text,
            evidence_prob=evidence_score(tokens, perspective, query, index, beta),
            relevance=relevance(tokens, query, index),
            consistent=True,
        ))
    candidates.sort(key=lambda ev: (-ev.relevance, ev.span[0]))
    return candidates[:MAX_EVIDENCE]
