"""End-to-end search: retrieve, extract, label, corroborate, group, assemble."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

from .clusters import DEFAULT_THETA, cluster_perspectives
from .corpus import Corpus
from .evidence import DEFAULT_BETA, mine_evidence
from .index import Index, Query, retrieve
from .responses import DEFAULT_ALPHA, extract_perspective
from .stance import RemoteStanceError, StanceResult, classify_stance, remote_classify

DEFAULT_MIN_RELEVANCE = 0.05
STANCE_MODES = ("baseline", "remote")


class InvalidQueryError(ValueError):
    """Query is empty or contains only stopwords after tokenization."""


@dataclass
class PipelineConfig:
    k: int = 10
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    theta: float = DEFAULT_THETA
    min_relevance: float = DEFAULT_MIN_RELEVANCE
    stance_mode: str = "baseline"
    remote_endpoint: str | None = None
    remote_timeout: float = 5.0
    fallback_to_baseline: bool = True
    seed: int = 0
    ui_dir: str | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        for name in ("alpha", "beta", "min_relevance"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        # theta above 1 is legal: an unreachable threshold puts every
        # perspective in its own group.
        if self.theta < 0.0:
            raise ValueError(f"theta must be >= 0, got {self.theta}")
        if self.stance_mode not in STANCE_MODES:
            raise ValueError(f"stance_mode must be one of {STANCE_MODES}")
        if self.stance_mode == "remote" and not self.remote_endpoint:
            raise ValueError("remote stance mode requires remote_endpoint")

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


@dataclass
class SearchResponse:
    query: str
    k: int
    retrieved: int
    dropped: int
    clusters: dict[str, list[dict]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "query": self.query,
            "k": self.k,
            "retrieved": self.retrieved,
            "dropped": self.dropped,
            "clusters": self.clusters,
        }


def render_json(response: SearchResponse) -> str:
    """Canonical serialization; the CLI and HTTP paths both emit exactly this."""
    return json.dumps(response.to_dict(), ensure_ascii=False, indent=2) + "\n"


def _stance_classifier(config: PipelineConfig):
    if config.stance_mode == "baseline":
        return classify_stance

    def classify(statement: str, query: Query) -> StanceResult:
        try:
            return remote_classify(
                config.remote_endpoint, statement, query, timeout=config.remote_timeout)
        except RemoteStanceError as exc:
            if exc.transient and config.fallback_to_baseline:
                return classify_stance(statement, query)
            raise

    return classify


def search(query_text: str, corpus: Corpus, index: Index,
           config: PipelineConfig | None = None, stance_fn=None) -> SearchResponse:
    """Run the full pipeline for one query.

    Deterministic for a fixed corpus and config: retrieval ties, extraction
    ties, evidence order and group assignment all have pinned tie-breaks.
    """
    config = config or PipelineConfig()
    query = Query.from_text(query_text)
    if not query.content:
        raise InvalidQueryError(
            f"query has no content tokens after tokenization: {query_text!r}")
    if stance_fn is None:
        stance_fn = _stance_classifier(config)

    hits = retrieve(index, query, config.k)
    doc_scores = {hit.doc_id: hit.score for hit in hits}

    perspectives = []
    dropped = 0
    for hit in hits:
        doc = corpus.get(hit.doc_id)
        perspective = extract_perspective(doc, query, index, config.alpha)
        if perspective.relevance < config.min_relevance:
            dropped += 1
            continue
        result = stance_fn(perspective.text, query)
        perspective.stance = result.label
        perspective.stance_confidence = result.confidence
        perspectives.append(perspective)

    clusters = cluster_perspectives(
        perspectives, query, index, theta=config.theta, doc_scores=doc_scores)

    rendered: dict[str, list[dict]] = {}
    for label, groups in clusters.buckets.items():
        cards = []
        for group_idx, group in enumerate(groups):
            for perspective in group.members:
                doc = corpus.get(perspective.doc_id)
                evidence = mine_evidence(doc, perspective, query, index, config.beta)
                cards.append({
                    "doc_id": doc.id,
                    "url": doc.url,
                    "title": doc.title,
                    "source": {
                        "name": doc.source.name,
                        "kind": doc.source.kind,
                        "domain": doc.source.domain,
                        "trusted": doc.source.trusted,
                    },
                    "perspective": perspective.text,
                    "stance": perspective.stance.value,
                    "stance_confidence": perspective.stance_confidence,
                    "group": group_idx,
                    "evidence": [
                        {"text": ev.text, "relevance": ev.relevance} for ev in evidence
                    ],
                })
        rendered[label.value] = cards

    return SearchResponse(
        query=query_text,
        k=config.k,
        retrieved=len(hits),
        dropped=dropped,
        clusters=rendered,
    )
