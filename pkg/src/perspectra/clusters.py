"""Cross-document grouping: stance buckets and within-bucket deduplication."""

from __future__ import annotations

from dataclasses import dataclass, field

from .index import Index, Query, bm25_score, content_tokens
from .responses import Perspective, weighted_cosine
from .stance import StanceLabel

DEFAULT_THETA = 0.6


@dataclass
class Group:
    """One deduplicated viewpoint: a representative plus near-restatements.

    The representative is always its group's first member.
    """

    representative: Perspective
    members: list[Perspective] = field(default_factory=list)


@dataclass
class PerspectiveClusters:
    buckets: dict[StanceLabel, list[Group]]

    def all_members(self) -> list[Perspective]:
        return [p for groups in self.buckets.values() for g in groups for p in g.members]


def conditional_similarity(p1: Perspective, p2: Perspective, query: Query,
                           index: Index) -> float:
    """Query-conditioned similarity of two perspectives in [0, 1].

    Opposing stances (Support vs Refute) are never similar. Otherwise:
    idf-weighted cosine over content tokens after removing every query
    content token, so agreement counts only beyond merely answering the
    query. Symmetric by construction.
    """
    stances = {p1.stance, p2.stance}
    if stances == {StanceLabel.SUPPORT, StanceLabel.REFUTE}:
        return 0.0
    query_content = set(query.content)
    tokens1 = [t for t in content_tokens(list(p1.tokens)) if t not in query_content]
    tokens2 = [t for t in content_tokens(list(p2.tokens)) if t not in query_content]
    return weighted_cosine(tokens1, tokens2, index)


def cluster_perspectives(perspectives: list[Perspective], query: Query,
                         index: Index, theta: float = DEFAULT_THETA,
                         doc_scores: dict[str, float] | None = None) -> PerspectiveClusters:
    """Partition perspectives into stance buckets and greedily dedupe each bucket.

    Perspectives are processed in descending retrieval-score order of their
    source documents (ties: doc_id ascending); each joins the first group
    whose representative is at least theta similar, otherwise it opens a
    new group. doc_scores defaults to BM25 scores from the index. All three
    stance buckets are always present, possibly empty.
    """
    if theta < 0.0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    if doc_scores is None:
        doc_scores = {p.doc_id: bm25_score(index, query, p.doc_id) for p in perspectives}
    ordered = sorted(perspectives, key=lambda p: (-doc_scores[p.doc_id], p.doc_id))
    buckets: dict[StanceLabel, list[Group]] = {
        StanceLabel.SUPPORT: [],
        StanceLabel.REFUTE: [],
        StanceLabel.NEUTRAL: [],
    }
    for persp in ordered:
        groups = buckets[persp.stance]
        for group in groups:
            if conditional_similarity(persp, group.representative, query, index) >= theta:
                group.members.append(persp)
                break
        else:
            groups.append(Group(representative=persp, members=[persp]))
    return PerspectiveClusters(buckets=buckets)
