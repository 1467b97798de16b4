"""Tokenization, BM25 inverted index, top-k retrieval and index snapshots."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .corpus import Corpus, CorpusError, Document, Source

BM25_K1 = 1.2
BM25_B = 0.75

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def _load_stopwords() -> frozenset[str]:
    text = resources.files("perspectra.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(
        line.strip() for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


STOPWORDS = _load_stopwords()


def tokenize(text: str) -> list[str]:
    """Lowercase the text and return maximal runs of letters or digits."""
    return _TOKEN.findall(text.lower())


def content_tokens(tokens: list[str]) -> list[str]:
    """Tokens with stopwords removed (order and duplicates preserved)."""
    return [t for t in tokens if t not in STOPWORDS]


@dataclass(frozen=True)
class Query:
    raw: str
    tokens: tuple[str, ...]
    content: tuple[str, ...]

    @classmethod
    def from_text(cls, raw: str) -> "Query":
        tokens = tokenize(raw)
        return cls(raw=raw, tokens=tuple(tokens), content=tuple(content_tokens(tokens)))


@dataclass(frozen=True)
class ScoredDoc:
    doc_id: str
    score: float


class UnknownDocumentError(KeyError):
    pass


class Index:
    """Immutable inverted index over a corpus' document bodies.

    postings maps token -> list of (doc_id, term frequency) sorted by
    doc_id; doc_len maps doc_id -> body token count.
    """

    def __init__(self, postings: dict[str, list[tuple[str, int]]],
                 doc_len: dict[str, int]) -> None:
        self.postings = postings
        self.doc_len = doc_len
        self.n_docs = len(doc_len)
        self.avgdl = sum(doc_len.values()) / self.n_docs if self.n_docs else 0.0
        self._tf = {token: dict(plist) for token, plist in postings.items()}

    def df(self, token: str) -> int:
        return len(self.postings.get(token, ()))

    def idf(self, token: str) -> float:
        df = self.df(token)
        return math.log(1.0 + (self.n_docs - df + 0.5) / (df + 0.5))

    def tf(self, token: str, doc_id: str) -> int:
        return self._tf.get(token, {}).get(doc_id, 0)


def build_index(corpus: Corpus) -> Index:
    postings: dict[str, list[tuple[str, int]]] = {}
    doc_len: dict[str, int] = {}
    for doc in corpus.documents:
        tokens = tokenize(doc.body)
        doc_len[doc.id] = len(tokens)
        counts: dict[str, int] = {}
        for tok in tokens:
            counts[tok] = counts.get(tok, 0) + 1
        for tok, tf in counts.items():
            postings.setdefault(tok, []).append((doc.id, tf))
    for plist in postings.values():
        plist.sort(key=lambda entry: entry[0])
    return Index(postings=postings, doc_len=doc_len)


def bm25_score(index: Index, query: Query, doc_id: str) -> float:
    """Okapi BM25 with k1=1.2, b=0.75, idf = ln(1 + (N - df + 0.5)/(df + 0.5)).

    Sums one contribution per query-token occurrence; 0.0 when no query
    token occurs in the document.
    """
    if doc_id not in index.doc_len:
        raise UnknownDocumentError(doc_id)
    dl = index.doc_len[doc_id]
    score = 0.0
    for token in query.tokens:
        tf = index.tf(token, doc_id)
        if tf == 0:
            continue
        norm = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * dl / index.avgdl)
        score += index.idf(token) * tf * (BM25_K1 + 1.0) / norm
    return score


def retrieve(index: Index, query: Query, k: int = 10) -> list[ScoredDoc]:
    """Top-k documents by BM25, score descending, ties by doc_id ascending.

    Only documents containing at least one query token (score > 0) are
    returned, so the result may be shorter than k.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    scores: dict[str, float] = {}
    # Accumulate term-at-a-time in query-token order so per-document float
    # addition order matches bm25_score exactly.
    for token in query.tokens:
        plist = index.postings.get(token)
        if not plist:
            continue
        idf = index.idf(token)
        for doc_id, tf in plist:
            dl = index.doc_len[doc_id]
            norm = tf + BM25_K1 * (1.0 - BM25_B + BM25_B * dl / index.avgdl)
            scores[doc_id] = scores.get(doc_id, 0.0) + idf * tf * (BM25_K1 + 1.0) / norm
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return [ScoredDoc(doc_id=d, score=s) for d, s in ranked[:k] if s > 0.0]


SNAPSHOT_VERSION = 1


def save_snapshot(path: str | Path, corpus: Corpus, index: Index) -> None:
    """Persist corpus and index to one JSON file; round-trips bit-exactly."""
    payload = {
        "version": SNAPSHOT_VERSION,
        "trust_list": sorted(corpus.trust_list),
        "documents": [
            {
                "id": d.id,
                "url": d.url,
                "title": d.title,
                "body": d.body,
                "source": {
                    "domain": d.source.domain,
                    "name": d.source.name,
                    "kind": d.source.kind,
                    "trusted": d.source.trusted,
                },
                "published": d.published,
                "sentences": [list(span) for span in d.sentences],
            }
            for d in corpus.documents
        ],
        "postings": {t: [[d, tf] for d, tf in plist] for t, plist in index.postings.items()},
        "doc_len": index.doc_len,
    }
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":")),
        encoding="utf-8",
    )


def load_snapshot(path: str | Path) -> tuple[Corpus, Index]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CorpusError(f"cannot read snapshot {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CorpusError(f"snapshot {path} is not valid JSON: {exc.msg}") from exc
    if payload.get("version") != SNAPSHOT_VERSION:
        raise CorpusError(f"unsupported snapshot version: {payload.get('version')!r}")
    documents = tuple(
        Document(
            id=rec["id"],
            url=rec["url"],
            title=rec["title"],
            body=rec["body"],
            source=Source(
                domain=rec["source"]["domain"],
                name=rec["source"]["name"],
                kind=rec["source"]["kind"],
                trusted=rec["source"]["trusted"],
            ),
            published=rec.get("published"),
            sentences=tuple((s, e) for s, e in rec["sentences"]),
        )
        for rec in payload["documents"]
    )
    corpus = Corpus(documents=documents, trust_list=frozenset(payload["trust_list"]))
    postings = {t: [(d, tf) for d, tf in plist] for t, plist in payload["postings"].items()}
    index = Index(postings=postings, doc_len=dict(payload["doc_len"]))
    return corpus, index
