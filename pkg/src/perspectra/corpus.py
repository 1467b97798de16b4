"""Document collection: JSONL loading, sentence segmentation, source trust."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

SOURCE_KINDS = ("news", "health", "science", "government", "other")

# Periods after these forms never end a sentence.
ABBREVIATIONS = frozenset({
    "Dr.", "Mr.", "Mrs.", "Ms.", "U.S.", "U.K.", "e.g.", "i.e.",
    "vs.", "etc.", "No.", "Fig.", "St.",
})

_PARAGRAPH_BREAK = re.compile(r"\n[ \t]*\n+")
_SPLIT_CANDIDATE = re.compile(r"[.!?](\s+)")
_WORD_BEFORE = re.compile(r"(\S+)\Z")


class CorpusError(ValueError):
    """Raised when a corpus file cannot be loaded or violates an invariant."""


@dataclass(frozen=True)
class Source:
    domain: str
    name: str
    kind: str
    trusted: bool

    def __post_init__(self) -> None:
        if not self.domain or self.domain != self.domain.lower():
            raise CorpusError(f"source domain must be nonempty lowercase: {self.domain!r}")
        if "/" in self.domain or ":" in self.domain:
            raise CorpusError(f"source domain must not contain scheme or path: {self.domain!r}")
        if self.kind not in SOURCE_KINDS:
            raise CorpusError(f"invalid field source_kind: {self.kind!r}")


@dataclass(frozen=True)
class Document:
    id: str
    url: str
    title: str
    body: str
    source: Source
    published: str | None = None
    sentences: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def sentence_text(self, span: tuple[int, int]) -> str:
        return self.body[span[0]:span[1]]


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]
    trust_list: frozenset[str]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id: {doc.id!r}")
            seen.add(doc.id)
        object.__setattr__(self, "_by_id", {d.id: d for d in self.documents})

    def get(self, doc_id: str) -> Document:
        try:
            return self._by_id[doc_id]  # type: ignore[attr-defined]
        except KeyError:
            raise KeyError(f"unknown document id: {doc_id!r}") from None

    def __len__(self) -> int:
        return len(self.documents)


def segment_sentences(text: str) -> list[tuple[int, int]]:
    """Split text into sentence spans (start, end) over the original string.

    Splits at '.', '!' or '?' followed by whitespace and an uppercase letter
    or digit, and at blank-line paragraph boundaries. A fixed abbreviation
    list suppresses splits after forms like "Dr." or "U.S.". Spans are
    trimmed of surrounding whitespace and cover every non-whitespace
    character exactly once.
    """
    spans: list[tuple[int, int]] = []
    for p_start, p_end in _paragraphs(text):
        spans.extend(_split_paragraph(text, p_start, p_end))
    return spans


def _paragraphs(text: str):
    pos = 0
    for m in _PARAGRAPH_BREAK.finditer(text):
        yield pos, m.start()
        pos = m.end()
    if pos <= len(text):
        yield pos, len(text)


def _split_paragraph(text: str, start: int, end: int) -> list[tuple[int, int]]:
    chunk = text[start:end]
    breaks: list[tuple[int, int]] = []  # (sentence end, next sentence start), chunk-relative
    for m in _SPLIT_CANDIDATE.finditer(chunk):
        nxt = m.end()
        if nxt >= len(chunk):
            continue
        ch = chunk[nxt]
        if not (ch.isupper() or ch.isdigit()):
            continue
        if _ends_with_abbreviation(chunk, m.start() + 1):
            continue
        breaks.append((m.start() + 1, nxt))
    spans: list[tuple[int, int]] = []
    prev = 0
    for sent_end, next_start in breaks:
        spans.append((prev, sent_end))
        prev = next_start
    spans.append((prev, len(chunk)))
    return [
        (start + s, start + e)
        for s, e in (_trim(chunk, s, e) for s, e in spans)
        if s < e
    ]


def _ends_with_abbreviation(chunk: str, punct_end: int) -> bool:
    m = _WORD_BEFORE.search(chunk, 0, punct_end)
    if m is None:
        return False
    word = m.group(1).lstrip("([{\"'“‘")
    return word in ABBREVIATIONS


def _trim(chunk: str, start: int, end: int) -> tuple[int, int]:
    while start < end and chunk[start].isspace():
        start += 1
    while end > start and chunk[end - 1].isspace():
        end -= 1
    return start, end


def load_trust_list(path: str | Path) -> frozenset[str]:
    """Read a newline-delimited domain list; '#' comments allowed."""
    domains: set[str] = set()
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read trust list {path}: {exc}") from exc
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            domains.add(line.lower())
    return frozenset(domains)


_REQUIRED_FIELDS = ("id", "url", "title", "body", "source_domain", "source_name", "source_kind")


def load_corpus(path: str | Path, trust_path: str | Path) -> Corpus:
    """Load a JSONL corpus and resolve source trust against the trust list.

    Each line is an object with fields id, url, title, body, source_domain,
    source_name, source_kind and optional published. Sentences are segmented
    at load time so every consumer sees identical spans.
    """
    trust_list = load_trust_list(trust_path)
    documents: list[Document] = []
    try:
        raw_lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read corpus {path}: {exc}") from exc
    for lineno, line in enumerate(raw_lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusError(f"line {lineno}: malformed JSON ({exc.msg})") from exc
        if not isinstance(record, dict):
            raise CorpusError(f"line {lineno}: expected a JSON object")
        for name in _REQUIRED_FIELDS:
            if name not in record:
                raise CorpusError(f"line {lineno}: missing required field {name!r}")
        domain = str(record["source_domain"]).lower()
        try:
            source = Source(
                domain=domain,
                name=str(record["source_name"]),
                kind=str(record["source_kind"]),
                trusted=domain in trust_list,
            )
        except CorpusError as exc:
            raise CorpusError(f"line {lineno}: {exc}") from None
        body = str(record["body"])
        documents.append(Document(
            id=str(record["id"]),
            url=str(record["url"]),
            title=str(record["title"]),
            body=body,
            source=source,
            published=record.get("published"),
            sentences=tuple(segment_sentences(body)),
        ))
    return Corpus(documents=tuple(documents), trust_list=trust_list)


def trust_lookup(domain: str, corpus: Corpus) -> bool:
    """True iff the lowercased domain is on the corpus trust list."""
    if not domain:
        raise CorpusError("domain must be nonempty")
    return domain.lower() in corpus.trust_list
