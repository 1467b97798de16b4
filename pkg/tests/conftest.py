import pytest

from perspectra.cli import _default_trust_path, _demo_path
from perspectra.corpus import Corpus, Document, Source, load_corpus, segment_sentences
from perspectra.index import build_index


def make_doc(doc_id: str, body: str, *, domain: str = "example.com",
             trusted: bool = False, kind: str = "news") -> Document:
    return Document(
        id=doc_id,
        url=f"https://{domain}/{doc_id}",
        title=f"title {doc_id}",
        body=body,
        source=Source(domain=domain, name=domain, kind=kind, trusted=trusted),
        sentences=tuple(segment_sentences(body)),
    )


def make_corpus(docs: dict[str, str], trust: set[str] | None = None) -> Corpus:
    documents = tuple(make_doc(doc_id, body) for doc_id, body in docs.items())
    return Corpus(documents=documents, trust_list=frozenset(trust or set()))


@pytest.fixture(scope="session")
def demo_corpus():
    return load_corpus(_demo_path("demo_corpus.jsonl"), _default_trust_path())


@pytest.fixture(scope="session")
def demo_index(demo_corpus):
    return build_index(demo_corpus)


@pytest.fixture(scope="session")
def demo_queries() -> list[str]:
    lines = _demo_path("queries.txt").read_text(encoding="utf-8").splitlines()
    return [ln.strip() for ln in lines if ln.strip() and not ln.startswith("#")]
