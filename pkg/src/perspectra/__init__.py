"""Perspective-oriented search over a local news corpus.

Given a controversial query, retrieve candidate articles, extract one
direct-response sentence per article, label stances, corroborate each
response with up to three evidence sentences, and group the responses by
stance with near-duplicates merged.
"""

from .clusters import PerspectiveClusters, cluster_perspectives, conditional_similarity
from .corpus import Corpus, CorpusError, Document, Source, load_corpus, segment_sentences, trust_lookup
from .evalstats import SurveySample, ZTestResult, bootstrap_ztest, mse, rouge2_f1, ztest_closed_form
from .evidence import EvidenceSentence, evidence_score, mine_evidence
from .index import Index, Query, ScoredDoc, bm25_score, build_index, retrieve, tokenize
from .pipeline import PipelineConfig, SearchResponse, render_json, search
from .responses import Perspective, argument_strength, extract_perspective, relevance
from .stance import StanceLabel, StanceResult, classify_stance, remote_classify

__version__ = "0.1.0"

__all__ = [
    "Corpus", "CorpusError", "Document", "Source",
    "load_corpus", "segment_sentences", "trust_lookup",
    "Index", "Query", "ScoredDoc", "bm25_score", "build_index", "retrieve", "tokenize",
    "Perspective", "argument_strength", "extract_perspective", "relevance",
    "StanceLabel", "StanceResult", "classify_stance", "remote_classify",
    "EvidenceSentence", "evidence_score", "mine_evidence",
    "PerspectiveClusters", "cluster_perspectives", "conditional_similarity",
    "PipelineConfig", "SearchResponse", "render_json", "search",
    "SurveySample", "ZTestResult", "bootstrap_ztest", "mse", "rouge2_f1", "ztest_closed_form",
    "__version__",
]
