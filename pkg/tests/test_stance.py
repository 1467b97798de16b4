import json
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest

from perspectra.index import Query
from perspectra.pipeline import PipelineConfig, _stance_classifier
from perspectra.stance import (
    RemoteStanceError,
    StanceLabel,
    StanceResult,
    classify_stance,
    remote_classify,
    sign_score,
)
from perspectra.index import tokenize

MASKS = Query.from_text("Should wearing masks be mandatory?")


class TestBaseline:
    def test_empty_statement(self):
        assert classify_stance("", MASKS) == StanceResult(StanceLabel.NEUTRAL, 0.0)

    def test_affirmative_cues_support(self):
        result = classify_stance("Masks are effective and necessary.", MASKS)
        assert result.label is StanceLabel.SUPPORT
        assert result.confidence > 0

    def test_negator_flips_to_refute(self):
        result = classify_stance("Masks are not necessary.", MASKS)
        assert result.label is StanceLabel.REFUTE

    def test_low_overlap_gates_to_neutral(self):
        # cue-laden but off-topic
        result = classify_stance("Vaccines are safe and effective.", MASKS)
        assert result.label is StanceLabel.NEUTRAL

    def test_zero_polarity_is_neutral(self):
        result = classify_stance("Masks help people breathe.", MASKS)
        assert result.label is StanceLabel.NEUTRAL

    def test_contraction_negator(self):
        result = classify_stance("Masks aren't safe.", MASKS)
        assert result.label is StanceLabel.REFUTE

    def test_negator_window_is_three_tokens(self):
        # negator 4 tokens before the cue: no flip
        tokens = tokenize("never one two three safe")
        assert sign_score(tokens) == -1 + 1
        # negator inside the window flips
        tokens = tokenize("never two three safe")
        assert sign_score(tokens) == -1 - 1

    def test_confidence_formula(self):
        # p=+2, overlap = |{masks}| / |{masks,effective,necessary,wearing,mandatory}|
        result = classify_stance("Masks are effective and necessary.", MASKS)
        assert result.confidence == pytest.approx(min(1.0, 2 / 3) * (1 / 5))

    def test_deterministic(self):
        statement = "Masks are not necessary outdoors."
        assert classify_stance(statement, MASKS) == classify_stance(statement, MASKS)

    def test_reorder_preserving_windows_keeps_label(self):
        a = classify_stance("Masks are effective and necessary.", MASKS)
        b = classify_stance("Masks are necessary and effective.", MASKS)
        assert a.label is b.label is StanceLabel.SUPPORT

    def test_irrelevant_suffix_cannot_unlock_gate(self):
        base = "Vaccines are safe."
        assert classify_stance(base, MASKS).label is StanceLabel.NEUTRAL
        padded = base + " Trains run late. Rivers flood in spring."
        assert classify_stance(padded, MASKS).label is StanceLabel.NEUTRAL


class _StubHandler(BaseHTTPRequestHandler):
    payload: dict = {}
    status: int = 200
    seen: list = []

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        type(self).seen.append(json.loads(self.rfile.read(length)))
        body = json.dumps(type(self).payload).encode()
        self.send_response(type(self).status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture()
def stub_server():
    server = HTTPServer(("127.0.0.1", 0), _StubHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    _StubHandler.seen = []
    yield f"http://127.0.0.1:{server.server_port}/stance"
    server.shutdown()


class TestRemote:
    def test_maps_wire_contract(self, stub_server):
        _StubHandler.payload = {"label": "refute", "confidence": 0.9}
        _StubHandler.status = 200
        result = remote_classify(stub_server, "Masks are bad.", MASKS)
        assert result == StanceResult(StanceLabel.REFUTE, 0.9)
        assert _StubHandler.seen[-1] == {
            "statement": "Masks are bad.", "query": MASKS.raw}

    def test_confidence_out_of_range_names_field(self, stub_server):
        _StubHandler.payload = {"label": "refute", "confidence": 1.5}
        with pytest.raises(RemoteStanceError, match="confidence"):
            remote_classify(stub_server, "x", MASKS)

    def test_unknown_label_names_field(self, stub_server):
        _StubHandler.payload = {"label": "maybe", "confidence": 0.5}
        with pytest.raises(RemoteStanceError, match="label"):
            remote_classify(stub_server, "x", MASKS)

    def test_non_200_is_error(self, stub_server):
        _StubHandler.payload = {"label": "support", "confidence": 0.5}
        _StubHandler.status = 500
        with pytest.raises(RemoteStanceError, match="500"):
            remote_classify(stub_server, "x", MASKS)
        _StubHandler.status = 200

    def test_unreachable_raises_transient(self):
        with pytest.raises(RemoteStanceError) as excinfo:
            remote_classify("http://127.0.0.1:1/stance", "x", MASKS, timeout=0.5)
        assert excinfo.value.transient

    def test_fallback_to_baseline(self):
        config = PipelineConfig(
            stance_mode="remote",
            remote_endpoint="http://127.0.0.1:1/stance",
            remote_timeout=0.5,
            fallback_to_baseline=True,
        )
        classify = _stance_classifier(config)
        statement = "Masks are effective and necessary."
        assert classify(statement, MASKS) == classify_stance(statement, MASKS)

    def test_no_fallback_reraises(self):
        config = PipelineConfig(
            stance_mode="remote",
            remote_endpoint="http://127.0.0.1:1/stance",
            remote_timeout=0.5,
            fallback_to_baseline=False,
        )
        classify = _stance_classifier(config)
        with pytest.raises(RemoteStanceError):
            classify("Masks are effective.", MASKS)

    def test_label_always_in_enum(self, stub_server):
        for label in ("support", "refute", "neutral"):
            _StubHandler.payload = {"label": label, "confidence": 0.3}
            result = remote_classify(stub_server, "x", MASKS)
            assert result.label in StanceLabel
