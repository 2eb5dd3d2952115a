"""Wire protocol binding remote victims, substitute providers, and scorers.

One JSON object per line, UTF-8, carried either in an HTTP POST body
(path ``/v1/<kind>``) or over a stdio line stream; both framings use the
identical envelope:

    {"version": "1", "kind": "classify", "id": "...", "payload": {...}}

Requests and responses share the id; the stdio client matches responses
by id, so servers may answer out of order. One retry is attempted on
transport errors, and retried classify calls are counted as queries by
the caller (the victim counts per attempt). The full schema with
byte-exact examples lives in docs/protocol.md.
"""

from __future__ import annotations

import itertools
import json
import subprocess
import threading
from typing import Optional, Sequence

import requests

from .errors import (ProtocolError, ProviderUnavailable, RemoteError,
                     ScorerUnavailable, ValidationError, VictimUnavailable)
from .providers import CandidateSubstitute

PROTOCOL_VERSION = "1"
KINDS = ("classify", "substitutes", "semantic")
PROBABILITY_SUM_TOLERANCE = 1e-6


def _validate_payload(kind: str, payload: dict) -> None:
    if kind == "classify":
        texts = payload.get("texts")
        if not isinstance(texts, list) or not texts or \
                not all(isinstance(t, str) for t in texts):
            raise ValidationError("classify payload needs a non-empty texts array")
    elif kind == "substitutes":
        tokens = payload.get("tokens")
        position = payload.get("mask_position")
        k = payload.get("k")
        if not isinstance(tokens, list) or not tokens or \
                not all(isinstance(t, str) for t in tokens):
            raise ValidationError("substitutes payload needs a non-empty tokens array")
        if not isinstance(position, int) or not 0 <= position < len(tokens):
            raise ValidationError(f"mask_position {position} out of bounds")
        if not isinstance(k, int) or k < 1:
            raise ValidationError(f"k must be a positive integer, got {k}")
    elif kind == "semantic":
        if not isinstance(payload.get("a"), str) or not isinstance(payload.get("b"), str):
            raise ValidationError("semantic payload needs string fields a and b")
    else:
        raise ValidationError(f"unknown message kind {kind!r}")


def encode_request(kind: str, payload: dict, request_id: str = "0") -> bytes:
    """Encode one request line; the payload is validated before encoding."""
    _validate_payload(kind, payload)
    envelope = {"version": PROTOCOL_VERSION, "kind": kind, "id": request_id,
                "payload": payload}
    return (json.dumps(envelope, ensure_ascii=False) + "\n").encode("utf-8")


def _parse_envelope(octets: bytes) -> dict:
    try:
        envelope = json.loads(octets.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ProtocolError(f"malformed response line: {exc}") from exc
    if not isinstance(envelope, dict):
        raise ProtocolError("response must be a JSON object")
    if envelope.get("version") != PROTOCOL_VERSION:
        raise ProtocolError(f"unsupported protocol version {envelope.get('version')!r}")
    return envelope


def decode_response(kind: str, octets: bytes, expect_id: Optional[str] = None):
    """Decode and bounds-check one response line.

    Raises:
        ProtocolError: malformed JSON, schema violation, or bounds violation.
        RemoteError: the peer answered with a typed error payload.
    """
    envelope = _parse_envelope(octets)
    if expect_id is not None and envelope.get("id") != expect_id:
        raise ProtocolError(
            f"response id {envelope.get('id')!r} does not match request {expect_id!r}")
    payload = envelope.get("payload")
    if not isinstance(payload, dict):
        raise ProtocolError("response payload must be an object")
    if "error" in payload:
        raise RemoteError(payload["error"], payload.get("message", ""))
    return _decode_payload(kind, payload)


def _decode_payload(kind: str, payload: dict):
    if kind == "classify":
        scores = payload.get("scores")
        if not isinstance(scores, list):
            raise ProtocolError("classify response needs a scores array")
        pairs = []
        for pair in scores:
            if not isinstance(pair, list) or len(pair) != 2:
                raise ProtocolError("each score must be a [p_credible, p_noncredible] pair")
            p_c, p_nc = float(pair[0]), float(pair[1])
            if p_c < 0 or p_nc < 0 or abs(p_c + p_nc - 1.0) > PROBABILITY_SUM_TOLERANCE:
                raise ProtocolError(f"probabilities ({p_c}, {p_nc}) do not sum to 1")
            pairs.append((p_c, p_nc))
        return pairs
    if kind == "substitutes":
        found = payload.get("candidates")
        if not isinstance(found, list):
            raise ProtocolError("substitutes response needs a candidates array")
        out = []
        for item in found:
            if not isinstance(item, dict) or "token" not in item or "score" not in item:
                raise ProtocolError("each candidate needs token and score fields")
            token, score = item["token"], float(item["score"])
            if not isinstance(token, str) or not token:
                raise ProtocolError("candidate token must be a non-empty string")
            if not 0.0 <= score <= 1.0:
                raise ProtocolError(f"candidate score {score} outside [0, 1]")
            out.append(CandidateSubstitute(token, score))
        return out
    if kind == "semantic":
        score = payload.get("score")
        try:
            score = float(score)
        except (TypeError, ValueError) as exc:
            raise ProtocolError("semantic response needs a numeric score") from exc
        if not 0.0 <= score <= 1.0:
            raise ProtocolError(f"semantic score {score} outside [0, 1]")
        return score
    raise ValidationError(f"unknown message kind {kind!r}")


_UNAVAILABLE = {
    "classify": VictimUnavailable,
    "substitutes": ProviderUnavailable,
    "semantic": ScorerUnavailable,
}


class ProtocolClient:
    """Common request surface; subclasses provide the transport."""

    def __init__(self):
        self._ids = itertools.count()

    def _next_id(self) -> str:
        return str(next(self._ids))

    def _transport(self, kind: str, line: bytes, request_id: str) -> bytes:
        raise NotImplementedError

    def request(self, kind: str, payload: dict, on_retry=None):
        request_id = self._next_id()
        line = encode_request(kind, payload, request_id)
        try:
            reply = self._transport(kind, line, request_id)
        except (ProtocolError, RemoteError):
            raise
        except Exception:
            # One retry, then the run fails; the retry is a fresh request
            # and callers may account for it (retried texts count as queries).
            if on_retry is not None:
                on_retry()
            retry_id = self._next_id()
            retry_line = encode_request(kind, payload, retry_id)
            try:
                reply = self._transport(kind, retry_line, retry_id)
            except (ProtocolError, RemoteError):
                raise
            except Exception as exc:
                raise _UNAVAILABLE[kind](f"transport failed after retry: {exc}") from exc
            request_id = retry_id
        return decode_response(kind, reply, expect_id=request_id)

    def classify(self, texts: Sequence[str], on_retry=None) -> list[tuple[float, float]]:
        return self.request("classify", {"texts": list(texts)}, on_retry=on_retry)

    def substitutes(self, tokens: Sequence[str], mask_position: int,
                    k: int) -> list[CandidateSubstitute]:
        return self.request("substitutes", {"tokens": list(tokens),
                                            "mask_position": mask_position, "k": k})

    def semantic(self, a: str, b: str) -> float:
        return self.request("semantic", {"a": a, "b": b})


class HttpClient(ProtocolClient):
    """HTTP framing: POST the envelope line to ``<endpoint>/v1/<kind>``."""

    def __init__(self, endpoint: str, timeout: float = 30.0):
        super().__init__()
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout

    def _transport(self, kind, line, request_id):
        response = requests.post(f"{self.endpoint}/v1/{kind}", data=line,
                                 headers={"Content-Type": "application/json"},
                                 timeout=self.timeout)
        if response.status_code >= 500:
            raise ConnectionError(f"server error {response.status_code}")
        return response.content


class StdioClient(ProtocolClient):
    """Stdio framing around a server subprocess, pipelined.

    Requests may be issued concurrently; a reader thread matches response
    lines to pending requests by id, so out-of-order replies are fine.
    """

    def __init__(self, command: Sequence[str]):
        super().__init__()
        self.command = list(command)
        self._proc = subprocess.Popen(
            self.command, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
            stderr=subprocess.DEVNULL)
        self._write_lock = threading.Lock()
        self._pending_lock = threading.Lock()
        self._pending: dict[str, threading.Event] = {}
        self._replies: dict[str, bytes] = {}
        self._reader_error: Optional[Exception] = None
        self._reader = threading.Thread(target=self._read_loop, daemon=True)
        self._reader.start()

    def _read_loop(self):
        try:
            assert self._proc.stdout is not None
            for raw in self._proc.stdout:
                try:
                    reply_id = _parse_envelope(raw).get("id")
                except ProtocolError:
                    reply_id = None
                with self._pending_lock:
                    if reply_id in self._pending:
                        self._replies[reply_id] = raw
                        self._pending[reply_id].set()
            raise ConnectionError("server closed its output stream")
        except Exception as exc:
            with self._pending_lock:
                self._reader_error = exc
                for event in self._pending.values():
                    event.set()

    def _transport(self, kind, line, request_id):
        event = threading.Event()
        with self._pending_lock:
            if self._reader_error is not None:
                raise self._reader_error
            self._pending[request_id] = event
        try:
            with self._write_lock:
                assert self._proc.stdin is not None
                self._proc.stdin.write(line)
                self._proc.stdin.flush()
            event.wait()
            with self._pending_lock:
                if request_id in self._replies:
                    return self._replies.pop(request_id)
                raise self._reader_error or ConnectionError("no reply received")
        finally:
            with self._pending_lock:
                self._pending.pop(request_id, None)
                self._replies.pop(request_id, None)

    def close(self):
        if self._proc.stdin is not None:
            self._proc.stdin.close()
        self._proc.terminate()
        self._proc.wait(timeout=10)

    def __enter__(self):
        return self

    def __exit__(self, *_exc):
        self.close()


def open_client(spec: str) -> ProtocolClient:
    """Build a client from a target spec: an http(s) URL or ``stdio:<command>``."""
    if spec.startswith(("http://", "https://")):
        return HttpClient(spec)
    if spec.startswith("stdio:"):
        return StdioClient(spec[len("stdio:"):].split())
    raise ValidationError(f"cannot interpret endpoint spec {spec!r}")
