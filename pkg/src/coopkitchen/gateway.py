"""Uniform text-completion gateway: live HTTP, recorded replay, scripted mock.

All nondeterminism and latency lives behind this interface. Requests are
submitted without blocking; the tick loop polls for results and absorbs them
at tick boundaries, so a completion never lands on a tick earlier than the
tick it was requested on. At most one request per purpose is in flight.
"""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass, field
from enum import Enum

from .episodes import TranscriptEntry


class Purpose(str, Enum):
    TOM_INFERENCE = "ToMInference"
    CODE_AS_POLICY = "CodeAsPolicy"
    REFLECTION = "Reflection"
    COMMUNICATION = "Communication"


@dataclass(frozen=True)
class CompletionRequest:
    purpose: Purpose
    prompt: str
    max_tokens: int = 512
    temperature: float = 0.0
    request_tick: int = 0


@dataclass(frozen=True)
class CompletionResult:
    text: str | None
    latency_ms: float = 0.0
    backend: str = "mock"
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


class TranscriptExhausted(RuntimeError):
    pass


class MockBackend:
    """Scripted canned completions, per purpose, cycling when exhausted."""

    name = "mock"

    DEFAULTS = {
        Purpose.TOM_INFERENCE: (
            "Belief: the human tends to stay on the outer ring near the serving "
            "window, usually prepares lettuce, and reacts to orders with short "
            "deadlines first. Plan: I should handle beef and fire safety."
        ),
        Purpose.CODE_AS_POLICY: '{"snippets": [], "priority_order": null}',
        Purpose.REFLECTION: (
            "Keep the pan attended once beef is cooking; plate it immediately "
            "when done."
        ),
        Purpose.COMMUNICATION: "I will handle the beef.",
    }

    def __init__(self, scripts: dict | None = None):
        self.scripts = {Purpose(k): list(v) if isinstance(v, (list, tuple)) else [v]
                        for k, v in (scripts or {}).items()}
        self.cursor: dict[Purpose, int] = {}

    def complete(self, request: CompletionRequest) -> CompletionResult:
        script = self.scripts.get(request.purpose)
        if script:
            i = self.cursor.get(request.purpose, 0)
            text = script[min(i, len(script) - 1)]
            self.cursor[request.purpose] = i + 1
        else:
            text = self.DEFAULTS[request.purpose]
        return CompletionResult(text=text, backend=self.name)


class ReplayBackend:
    """Replays a recorded transcript keyed by (purpose, sequence number)."""

    name = "replay"

    def __init__(self, transcript: list[TranscriptEntry]):
        self.by_purpose: dict[str, list[TranscriptEntry]] = {}
        for entry in transcript:
            self.by_purpose.setdefault(entry.purpose, []).append(entry)
        for entries in self.by_purpose.values():
            entries.sort(key=lambda e: e.seq)
        self.cursor: dict[str, int] = {}

    def complete(self, request: CompletionRequest) -> CompletionResult:
        purpose = request.purpose.value
        i = self.cursor.get(purpose, 0)
        entries = self.by_purpose.get(purpose, [])
        if i >= len(entries):
            return CompletionResult(
                text=None, backend=self.name,
                error=f"transcript exhausted at index {i} for {purpose}",
            )
        self.cursor[purpose] = i + 1
        entry = entries[i]
        if entry.error:
            return CompletionResult(text=None, backend=self.name, error=entry.error)
        return CompletionResult(text=entry.response, backend=self.name)


class LiveBackend:
    """OpenAI-style chat completion endpoint over HTTP."""

    name = "live"

    def __init__(self, base_url: str = "https://api.openai.com/v1",
                 model: str = "gpt-4o-mini", api_key_env: str = "COOPKITCHEN_API_KEY",
                 timeout_s: float = 10.0):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.api_key = os.environ.get(api_key_env, "")
        self.timeout_s = timeout_s

    def complete(self, request: CompletionRequest) -> CompletionResult:
        import requests

        started = time.monotonic()
        try:
            resp = requests.post(
                f"{self.base_url}/chat/completions",
                headers={"Authorization": f"Bearer {self.api_key}"},
                json={
                    "model": self.model,
                    "messages": [{"role": "user", "content": request.prompt}],
                    "max_tokens": request.max_tokens,
                    "temperature": request.temperature,
                },
                timeout=self.timeout_s,
            )
            resp.raise_for_status()
            text = resp.json()["choices"][0]["message"]["content"]
            latency = (time.monotonic() - started) * 1000.0
            return CompletionResult(text=text, latency_ms=latency, backend=self.name)
        except Exception as exc:  # timeouts, HTTP and schema errors alike
            latency = (time.monotonic() - started) * 1000.0
            return CompletionResult(text=None, latency_ms=latency, backend=self.name,
                                    error=str(exc))


@dataclass
class _Pending:
    request: CompletionRequest
    result: CompletionResult | None = None
    thread: threading.Thread | None = None


class Gateway:
    """Submit/poll façade over a backend, recording a transcript as it goes."""

    def __init__(self, backend, threaded: bool | None = None):
        self.backend = backend
        # only the live backend pays real latency; mock/replay resolve inline
        self.threaded = threaded if threaded is not None else backend.name == "live"
        self.transcript: list[TranscriptEntry] = []
        self._seq: dict[str, int] = {}
        self._pending: dict[Purpose, _Pending] = {}
        self._lock = threading.Lock()

    def busy(self, purpose: Purpose) -> bool:
        return purpose in self._pending

    def submit(self, request: CompletionRequest) -> bool:
        """Start a request; False when one is already in flight for the purpose."""
        if self.busy(request.purpose):
            return False
        pending = _Pending(request=request)
        self._pending[request.purpose] = pending
        if self.threaded:
            def run():
                result = self.backend.complete(request)
                with self._lock:
                    pending.result = result

            pending.thread = threading.Thread(target=run, daemon=True)
            pending.thread.start()
        else:
            pending.result = self.backend.complete(request)
        return True

    def poll(self, purpose: Purpose) -> CompletionResult | None:
        """Completed result for the purpose, if any; records the transcript."""
        pending = self._pending.get(purpose)
        if pending is None:
            return None
        with self._lock:
            result = pending.result
        if result is None:
            return None
        del self._pending[purpose]
        seq = self._seq.get(purpose.value, 0)
        self._seq[purpose.value] = seq + 1
        self.transcript.append(TranscriptEntry(
            seq=seq,
            purpose=purpose.value,
            tick=pending.request.request_tick,
            request=pending.request.prompt,
            response=result.text,
            error=result.error,
            latency_ms=result.latency_ms,
        ))
        return result

    def complete(self, request: CompletionRequest) -> CompletionResult:
        """Blocking submit+poll; for tests and offline tools, not the tick loop."""
        if not self.submit(request):
            return CompletionResult(text=None, backend=self.backend.name,
                                    error=f"request already in flight for {request.purpose}")
        while True:
            result = self.poll(request.purpose)
            if result is not None:
                return result
            time.sleep(0.005)


def make_backend(mode: str, *, mock_scripts=None, transcript=None, live_config=None):
    if mode == "mock":
        return MockBackend(mock_scripts)
    if mode == "replay":
        return ReplayBackend(transcript or [])
    if mode == "live":
        return LiveBackend(**(live_config or {}))
    raise ValueError(f"unknown backend mode {mode!r}")
