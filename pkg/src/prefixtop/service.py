"""HTTP suggestion service.

Read-only JSON API over one immutable index snapshot: GET /suggest,
GET /healthz, GET /stats.  Handlers grab the current snapshot once per
request; load() builds a replacement off to the side and publishes it with
a single attribute store, so reloads never disturb in-flight queries and
identical requests against the same snapshot are byte-identical.
"""

from __future__ import annotations

import math
import threading
import time
from collections import deque
from dataclasses import asdict, dataclass
from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .core import build_index, top_k
from .ingest import CorpusStats, load_file
from .transform import TransformConfig, build_fuzzy_index, fuzzy_top_k, load_stopwords

# Percentiles are computed over a bounded window of recent calls so a
# long-lived service does not accumulate per-request history forever.
_LATENCY_WINDOW = 4096


@dataclass
class ServiceConfig:
    corpus_path: Optional[str] = None
    host: str = "127.0.0.1"
    port: int = 8080
    default_k: int = 16
    max_k: int = 256
    fuzzy: bool = False
    stopwords_path: Optional[str] = None

    def __post_init__(self):
        # max_k caps per-request work; 256 is the ceiling by design.
        if not 1 <= self.default_k <= self.max_k <= 256:
            raise ValueError(
                f"need 1 <= default_k <= max_k <= 256, got "
                f"default_k={self.default_k} max_k={self.max_k}"
            )


@dataclass(frozen=True)
class _Snapshot:
    index: object
    findex: object
    corpus: CorpusStats


def _percentile(sorted_vals, pct):
    """Nearest-rank percentile; 0 when there are no samples yet."""
    if not sorted_vals:
        return 0
    rank = math.ceil(pct / 100 * len(sorted_vals))
    return sorted_vals[max(rank, 1) - 1]


class SuggestService:
    """Owns the snapshot and the request counters shared by all handlers."""

    def __init__(self, config: ServiceConfig):
        self.config = config
        self._snapshot: Optional[_Snapshot] = None
        self._lock = threading.Lock()
        self._total_requests = 0
        self._suggest_requests = 0
        self._cumulative_us = 0
        self._recent_us: deque[int] = deque(maxlen=_LATENCY_WINDOW)

    @property
    def snapshot(self) -> Optional[_Snapshot]:
        return self._snapshot

    def load(self) -> CorpusStats:
        """Read the corpus, build fresh structures, atomically publish them."""
        cfg = self.config
        entries, stats = load_file(cfg.corpus_path)
        index = build_index(entries)
        findex = None
        if cfg.fuzzy:
            tconfig = (
                TransformConfig(stopwords=load_stopwords(cfg.stopwords_path))
                if cfg.stopwords_path
                else TransformConfig()
            )
            findex = build_fuzzy_index(entries, tconfig)
        self._snapshot = _Snapshot(index, findex, stats)
        return stats

    def bump_total(self):
        with self._lock:
            self._total_requests += 1

    def suggest_payload(self, snap: _Snapshot, q: str, n: Optional[int]) -> dict:
        cfg = self.config
        k = cfg.default_k if n is None else min(n, cfg.max_k)
        needle = q.lower()
        started = time.perf_counter_ns()
        if snap.findex is not None:
            results = fuzzy_top_k(snap.findex, needle, k)
        else:
            results = top_k(snap.index, needle, k)
        elapsed_us = (time.perf_counter_ns() - started) // 1000
        with self._lock:
            self._suggest_requests += 1
            self._cumulative_us += elapsed_us
            self._recent_us.append(elapsed_us)
        return {
            "query": q,
            "count": len(results),
            "suggestions": [{"phrase": s.text, "weight": s.weight} for s in results],
        }

    def stats_payload(self) -> dict:
        with self._lock:
            total = self._total_requests
            suggests = self._suggest_requests
            cumulative = self._cumulative_us
            recent = sorted(self._recent_us)
        snap = self._snapshot
        return {
            "total_requests": total,
            "suggest_requests": suggests,
            "cumulative_suggest_us": cumulative,
            "p50_us": _percentile(recent, 50),
            "p99_us": _percentile(recent, 99),
            "entries": len(snap.index) if snap else 0,
            "corpus": asdict(snap.corpus) if snap else asdict(CorpusStats()),
        }


def create_app(
    config: Optional[ServiceConfig] = None, service: Optional[SuggestService] = None
) -> FastAPI:
    """Wire the routes around a SuggestService.

    The returned app serves 503s until someone calls service.load(); the
    service is reachable as app.state.service.
    """
    if service is None:
        service = SuggestService(config if config is not None else ServiceConfig())
    app = FastAPI(title="prefixtop", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.service = service
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET"], allow_headers=["*"]
    )

    @app.middleware("http")
    async def count_requests(request, call_next):
        service.bump_total()
        return await call_next(request)

    @app.get("/suggest")
    def suggest(q: Optional[str] = None, n: Optional[str] = None):
        if q is None:
            return JSONResponse({"error": "missing parameter q"}, status_code=400)
        count = None
        if n is not None:
            try:
                count = int(n)
            except ValueError:
                return JSONResponse(
                    {"error": "parameter n must be a non-negative integer"},
                    status_code=400,
                )
            if count < 0:
                return JSONResponse(
                    {"error": "parameter n must be a non-negative integer"},
                    status_code=400,
                )
        snap = service.snapshot
        if snap is None:
            return JSONResponse({"error": "index is loading"}, status_code=503)
        return JSONResponse(service.suggest_payload(snap, q, count))

    @app.get("/healthz")
    def healthz():
        snap = service.snapshot
        if snap is None:
            return JSONResponse({"status": "loading"}, status_code=503)
        return {"status": "ok", "entries": len(snap.index)}

    @app.get("/stats")
    def stats():
        return service.stats_payload()

    return app
