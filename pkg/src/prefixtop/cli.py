"""Command-line front end: serve | query | bench | gen.

bench and gen are deterministic given their seeds so perf numbers and
synthetic corpora can be reproduced bit-for-bit; only wall-clock timings
vary between runs.
"""

from __future__ import annotations

import argparse
import json
import random
import socket
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import uvicorn

try:
    import resource
except ImportError:  # pragma: no cover - non-POSIX platforms
    resource = None

from .core import build_index, top_k
from .ingest import IngestError, load_file
from .service import ServiceConfig, SuggestService, create_app
from .transform import TransformConfig, build_fuzzy_index, fuzzy_top_k, load_stopwords

_GEN_ALPHABET = "abcdefgh"


def gen_corpus(n: int, seed: int):
    """Yield n TSV corpus lines, deterministically from seed.

    Phrases are 5-30 lowercase characters over a small alphabet, built on a
    rank-skewed pool of hot prefixes so candidate ranges share structure the
    way real query logs do; texts never repeat; weights uniform in [0, 10^6].
    """
    rng = random.Random(seed)
    pool = [
        "".join(rng.choice(_GEN_ALPHABET) for _ in range(rng.randint(1, 4)))
        for _ in range(256)
    ]
    seen = set()
    for _ in range(n):
        while True:
            # Quartic skew: low pool ranks dominate, giving hot shared prefixes.
            prefix = pool[int(len(pool) * rng.random() ** 4)]
            total = rng.randint(max(5, len(prefix) + 1), 30)
            text = prefix + "".join(rng.choices(_GEN_ALPHABET, k=total - len(prefix)))
            if text not in seen:
                break
        seen.add(text)
        yield f"{rng.randint(0, 10**6)}\t{text}\n".encode()


@dataclass
class BenchReport:
    corpus_size: int
    k: int
    queries: int
    wall_time_s: float
    qps: float
    p50_us: int
    p95_us: int
    p99_us: int
    peak_rss_bytes: int


def _make_workload(entries, queries: int, seed: int) -> list[str]:
    # Truncating real phrases to 1-6 characters keeps most queries short,
    # which is exactly the regime where candidate ranges get wide.
    rng = random.Random(seed)
    texts = [e.text for e in entries]
    out = []
    for _ in range(queries):
        text = texts[rng.randrange(len(texts))]
        out.append(text[: rng.randint(1, 6)])
    return out


def _timed_queries(index, workload, k) -> list[int]:
    lat = []
    append = lat.append
    clock = time.perf_counter_ns
    for q in workload:
        t0 = clock()
        top_k(index, q, k)
        append(clock() - t0)
    return lat


def _nearest_rank_us(sorted_ns: list[int], pct: float) -> int:
    rank = max(1, -(-pct * len(sorted_ns) // 100))  # ceil without math.ceil
    return sorted_ns[int(rank) - 1] // 1000


def run_bench(entries, k: int, queries: int, seed: int, threads: int = 1) -> BenchReport:
    """Build the index, replay a deterministic workload, report timings.

    Single-threaded by default so qps is comparable across machines; with
    threads > 1 the workload is split across readers sharing one index.
    """
    index = build_index(entries)
    workload = _make_workload(entries, queries, seed)
    for q in workload[:64]:
        top_k(index, q, k)  # warm the compiled kernel before the clock starts

    threads = max(1, threads)
    started = time.perf_counter_ns()
    if threads == 1:
        lats = _timed_queries(index, workload, k)
    else:
        step = (len(workload) + threads - 1) // threads
        chunks = [workload[i : i + step] for i in range(0, len(workload), step)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = pool.map(lambda part: _timed_queries(index, part, k), chunks)
            lats = [x for part in parts for x in part]
    wall_s = (time.perf_counter_ns() - started) / 1e9

    lats.sort()
    rss_bytes = (
        resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024 if resource else 0
    )
    return BenchReport(
        corpus_size=len(entries),
        k=k,
        queries=len(workload),
        wall_time_s=round(wall_s, 6),
        qps=round(len(workload) / wall_s, 2),
        p50_us=_nearest_rank_us(lats, 50),
        p95_us=_nearest_rank_us(lats, 95),
        p99_us=_nearest_rank_us(lats, 99),
        peak_rss_bytes=rss_bytes,
    )


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def cmd_serve(args) -> int:
    config = ServiceConfig(
        corpus_path=args.corpus,
        host=args.host,
        port=args.port,
        default_k=args.k,
        fuzzy=args.fuzzy,
        stopwords_path=args.stopwords,
    )
    service = SuggestService(config)
    try:
        stats = service.load()
    except (IngestError, OSError) as exc:
        return _fail(str(exc))
    print(
        f"loaded {stats.entries_kept} entries "
        f"({stats.duplicates_merged} duplicates merged, "
        f"{stats.malformed_skipped} malformed skipped, {stats.bytes_read} bytes)",
        file=sys.stderr,
    )
    try:
        sock = socket.create_server((config.host, config.port))
    except OSError as exc:
        return _fail(f"cannot listen on {config.host}:{config.port}: {exc}")
    bound_port = sock.getsockname()[1]
    print(f"listening on http://{config.host}:{bound_port}", file=sys.stderr, flush=True)
    app = create_app(service=service)
    uvicorn.Server(uvicorn.Config(app, log_level="warning")).run(sockets=[sock])
    return 0


def cmd_query(args) -> int:
    try:
        entries, _ = load_file(args.corpus)
    except IngestError as exc:
        return _fail(str(exc))
    needle = args.q.lower()
    if args.fuzzy:
        try:
            tconfig = (
                TransformConfig(stopwords=load_stopwords(args.stopwords))
                if args.stopwords
                else TransformConfig()
            )
        except OSError as exc:
            return _fail(str(exc))
        results = fuzzy_top_k(build_fuzzy_index(entries, tconfig), needle, args.k)
    else:
        results = top_k(build_index(entries), needle, args.k)
    for s in results:
        print(f"{s.weight}\t{s.text}")
    return 0


def cmd_bench(args) -> int:
    if args.queries < 1:
        return _fail("--queries must be at least 1")
    try:
        entries, _ = load_file(args.corpus)
    except IngestError as exc:
        return _fail(str(exc))
    if not entries:
        return _fail("corpus is empty, nothing to benchmark")
    report = run_bench(entries, args.k, args.queries, args.seed, args.threads)
    print(json.dumps(asdict(report)))
    return 0


def cmd_gen(args) -> int:
    if args.n < 0:
        return _fail("n must be >= 0")
    out = sys.stdout.buffer
    for line in gen_corpus(args.n, args.seed):
        out.write(line)
    out.flush()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prefixtop",
        description="ranked prefix autocomplete: serve, query, benchmark, or synthesize corpora",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="load a corpus and serve suggestions over HTTP")
    serve.add_argument("--corpus", required=True, help="TSV corpus path")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080, help="0 picks a free port")
    serve.add_argument("--k", type=int, default=16, help="default result count")
    serve.add_argument("--fuzzy", action="store_true", help="serve approximate matches")
    serve.add_argument("--stopwords", default=None, help="stop-word file (one per line)")
    serve.set_defaults(func=cmd_serve)

    query = sub.add_parser("query", help="run one query against a corpus")
    query.add_argument("q", help="query prefix")
    query.add_argument("--corpus", required=True)
    query.add_argument("--k", type=int, default=16)
    query.add_argument("--fuzzy", action="store_true")
    query.add_argument("--stopwords", default=None)
    query.set_defaults(func=cmd_query)

    bench = sub.add_parser("bench", help="time a deterministic query workload")
    bench.add_argument("--corpus", required=True)
    bench.add_argument("--k", type=int, default=32)
    bench.add_argument("--queries", type=int, default=10000)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--threads", type=int, default=1,
                       help="concurrent readers sharing the index")
    bench.set_defaults(func=cmd_bench)

    gen = sub.add_parser("gen", help="write a synthetic TSV corpus to stdout")
    gen.add_argument("n", type=int, help="number of entries")
    gen.add_argument("--seed", type=int, default=0)
    gen.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
