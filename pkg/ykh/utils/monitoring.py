"""Monitoring utilities."""

import time
from contextlib import contextmanager

from prometheus_client import REGISTRY, Counter, Histogram, generate_latest

# Metrics
QUADRATIC_REWRITES = Counter("ykh_quadratic_rewrites_total", "Quadratic relation firings during normal-form reduction")

TRACE_PEELS = Counter("ykh_trace_peels_total", "Trace reduction steps by case", ["case"])

TRACE_CACHE_HITS = Counter("ykh_trace_cache_hits_total", "Memoized trace lookups answered from the cache")

TRACE_DURATION = Histogram(
    "ykh_trace_duration_seconds",
    "Trace computation duration in seconds",
    ["strategy", "status"],
)

CACHE_LOOKUPS = Counter("ykh_cache_lookups_total", "Result cache lookups", ["result"])


@contextmanager
def track_trace_computation(strategy: str):
    """Track trace computation metrics."""
    start_time = time.perf_counter()
    try:
        yield
        TRACE_DURATION.labels(strategy=strategy, status="success").observe(time.perf_counter() - start_time)
    except Exception as e:
        TRACE_DURATION.labels(strategy=strategy, status="failure").observe(time.perf_counter() - start_time)
        raise e


def record_cache_lookup(hit: bool):
    """Record result cache lookup metrics."""
    CACHE_LOOKUPS.labels(result="hit" if hit else "miss").inc()


def exposition() -> str:
    """Render the default registry in the Prometheus text format."""
    return generate_latest(REGISTRY).decode("utf-8")
