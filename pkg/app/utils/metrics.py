"""
Construction metrics for monitoring
"""
from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, generate_latest
from functools import wraps
import time
from typing import Callable

from app.core.config import settings

registry = CollectorRegistry()

morphism_applications_total = Counter(
    'subop_morphism_applications_total',
    'Total applications of each relation morphism',
    ['morphism'],
    registry=registry,
)

iteration_duration = Histogram(
    'subop_iteration_duration_seconds',
    'Duration of one construction step in seconds',
    registry=registry,
)

carrier_size = Gauge(
    'subop_carrier_size',
    'Carrier size of the most recently constructed relation',
    registry=registry,
)

oracle_queries_total = Counter(
    'subop_oracle_queries_total',
    'Total subtyping queries answered by the containment oracle',
    registry=registry,
)


def count_application(morphism: str) -> Callable:
    """Decorator counting applications of a morphism"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            if settings.METRICS_ENABLED:
                morphism_applications_total.labels(morphism=morphism).inc()
            return func(*args, **kwargs)

        return wrapper

    return decorator


def track_duration(histogram: Histogram) -> Callable:
    """Decorator observing the wall-clock duration of each call"""
    def decorator(func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                if settings.METRICS_ENABLED:
                    histogram.observe(time.perf_counter() - start_time)

        return wrapper

    return decorator


def exposition() -> str:
    """Metrics in the Prometheus text exposition format"""
    return generate_latest(registry).decode("utf-8")
