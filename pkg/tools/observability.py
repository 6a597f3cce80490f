"""
Observability Layer - span tracing and per-operation timings for the engines.
"""

import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class Span:
    """A single traced engine operation."""

    def __init__(self, name: str, service: str):
        self.name = name
        self.service = service
        self.start_time = time.perf_counter()
        self.end_time: Optional[float] = None
        self.attributes: Dict[str, Any] = {}
        self.status = "ok"
        self.error: Optional[str] = None

    def set_attribute(self, key: str, value: Any) -> None:
        self.attributes[key] = value

    def set_error(self, error: str) -> None:
        self.status = "error"
        self.error = error

    def finish(self) -> None:
        self.end_time = time.perf_counter()

    @property
    def duration_ms(self) -> float:
        end = self.end_time or time.perf_counter()
        return round((end - self.start_time) * 1000, 3)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "service": self.service,
            "duration_ms": self.duration_ms,
            "status": self.status,
            "attributes": self.attributes,
            "error": self.error,
        }


class ObservabilityLayer:
    """
    Lightweight tracing for the decision, proof and consistency engines.
    Keeps the last `max_spans` spans and aggregate timings per operation.
    """

    def __init__(self, service_name: str, max_spans: int = 256):
        self.service_name = service_name
        self.max_spans = max_spans
        self._spans: List[Span] = []
        self._metrics: Dict[str, List[float]] = {}
        self._error_count = 0

    @contextmanager
    def trace(self, operation_name: str):
        span = Span(name=operation_name, service=self.service_name)
        try:
            yield span
        except Exception as e:
            span.set_error(str(e))
            self._error_count += 1
            logger.warning(f"[{self.service_name}] {operation_name} failed: {e}")
            raise
        finally:
            span.finish()
            self._spans.append(span)
            del self._spans[:-self.max_spans]
            self._metrics.setdefault(operation_name, []).append(span.duration_ms)
            logger.debug(f"[{self.service_name}] {operation_name} {span.duration_ms}ms {span.attributes}")

    def get_metrics(self) -> Dict[str, Any]:
        summary = {}
        for op, durations in self._metrics.items():
            summary[op] = {
                "count": len(durations),
                "avg_ms": round(sum(durations) / len(durations), 3),
                "max_ms": round(max(durations), 3),
                "total_ms": round(sum(durations), 3),
            }
        return {
            "service": self.service_name,
            "operations": summary,
            "total_spans": sum(len(d) for d in self._metrics.values()),
            "error_count": self._error_count,
        }

    def get_recent_spans(self, limit: int = 10) -> List[Dict[str, Any]]:
        return [s.to_dict() for s in self._spans[-limit:]]
