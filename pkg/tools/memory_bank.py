"""
Memory Bank - bounded in-memory cache for decision verdicts.
Shared by the engines so repeated consistency queries during a Lindenbaum
run are decided once.
"""

import logging
import threading
from collections import OrderedDict
from typing import Any, Dict, Hashable, Optional

logger = logging.getLogger(__name__)


class MemoryBank:
    """
    Least-recently-used store keyed by (namespace, key).

    Features:
    - Size bound with LRU eviction
    - Namespace support
    - Access statistics
    - Safe to share between threads
    """

    def __init__(self, max_entries: int = 4096):
        self.max_entries = max_entries
        self._store: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0
        self._evictions = 0

    def get(self, namespace: str, key: Hashable) -> Optional[Any]:
        """Retrieve a value, returning None if missing."""
        slot = (namespace, key)
        with self._lock:
            value = self._store.get(slot)
            if value is None:
                self._misses += 1
                return None
            self._store.move_to_end(slot)
            self._hits += 1
            return value

    def set(self, namespace: str, key: Hashable, value: Any) -> None:
        slot = (namespace, key)
        with self._lock:
            self._store[slot] = value
            self._store.move_to_end(slot)
            if len(self._store) > self.max_entries:
                evicted, _ = self._store.popitem(last=False)
                self._evictions += 1
                logger.debug(f"Evicted: {evicted[0]}")

    def clear(self) -> None:
        with self._lock:
            self._store.clear()

    def stats(self) -> Dict[str, Any]:
        with self._lock:
            total = self._hits + self._misses
            return {
                "total_keys": len(self._store),
                "cache_hits": self._hits,
                "cache_misses": self._misses,
                "evictions": self._evictions,
                "hit_rate": round(self._hits / total * 100, 1) if total > 0 else 0,
            }
