"""
Cache layer implementation
"""
from collections import OrderedDict
from typing import Any, Callable, Hashable, Optional, Tuple
import threading
import logging

from app.core.config import settings

logger = logging.getLogger(__name__)


class InMemoryCache:
    """Bounded, lock-protected in-memory cache for values derived from immutable relations"""

    def __init__(self, max_entries: int = 256):
        self._cache: "OrderedDict[Hashable, Any]" = OrderedDict()
        self.max_entries = max_entries
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable) -> Optional[Any]:
        """Get value from cache"""
        if not settings.CACHE_ENABLED:
            return None

        with self._lock:
            if key in self._cache:
                self._cache.move_to_end(key)
                self.hits += 1
                return self._cache[key]
            self.misses += 1
            return None

    def set(self, key: Hashable, value: Any) -> None:
        """Set value in cache, evicting the least recently used entry when full"""
        if not settings.CACHE_ENABLED:
            return

        with self._lock:
            self._cache[key] = value
            self._cache.move_to_end(key)
            while len(self._cache) > self.max_entries:
                self._cache.popitem(last=False)

    def delete(self, key: Hashable) -> None:
        with self._lock:
            self._cache.pop(key, None)

    def clear(self) -> None:
        """Clear all cache"""
        with self._lock:
            self._cache.clear()
            self.hits = 0
            self.misses = 0

    def __len__(self) -> int:
        return len(self._cache)

    def get_or_set(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Get value from cache or compute and cache it"""
        value = self.get(key)
        if value is not None:
            return value

        value = compute()
        self.set(key, value)
        return value


cache = InMemoryCache(max_entries=settings.CACHE_MAX_ENTRIES)


def cache_key(prefix: str, *args: Hashable) -> Tuple[Hashable, ...]:
    """Generate cache key helper"""
    return (prefix, *args)
