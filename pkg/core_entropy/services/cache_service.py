"""
In-memory cache for exact results shared across scans and sweeps
"""

import hashlib
import threading
from collections import OrderedDict
from typing import Any, Callable, Dict, Optional

import structlog

from core_entropy.core.config import settings

logger = structlog.get_logger(__name__)


class CacheService:
    """Bounded in-memory cache; the oldest entries are evicted first"""

    def __init__(self, max_size: Optional[int] = None):
        self.max_size = max_size or settings.CACHE_MAX_SIZE
        self.memory_cache: "OrderedDict[str, Dict[str, Any]]" = OrderedDict()
        self._lock = threading.RLock()

    def _generate_key(self, prefix: str, *args) -> str:
        """Generate cache key from prefix and arguments"""
        key_parts = [prefix] + [str(arg) for arg in args]
        key_string = ":".join(key_parts)
        return f"{prefix}:{hashlib.md5(key_string.encode()).hexdigest()}"

    def get(self, prefix: str, *args) -> Optional[Any]:
        """Get value from cache"""
        key = self._generate_key(prefix, *args)
        with self._lock:
            entry = self.memory_cache.get(key)
            return None if entry is None else entry["value"]

    def set(self, prefix: str, value: Any, *args) -> bool:
        """Set value in cache"""
        key = self._generate_key(prefix, *args)
        with self._lock:
            self.memory_cache[key] = {"value": value}
            self.memory_cache.move_to_end(key)
            while len(self.memory_cache) > self.max_size:
                self.memory_cache.popitem(last=False)
        return True

    def clear_pattern(self, pattern: str) -> int:
        """Clear all keys matching pattern"""
        needle = pattern.replace("*", "")
        with self._lock:
            keys_to_delete = [key for key in self.memory_cache if needle in key]
            for key in keys_to_delete:
                del self.memory_cache[key]
        if keys_to_delete:
            logger.debug("cache cleared", pattern=pattern, deleted=len(keys_to_delete))
        return len(keys_to_delete)

    def get_or_set(self, prefix: str, getter_func: Callable[[], Any], *args) -> Any:
        """Get from cache or set using getter function"""
        cached_value = self.get(prefix, *args)

        if cached_value is not None:
            return cached_value

        # computed outside the lock; a concurrent duplicate is harmless
        fresh_value = getter_func()
        self.set(prefix, fresh_value, *args)

        return fresh_value


# Cache prefixes for different result types
class CachePrefixes:
    """Cache key prefixes"""
    ENTROPY = "entropy"


# Global cache service instance
cache_service = CacheService()
