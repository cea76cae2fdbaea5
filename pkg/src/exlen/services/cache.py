"""
Caches for closure results and built artifacts.

Closures are memoised per presentation keyed by (operator, mask); larger
artifacts (enumerations, lattices) are stored under hashed keys so one run
can reuse them across commands and checks.
"""

from typing import Any, Dict, Hashable, Optional, Tuple
import hashlib
import json


class ClosureCache:
    """Memo table for closure operators over bitmask subcategories."""

    def __init__(self):
        self._cache: Dict[Tuple[Hashable, Hashable], Any] = {}
        self.hits = 0
        self.misses = 0

    def get(self, operator: Hashable, key: Hashable) -> Optional[Any]:
        value = self._cache.get((operator, key))
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def set(self, operator: Hashable, key: Hashable, value: Any) -> None:
        self._cache[(operator, key)] = value

    def clear(self) -> None:
        self._cache.clear()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._cache)


class CacheService:
    """In-memory store for enumerations and lattices, keyed by hashed arguments."""

    def __init__(self):
        self._cache: Dict[str, Any] = {}

    def _make_key(self, *args, **kwargs) -> str:
        """md5 of the JSON-encoded arguments."""
        key_data = json.dumps({"args": args, "kwargs": kwargs}, sort_keys=True, default=str)
        return hashlib.md5(key_data.encode()).hexdigest()

    def get_artifact_key(self, artifact: str, digest: str, **options) -> str:
        """Generate cache key for an artifact built from a presentation."""
        return self._make_key(artifact, digest, **options)

    def get(self, key: str) -> Optional[Any]:
        return self._cache.get(key)

    def set(self, key: str, value: Any) -> None:
        self._cache[key] = value

    def clear(self) -> None:
        """Drop every stored artifact."""
        self._cache.clear()

    def __contains__(self, key: str) -> bool:
        return key in self._cache
