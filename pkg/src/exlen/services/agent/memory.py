"""
Memory module for storing enumerations and lattices built during a run.
"""

from typing import Any, Optional

from ..cache import CacheService
from ..presentation import CategoryPresentation


class Memory:
    """Artifact memory shared by executors, keyed by presentation content."""

    def __init__(self):
        self.cache_service = CacheService()

    def get_artifact_key(self, artifact: str, presentation: CategoryPresentation, **options) -> str:
        """Generate cache key for an artifact of a presentation."""
        return self.cache_service.get_artifact_key(artifact, presentation.digest, **options)

    def store_artifact(self, key: str, value: Any) -> None:
        self.cache_service.set(key, value)

    def retrieve_artifact(self, key: str) -> Optional[Any]:
        return self.cache_service.get(key)

    def clear(self) -> None:
        self.cache_service.clear()
