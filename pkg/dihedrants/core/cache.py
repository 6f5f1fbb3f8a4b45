"""Thread-safe cache of canonical forms for family candidates."""

from threading import RLock
from typing import Callable, Dict, Hashable, Optional


class FormCache:
    """Canonical forms keyed by family label.

    Recognition compares a graph against freshly built candidates; the
    candidates repeat across a census, so their forms are computed once.
    """

    def __init__(self) -> None:
        self._cache: Dict[Hashable, str] = {}
        self._lock = RLock()

    def get(self, key: Hashable) -> Optional[str]:
        """Get the cached form for ``key``.

        Args:
            key: Family label (or any hashable candidate key)

        Returns:
            The canonical form if cached, None otherwise
        """
        try:
            self._lock.acquire()
            return self._cache.get(key)
        finally:
            self._lock.release()

    def get_or_compute(self, key: Hashable, compute: Callable[[], str]) -> str:
        """Return the cached form, computing and storing it on a miss.

        The lock is not held while ``compute`` runs; two threads missing on
        the same key both compute and the first stored form is kept.
        """
        cached = self.get(key)
        if cached is not None:
            return cached
        form = compute()
        try:
            self._lock.acquire()
            return self._cache.setdefault(key, form)
        finally:
            self._lock.release()

    def __len__(self) -> int:
        try:
            self._lock.acquire()
            return len(self._cache)
        finally:
            self._lock.release()
