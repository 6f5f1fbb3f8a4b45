"""Throughput and memory sampling for census runs."""

import threading
import time
from typing import Dict, Optional

import psutil


def census_rss() -> int:
    """Resident memory of this process and its worker processes, in bytes."""
    try:
        process = psutil.Process()
        total = process.memory_info().rss
        for child in process.children(recursive=True):
            try:
                total += child.memory_info().rss
            except (psutil.NoSuchProcess, psutil.AccessDenied):
                # workers exit while the pool shuts down
                continue
        return total
    except (psutil.NoSuchProcess, psutil.AccessDenied):
        return 0


class ResourceMonitor:
    """Peak resident memory of a census, worker processes included."""

    def __init__(self, check_interval: float = 1.0):
        """Initialize the resource monitor.

        Args:
            check_interval: Minimum seconds between two samples unless forced
        """
        self._check_interval = check_interval
        self._last_check: Optional[float] = None
        self._last_memory = 0
        self._peak_memory = 0
        self._lock = threading.Lock()

    def check_resources(self, force: bool = False) -> int:
        """Sample memory if the interval has elapsed (or ``force``).

        Returns:
            The latest sampled RSS in bytes
        """
        now = time.monotonic()
        with self._lock:
            due = self._last_check is None or now - self._last_check >= self._check_interval
            if force or due:
                self._last_memory = census_rss()
                self._peak_memory = max(self._peak_memory, self._last_memory)
                self._last_check = now
            return self._last_memory

    @property
    def peak_memory(self) -> int:
        with self._lock:
            return self._peak_memory


class ThroughputMeter:
    """Wall time of a census run and classified records per ``n``.

    Records arrive in task order, so the time since the previous record is
    charged to the ``n`` of the record that just finished.
    """

    def __init__(self) -> None:
        self._start: Optional[float] = None
        self._end: Optional[float] = None
        self._last: Optional[float] = None
        self._counts: Dict[int, int] = {}
        self._seconds: Dict[int, float] = {}

    def start(self) -> None:
        self._start = self._last = time.perf_counter()
        self._end = None

    def stop(self) -> float:
        """Stop the clock; returns elapsed seconds."""
        if self._start is not None and self._end is None:
            self._end = time.perf_counter()
        return self.elapsed

    def record(self, n: int) -> None:
        now = time.perf_counter()
        last = self._last if self._last is not None else now
        self._counts[n] = self._counts.get(n, 0) + 1
        self._seconds[n] = self._seconds.get(n, 0.0) + (now - last)
        self._last = now

    @property
    def elapsed(self) -> float:
        """Elapsed seconds, live while the meter runs."""
        if self._start is None:
            return 0.0
        end = self._end if self._end is not None else time.perf_counter()
        return end - self._start

    @property
    def counts(self) -> Dict[int, int]:
        return dict(sorted(self._counts.items()))

    def rate(self, n: Optional[int] = None) -> float:
        """Records per second for one ``n``, or over the whole run."""
        if n is None:
            count, seconds = sum(self._counts.values()), self.elapsed
        else:
            count, seconds = self._counts.get(n, 0), self._seconds.get(n, 0.0)
        return count / seconds if seconds > 0 else 0.0

    def __enter__(self) -> "ThroughputMeter":
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.stop()


def format_rate(rate: float) -> str:
    """Format a records-per-second rate for display."""
    if rate >= 1_000_000:
        return f"{rate/1_000_000:.1f}M/s"
    elif rate >= 1_000:
        return f"{rate/1_000:.1f}K/s"
    else:
        return f"{rate:.1f}/s"
