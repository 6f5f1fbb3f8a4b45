"""Throughput and memory sampling for census runs."""

from .utils import ResourceMonitor, ThroughputMeter, census_rss, format_rate

__all__ = ["ResourceMonitor", "ThroughputMeter", "census_rss", "format_rate"]
