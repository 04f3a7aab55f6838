"""
Event collection for scenario runs.
"""

from .collector import TelemetryCollector

__all__ = ["TelemetryCollector"]
