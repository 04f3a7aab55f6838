"""
In-memory event log for scenario runs.

Runners record one row per event (a GD checkpoint, a classified fixed point,
a recovery measurement); the CLI turns the rows into CSV tables.
"""

import logging
from collections import defaultdict
from typing import Any

import pandas as pd

logger = logging.getLogger(__name__)


class TelemetryCollector:
    """Collects event rows keyed by event type."""

    def __init__(self):
        self._events: dict[str, list[dict[str, Any]]] = defaultdict(list)

    def log_event(self, event_type: str, data: dict[str, Any]) -> None:
        """Record one event row."""
        self._events[event_type].append(dict(data))
        logger.debug("%s: %s", event_type, data)

    def event_types(self) -> list[str]:
        return list(self._events)

    def records(self, event_type: str) -> list[dict[str, Any]]:
        return list(self._events.get(event_type, []))

    def to_frame(self, event_type: str) -> pd.DataFrame:
        """Rows of one event type as a DataFrame (columns in first-seen order)."""
        return pd.DataFrame.from_records(self.records(event_type))

    def clear(self) -> None:
        self._events.clear()
