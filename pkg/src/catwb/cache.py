"""Versioned JSON result cache keyed by (kind, parameters).

Cache hits must reproduce computation byte-for-byte, so everything stored is
already in canonical JSON form (sorted keys, compact separators).
"""

from __future__ import annotations

import json
import re
from pathlib import Path

CACHE_VERSION = 1


def _safe(s: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", s)


class ResultCache:
    """Directory-backed cache; a None directory disables persistence."""

    def __init__(self, directory: str | Path | None):
        self.dir = Path(directory) if directory else None

    def path_for(self, kind: str, key: str) -> Path | None:
        if self.dir is None:
            return None
        return self.dir / f"v{CACHE_VERSION}" / _safe(kind) / f"{_safe(key)}.json"

    def get(self, kind: str, key: str):
        path = self.path_for(kind, key)
        if path is None or not path.exists():
            return None
        return json.loads(path.read_text())

    def put(self, kind: str, key: str, obj) -> None:
        path = self.path_for(kind, key)
        if path is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(obj, sort_keys=True, separators=(",", ":")))

    def get_or_compute(self, kind: str, key: str, compute):
        got = self.get(kind, key)
        if got is not None:
            return got
        obj = compute()
        self.put(kind, key, obj)
        return obj
