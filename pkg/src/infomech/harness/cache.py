"""Content-addressed response cache: one JSON file per entry.

Keys are cryptographic hashes of the request identity, entries are immutable
once written, and writes go through a temp file plus atomic rename so
concurrent writers cannot corrupt each other.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from pathlib import Path


class ResponseCache:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def make_key(
        template_id: str,
        left_text: str,
        right_text: str,
        model: str,
        direction: str,
    ) -> str:
        identity = json.dumps(
            {
                "template_id": template_id,
                "left": left_text,
                "right": right_text,
                "model": model,
                "direction": direction,
            },
            sort_keys=True,
            ensure_ascii=True,
        )
        return hashlib.sha256(identity.encode("utf-8")).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str) -> dict | None:
        path = self._path(key)
        if not path.exists():
            return None
        with path.open(encoding="utf-8") as fh:
            entry = json.load(fh)
        return entry["value"]

    def put(self, key: str, value: dict) -> None:
        path = self._path(key)
        if path.exists():
            return  # entries are immutable
        path.parent.mkdir(parents=True, exist_ok=True)
        entry = {"key": key, "value": value, "timestamp": time.time()}
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
