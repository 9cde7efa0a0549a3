"""Optional on-disk result cache keyed by (version, command, parameters)."""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from filelock import FileLock

ENV_VAR = "HOLMAPS_CACHE_DIR"


def cache_key(version: str, command: str, params: dict) -> str:
    blob = json.dumps([version, command, params], sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    """Stores serialized documents as ``<key>.json``; writers take an exclusive file lock."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls, override: str | None = None) -> "ResultCache | None":
        path = override or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def get(self, key: str) -> str | None:
        path = self._path(key)
        with FileLock(str(path) + ".lock"):
            if path.exists():
                return path.read_text()
        return None

    def put(self, key: str, text: str) -> None:
        path = self._path(key)
        with FileLock(str(path) + ".lock"):
            tmp = path.with_suffix(".tmp")
            tmp.write_text(text)
            tmp.replace(path)

    def get_or_compute(self, key: str, compute) -> str:
        hit = self.get(key)
        if hit is not None:
            return hit
        text = compute()
        self.put(key, text)
        return text
