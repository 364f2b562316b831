"""Content-addressed on-disk store for computed invariants.

Keys are digests of a canonical JSON request, prefixed with the digest
scheme so that a future change of scheme never collides with old entries.
Writers are serialized with a file lock and publish atomically; readers need
no lock.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Callable, Iterator

from filelock import FileLock

__all__ = ["KEY_PREFIX", "ENV_VAR", "canonical", "request_key", "CacheStore", "default_cache_dir"]

KEY_PREFIX = "v1-sha256-"
ENV_VAR = "RELIT_CACHE_DIR"


def canonical(obj: Any) -> str:
    """Canonical JSON text: sorted keys, no whitespace, ASCII only."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def request_key(request: dict) -> str:
    return KEY_PREFIX + hashlib.sha256(canonical(request).encode("ascii")).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "relit"


class CacheStore:
    """One JSON file per entry holding the request and the result text."""

    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.root.mkdir(parents=True, exist_ok=True)
        self._lock = FileLock(str(self.root / ".write.lock"))

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def get(self, request: dict) -> str | None:
        path = self._path(request_key(request))
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)["result"]
        except (FileNotFoundError, json.JSONDecodeError, KeyError):
            return None

    def put(self, request: dict, result: str) -> str:
        key = request_key(request)
        payload = canonical({"key": key, "request": request, "result": result})
        with self._lock:
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
            os.replace(tmp, self._path(key))
        return key

    def fetch(self, request: dict, compute: Callable[[dict], str]) -> str:
        hit = self.get(request)
        if hit is not None:
            return hit
        result = compute(request)
        self.put(request, result)
        return result

    def entries(self) -> Iterator[tuple[str, dict, str]]:
        for path in sorted(self.root.glob(KEY_PREFIX + "*.json")):
            with open(path, encoding="utf-8") as fh:
                entry = json.load(fh)
            yield entry["key"], entry["request"], entry["result"]

    def verify(self, compute: Callable[[dict], str]) -> list[dict]:
        """Recompute every entry; report keys whose stored text differs."""
        out = []
        for key, request, result in self.entries():
            fresh = compute(request)
            out.append({"key": key, "ok": fresh == result and request_key(request) == key})
        return out

    def clear(self) -> int:
        n = 0
        with self._lock:
            for path in self.root.glob(KEY_PREFIX + "*.json"):
                path.unlink()
                n += 1
        return n
