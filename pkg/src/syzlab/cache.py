"""Content-addressed on-disk cache with atomic writes.

Keys are canonical-JSON documents hashed with SHA-256; entries are written
via a temp file and os.replace, so concurrent writers of the same key leave
exactly one intact winner. A format-version mismatch or a corrupted entry
is a miss (the latter is deleted).
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

from . import FORMAT_VERSION


def content_hash(obj) -> str:
    canon = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


class Cache:
    def __init__(self, directory: str):
        self.directory = directory
        try:
            os.makedirs(directory, exist_ok=True)
        except OSError as exc:
            raise OSError(f"cannot create cache directory {directory}: {exc}") from exc

    def _path(self, key_obj) -> str:
        return os.path.join(self.directory, content_hash(key_obj) + ".json")

    def get(self, key_obj):
        path = self._path(key_obj)
        try:
            with open(path, "r", encoding="utf-8") as fh:
                entry = json.load(fh)
        except FileNotFoundError:
            return None
        except (json.JSONDecodeError, UnicodeDecodeError, OSError):
            try:
                os.unlink(path)
            except OSError:
                pass
            return None
        if not isinstance(entry, dict) or entry.get("format_version") != FORMAT_VERSION:
            return None
        return entry.get("payload")

    def put(self, key_obj, payload) -> None:
        path = self._path(key_obj)
        entry = {"format_version": FORMAT_VERSION, "key": key_obj, "payload": payload}
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, path)
        except OSError as exc:
            raise OSError(f"cache write failed for {path}: {exc}") from exc
