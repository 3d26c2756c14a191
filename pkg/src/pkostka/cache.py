"""On-disk cache of command results.

One JSON file per key.  Writes go to a temporary file in the same
directory followed by an atomic rename, so concurrent writers never leave
a half-written entry behind.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass

from . import __version__

ENV_VAR = "PKOSTKA_CACHE_DIR"

log = logging.getLogger(__name__)


@dataclass
class CacheEntry:
    kind: str
    p: int
    args: tuple
    value: object
    version: str = __version__
    seed: int = 0
    timestamp: float = 0.0

    @property
    def key(self) -> str:
        return cache_key(self.kind, self.p, self.args)

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "args": list(self.args), "value": self.value,
                "version": self.version, "seed": self.seed, "timestamp": self.timestamp}

    @classmethod
    def from_json(cls, data: dict) -> "CacheEntry":
        return cls(data["kind"], int(data["p"]), tuple(_freeze(a) for a in data["args"]),
                   data["value"], data["version"], int(data["seed"]), float(data["timestamp"]))


def _freeze(x):
    return tuple(_freeze(y) for y in x) if isinstance(x, list) else x


def cache_key(kind: str, p: int, args) -> str:
    text = json.dumps([kind, p, _thaw(args)], separators=(",", ":"))
    return f"{kind}-p{p}-" + hashlib.sha256(text.encode()).hexdigest()[:24]


def _thaw(x):
    return [_thaw(y) for y in x] if isinstance(x, (list, tuple)) else x


def resolve_dir(flag: str | None = None) -> str | None:
    """Cache directory from the flag, else the environment; None disables caching."""
    return flag or os.environ.get(ENV_VAR) or None


class ResultCache:
    def __init__(self, directory: str | None, version: str = __version__):
        self.version = version
        self.directory = None
        if directory is None:
            return
        try:
            os.makedirs(directory, exist_ok=True)
            probe = tempfile.NamedTemporaryFile(dir=directory, delete=True)
            probe.close()
        except OSError as exc:
            log.warning("cache directory %s is not writable (%s); caching disabled", directory, exc)
            return
        self.directory = directory

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def load(self, kind: str, p: int, args, seed: int = 0):
        """The cached entry, or None on a miss, stale version, seed mismatch or corrupt file."""
        if not self.enabled:
            return None
        path = self._path(cache_key(kind, p, args))
        try:
            with open(path, encoding="utf-8") as fh:
                entry = CacheEntry.from_json(json.load(fh))
        except FileNotFoundError:
            return None
        except (OSError, ValueError, KeyError, TypeError) as exc:
            log.warning("ignoring corrupt cache file %s (%s)", path, exc)
            return None
        if entry.version != self.version or entry.seed != seed:
            return None
        if entry.kind != kind or entry.p != p or entry.args != _freeze(_thaw(args)):
            log.warning("cache file %s belongs to a different query; ignoring", path)
            return None
        return entry

    def store(self, kind: str, p: int, args, value, seed: int = 0) -> CacheEntry | None:
        entry = CacheEntry(kind, p, _freeze(_thaw(args)), value, self.version, seed, time.time())
        if not self.enabled:
            return entry
        path = self._path(entry.key)
        try:
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(entry.to_json(), fh)
            os.replace(tmp, path)
        except OSError as exc:
            log.warning("could not write cache entry %s (%s)", path, exc)
        return entry

    def get_or_compute(self, kind: str, p: int, args, compute, seed: int = 0):
        hit = self.load(kind, p, args, seed)
        if hit is not None:
            return hit.value
        value = compute()
        self.store(kind, p, args, value, seed)
        return value


def write_json_atomic(path: str, data) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
