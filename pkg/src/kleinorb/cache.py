"""On-disk cache of Gram ranks, one versioned JSON file per (k, i)."""

from __future__ import annotations

import json
import os
import tempfile
import threading
from pathlib import Path

CACHE_VERSION = 1
ENV_VAR = "KLEINORB_CACHE_DIR"


class RankCache:
    """Ranks keyed by (k, i, d, q).

    Reads are served from memory after the first load of a file.  Writes are
    serialized by a lock and land via atomic rename, so concurrent workers
    never observe a half-written file.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self._tables: dict[tuple[int, int], dict[str, int]] = {}
        self._lock = threading.Lock()

    def path(self, k: int, i: int) -> Path:
        return self.directory / f"gram-k{k}-i{i}.json"

    def _table(self, k: int, i: int) -> dict[str, int]:
        key = (k, i)
        if key not in self._tables:
            table: dict[str, int] = {}
            p = self.path(k, i)
            if p.exists():
                try:
                    data = json.loads(p.read_text())
                except (OSError, json.JSONDecodeError):
                    data = {}
                if data.get("version") == CACHE_VERSION and data.get("k") == k and data.get("i") == i:
                    table = {str(kk): int(v) for kk, v in data.get("ranks", {}).items()}
            self._tables[key] = table
        return self._tables[key]

    def get(self, k: int, i: int, d: int, q: int) -> int | None:
        with self._lock:
            return self._table(k, i).get(f"{d},{q}")

    def put(self, k: int, i: int, d: int, q: int, rank: int) -> None:
        with self._lock:
            table = self._table(k, i)
            table[f"{d},{q}"] = rank
            self._write(k, i, table)

    def _write(self, k: int, i: int, table: dict[str, int]) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        payload = {
            "version": CACHE_VERSION,
            "k": k,
            "i": i,
            "ranks": dict(sorted(table.items(), key=lambda kv: tuple(map(int, kv[0].split(","))))),
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".gram-", suffix=".json")
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=1)
        os.replace(tmp, self.path(k, i))


_default: RankCache | None = None
_default_set = False


def default_cache() -> RankCache | None:
    """Cache named by ``$KLEINORB_CACHE_DIR``, or ``None`` when unset."""
    global _default, _default_set
    if not _default_set:
        d = os.environ.get(ENV_VAR)
        _default = RankCache(d) if d else None
        _default_set = True
    return _default


def set_default_cache(cache: RankCache | None) -> None:
    global _default, _default_set
    _default = cache
    _default_set = True
