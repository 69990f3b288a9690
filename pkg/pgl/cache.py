"""Content-addressed result cache.

Entries live in ``<cache_dir>/<sha256>.json``; the key hashes the canonical
configuration echo together with the library version, and the entry repeats
the version so that records written by another release are ignored.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

from pydantic import BaseModel, Field, ValidationError

from pgl import __version__
from pgl.records import ResultRecord

logger = logging.getLogger(__name__)


class CacheEntry(BaseModel):
    """A stored record.

    :ivar version: Library version that wrote the entry.
    :type version: str
    :ivar record: The cached record.
    :type record: ResultRecord
    """

    version: str = Field(description="Library version that wrote the entry.")
    record: ResultRecord = Field(description="The cached record.")


def cache_key(echo: dict[str, Any], version: str = __version__) -> str:
    payload = json.dumps({"config": echo, "version": version}, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def lookup(cache_dir: Path, key: str, version: str = __version__) -> ResultRecord | None:
    """Return the stored record, or ``None`` on a miss.

    Unreadable entries and entries of another version count as misses.
    """
    path = cache_dir / f"{key}.json"
    if not path.exists():
        return None
    try:
        entry = CacheEntry.model_validate_json(path.read_text())
    except (OSError, ValidationError) as exc:
        logger.warning("ignoring corrupt cache entry %s: %s", path, exc)
        return None
    if entry.version != version:
        logger.info("cache entry %s is from version %s", path.name, entry.version)
        return None
    return entry.record


def store(cache_dir: Path, key: str, record: ResultRecord, version: str = __version__) -> Path:
    """Write the entry to a temporary file and rename it into place."""
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_dir / f"{key}.json"
    entry = CacheEntry(version=version, record=record)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, prefix=".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(entry.model_dump_json())
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def cached(
    cache_dir: Path | None, echo: dict[str, Any], compute: Callable[[], ResultRecord]
) -> tuple[ResultRecord, bool]:
    """Look the configuration up, else compute and store.

    :return: The record and whether it came from the cache.
    """
    if cache_dir is None:
        return compute(), False
    key = cache_key(echo)
    hit = lookup(cache_dir, key)
    if hit is not None:
        logger.debug("cache hit %s", key)
        return hit, True
    record = compute()
    store(cache_dir, key, record)
    return record, False
