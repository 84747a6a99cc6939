"""Load-or-build logic for the on-disk GroupData cache."""
import json
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

from pydantic import ValidationError

from reflekt.errors import ReflektError
from reflekt.schemas.group import GroupCacheFile, GroupPayload
from reflekt.services.group import GroupData, GroupKey, enumerate_group, remember_group
from reflekt.storage.cache import cache_file, cache_files, write_text_atomic

logger = logging.getLogger(__name__)

CACHE_VERSION = 1


def save(group: GroupData, cache_dir: Optional[Union[str, Path]] = None) -> Path:
    """Write ``group`` to its cache file and return the path."""
    path = cache_file(group.key, cache_dir)
    payload = GroupCacheFile(version=CACHE_VERSION, **GroupPayload.from_group(group).model_dump())
    write_text_atomic(path, payload.model_dump_json())
    return path


def _read(path: Path, key: GroupKey) -> Optional[GroupData]:
    """The cached group, or None when the file is missing, stale or unreadable."""
    if not path.exists():
        return None
    try:
        cached = GroupCacheFile.model_validate_json(path.read_text(encoding="utf-8"))
    except (ValidationError, ValueError) as e:
        logger.warning(f"Corrupted cache file {path}, regenerating: {e}")
        return None
    if cached.version != CACHE_VERSION:
        logger.warning(f"Stale cache file {path} (version {cached.version}), regenerating")
        return None
    try:
        group = cached.to_group()
    except ReflektError as e:
        logger.warning(f"Invalid group data in {path}, regenerating: {e}")
        return None
    if group.key != key or group.order != cached.order or group.order != key.order:
        logger.warning(f"Cache file {path} does not hold {key}, regenerating")
        return None
    return group


def load_or_build(
    key: GroupKey,
    cache_dir: Optional[Union[str, Path]] = None,
    budget: Optional[int] = None,
) -> Tuple[GroupData, bool]:
    """
    Return GroupData from the cache or enumerate and store it.

    Returns:
        Tuple of (group, cache_hit)
    """
    path = cache_file(key, cache_dir)
    group = _read(path, key)
    if group is not None:
        logger.info(f"Cache hit for {key}")
        return remember_group(group), True
    logger.info(f"Cache miss for {key}")
    group = enumerate_group(key, budget)
    save(group, cache_dir)
    return remember_group(group), False


def cache_roundtrip(key: GroupKey, cache_dir: Optional[Union[str, Path]] = None) -> bool:
    """Check the cached GroupData against a fresh enumeration, then serialize, reload and compare."""
    fresh = enumerate_group(key)
    path = cache_file(key, cache_dir)
    cached = _read(path, key)
    if cached is not None and not cached.same_as(fresh):
        logger.warning(f"Cache file {path} disagrees with a fresh enumeration of {key}, regenerating")
        save(fresh, cache_dir)
        return False
    path = save(fresh, cache_dir)
    reloaded = _read(path, key)
    return reloaded is not None and reloaded.same_as(fresh)


def purge_stale(cache_dir: Optional[Union[str, Path]] = None) -> list[Path]:
    """Delete cache files whose version differs from CACHE_VERSION or that cannot be read."""
    removed = []
    for path in cache_files(cache_dir):
        try:
            version = json.loads(path.read_text(encoding="utf-8")).get("version")
        except (ValueError, AttributeError):
            version = None
        if version != CACHE_VERSION:
            path.unlink()
            removed.append(path)
            logger.warning(f"Removed stale cache file {path}")
    return removed
