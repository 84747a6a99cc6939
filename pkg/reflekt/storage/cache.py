"""On-disk cache directory: one JSON file per group key."""
from pathlib import Path
from typing import Optional, Union

from reflekt.services.group import GroupKey
from reflekt.settings import settings

CACHE_FILE_GLOB = "G_*_*_*.json"


def cache_root(cache_dir: Optional[Union[str, Path]] = None) -> Path:
    """Resolve the cache directory and make sure it exists."""
    path = Path(settings.cache_dir if cache_dir is None else cache_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cache_file(key: GroupKey, cache_dir: Optional[Union[str, Path]] = None) -> Path:
    return cache_root(cache_dir) / f"G_{key.r}_{key.p}_{key.n}.json"


def cache_files(cache_dir: Optional[Union[str, Path]] = None) -> list[Path]:
    return sorted(cache_root(cache_dir).glob(CACHE_FILE_GLOB))


def write_text_atomic(path: Path, text: str) -> None:
    """Write through a sibling temp file so readers never see a partial payload."""
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)
