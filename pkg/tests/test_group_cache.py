import json
import logging

from reflekt.services.group import GroupKey, get_group
from reflekt.services.group_cache import CACHE_VERSION, cache_roundtrip, load_or_build, purge_stale, save
from reflekt.storage.cache import cache_file, cache_files


def test_roundtrip(cache_dir):
    assert cache_roundtrip(GroupKey(3, 1, 2), cache_dir)
    assert cache_roundtrip(GroupKey(2, 2, 2), cache_dir)
    assert [p.name for p in cache_files(cache_dir)] == ["G_2_2_2.json", "G_3_1_2.json"]


def test_second_load_hits(cache_dir):
    key = GroupKey(3, 1, 2)
    first, hit = load_or_build(key, cache_dir)
    assert not hit
    second, hit = load_or_build(key, cache_dir)
    assert hit
    assert second.same_as(first)
    assert second.order == 18


def test_cache_file_layout(cache_dir):
    path = save(get_group(GroupKey(2, 1, 2)), cache_dir)
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["version"] == CACHE_VERSION
    assert data["key"] == {"r": 2, "p": 1, "n": 2}
    assert data["order"] == 8
    assert len(data["classes"]) == 5
    assert all(set(e) == {"phases", "perm"} for c in data["classes"] for e in c)
    assert not list(cache_dir.glob("*.tmp"))


def test_corrupted_file_regenerates(cache_dir, caplog):
    key = GroupKey(2, 1, 2)
    path = cache_file(key, cache_dir)
    path.write_text("{not json", encoding="utf-8")
    with caplog.at_level(logging.WARNING):
        group, hit = load_or_build(key, cache_dir)
    assert not hit
    assert group.order == 8
    assert "Corrupted cache file" in caplog.text
    assert json.loads(path.read_text(encoding="utf-8"))["version"] == CACHE_VERSION


def test_old_version_regenerates(cache_dir, caplog):
    key = GroupKey(2, 1, 2)
    path = save(get_group(key), cache_dir)
    data = json.loads(path.read_text(encoding="utf-8"))
    data["version"] = CACHE_VERSION - 1
    path.write_text(json.dumps(data), encoding="utf-8")
    with caplog.at_level(logging.WARNING):
        _, hit = load_or_build(key, cache_dir)
    assert not hit
    assert "Stale cache file" in caplog.text
    _, hit = load_or_build(key, cache_dir)
    assert hit


def test_foreign_payload_regenerates(cache_dir, caplog):
    source = save(get_group(GroupKey(2, 1, 2)), cache_dir)
    target = cache_file(GroupKey(4, 1, 1), cache_dir)
    target.write_text(source.read_text(encoding="utf-8"), encoding="utf-8")
    with caplog.at_level(logging.WARNING):
        group, hit = load_or_build(GroupKey(4, 1, 1), cache_dir)
    assert not hit
    assert group.key == GroupKey(4, 1, 1)
    assert "does not hold" in caplog.text


def test_purge_stale(cache_dir):
    good = save(get_group(GroupKey(2, 2, 2)), cache_dir)
    stale = save(get_group(GroupKey(2, 1, 2)), cache_dir)
    data = json.loads(stale.read_text(encoding="utf-8"))
    data["version"] = CACHE_VERSION + 1
    stale.write_text(json.dumps(data), encoding="utf-8")
    garbage = cache_file(GroupKey(1, 1, 2), cache_dir)
    garbage.write_text("[]", encoding="utf-8")
    removed = purge_stale(cache_dir)
    assert sorted(removed) == sorted([stale, garbage])
    assert good.exists() and not stale.exists()
    assert purge_stale(cache_dir) == []


def test_roundtrip_rejects_wrong_cached_data(cache_dir, caplog):
    key = GroupKey(2, 1, 2)
    path = save(get_group(key), cache_dir)
    data = json.loads(path.read_text(encoding="utf-8"))
    data["center"] = [data["classes"][0][0]]
    path.write_text(json.dumps(data), encoding="utf-8")
    _, hit = load_or_build(key, cache_dir)
    assert hit
    with caplog.at_level(logging.WARNING):
        assert not cache_roundtrip(key, cache_dir)
    assert "disagrees with a fresh enumeration" in caplog.text
    assert len(json.loads(path.read_text(encoding="utf-8"))["center"]) == 2
    assert cache_roundtrip(key, cache_dir)
