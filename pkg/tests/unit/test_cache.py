import json

import pytest

from ykh.cache import ResultCache, canonical_key
from ykh.schemas import InvariantReport


def _report(name="trefoil", value="(1)"):
    return InvariantReport(name=name, kind="theta", d=2, D=[0], components=1, epsilon=3, strands=2, value=value, parity=0)


@pytest.fixture
def cache(tmp_path):
    return ResultCache(tmp_path / "cache")


def test_canonical_key():
    assert canonical_key("n=2; s1^3", "theta", 3, [2, 0]) == "n=2; s1^3|theta|3|0,2"
    assert canonical_key("n=1;", "m", 3, None) == "n=1;|m|3|-"


def test_miss_then_hit(cache):
    key = canonical_key("n=2; s1^3", "theta", 2, [0])
    assert cache.get(key) is None
    cache.put(key, _report())
    assert cache.get(key) == _report()


def test_layout(cache):
    key = canonical_key("n=2; s1^3", "theta", 2, [0])
    path = cache.put(key, _report())
    assert path.parent.parent == cache.directory
    assert len(path.parent.name) == 2
    assert path.stem.startswith(path.parent.name)
    record = json.loads(path.read_text(encoding="utf-8"))
    assert record["key"] == key
    assert record["version"] == cache.version
    assert not list(path.parent.glob(".tmp-*"))


def test_other_version_is_ignored(tmp_path):
    key = canonical_key("n=2; s1^3", "theta", 2, [0])
    ResultCache(tmp_path, version="0.0.1").put(key, _report())
    assert ResultCache(tmp_path, version="0.0.2").get(key) is None


@pytest.mark.parametrize("content", ["not json", "[1, 2]", '{"key": "other", "version": "0.1.0", "report": {}}'])
def test_corrupt_record_is_removed(cache, content):
    key = canonical_key("n=2; s1^3", "theta", 2, [0])
    path = cache.path_for(key)
    path.parent.mkdir(parents=True)
    path.write_text(content, encoding="utf-8")
    assert cache.get(key) is None
    assert not path.exists()


def test_invalid_report_is_removed(cache):
    key = canonical_key("n=2; s1^3", "theta", 2, [0])
    path = cache.path_for(key)
    path.parent.mkdir(parents=True)
    path.write_text(json.dumps({"key": key, "version": cache.version, "report": {"name": "x"}}), encoding="utf-8")
    assert cache.get(key) is None
    assert not path.exists()


def test_get_or_compute(cache):
    key = canonical_key("n=2; s1^3", "theta", 2, [0])
    calls = []

    def compute():
        calls.append(1)
        return _report()

    first = cache.get_or_compute(key, compute)
    second = cache.get_or_compute(key, compute, name="3_1")
    assert len(calls) == 1
    assert first.name == "trefoil"
    assert second.name == "3_1"
    assert second.value == first.value
    assert cache.get(key).name == "trefoil"


def test_clear(cache):
    assert cache.clear() == 0
    for d in (2, 3, 4):
        cache.put(canonical_key("n=2; s1^3", "theta", d, [0]), _report())
    assert cache.clear() == 3
    assert cache.get(canonical_key("n=2; s1^3", "theta", 2, [0])) is None
