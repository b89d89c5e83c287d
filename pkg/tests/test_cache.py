from cohomring.core.cache import LRUCache


def test_least_recently_used_entry_is_dropped():
    cache = LRUCache(2)
    cache.put("a", 1)
    cache.put("b", 2)
    assert cache.get("a") == 1
    cache.put("c", 3)
    assert "b" not in cache
    assert len(cache) == 2
    assert cache.get("a") == 1 and cache.get("c") == 3


def test_get_or_create_builds_once():
    cache = LRUCache(4)
    calls = []

    def build():
        calls.append(1)
        return object()

    first = cache.get_or_create("key", build)
    assert cache.get_or_create("key", build) is first
    assert len(calls) == 1
