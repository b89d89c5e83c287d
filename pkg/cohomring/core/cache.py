from collections import OrderedDict
from typing import Callable, Generic, Hashable, Optional, TypeVar
import threading

V = TypeVar("V")


class LRUCache(Generic[V]):
    """Thread-safe mapping that drops the least recently used entry past maxsize."""

    def __init__(self, maxsize: int):
        self.maxsize = max(1, maxsize)
        self._data: "OrderedDict[Hashable, V]" = OrderedDict()
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._data

    def get(self, key: Hashable) -> Optional[V]:
        with self._lock:
            value = self._data.get(key)
            if value is not None:
                self._data.move_to_end(key)
            return value

    def put(self, key: Hashable, value: V) -> V:
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)
            return value

    def get_or_create(self, key: Hashable, factory: Callable[[], V]) -> V:
        with self._lock:
            value = self._data.get(key)
            if value is None:
                value = factory()
                self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.maxsize:
                self._data.popitem(last=False)
            return value

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
