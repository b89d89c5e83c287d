import threading
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, PrivateAttr

from cohomring.algebra.polynomial import GradedPolynomial
from cohomring.models.group import MatrixGroup


class InvariantRing(BaseModel):
    """Invariants of a MatrixGroup with a per-degree basis cache.

    Cache writes happen under a lock; a racing recomputation of the same
    degree yields the same basis, so readers never see partial entries.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    group: MatrixGroup

    _bases: Dict[int, List[GradedPolynomial]] = PrivateAttr(default_factory=dict)
    _lock: threading.Lock = PrivateAttr(default_factory=threading.Lock)

    @property
    def nvars(self) -> int:
        return self.group.rank

    def cached(self, degree: int) -> Optional[List[GradedPolynomial]]:
        return self._bases.get(degree)

    def store(self, degree: int, basis: List[GradedPolynomial]) -> List[GradedPolynomial]:
        with self._lock:
            return self._bases.setdefault(degree, basis)

    def cached_degrees(self) -> List[int]:
        return sorted(self._bases)
