import json
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from cohomring.core.exceptions import EngineError, GroupCapExceededError, SpecParseError
from cohomring.models.action import ActionSpec, AmbientGroup, Leg, OrbitType, SubgroupDatum
from cohomring.models.spec_file import SpecFile, SubgroupBlock, parse_matrix
from cohomring.services.group_service import group_service
import logging

logger = logging.getLogger(__name__)

SPECS_DIR = Path(__file__).resolve().parent.parent / "specs"


def _position(text: str, offset: int) -> Tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


def locate(text: str, loc: Sequence[Union[str, int]]) -> Optional[Tuple[int, int]]:
    """Line and column of the innermost key of a dotted location, searched in document order."""
    offset = None
    start = 0
    for part in loc:
        if not isinstance(part, str):
            continue
        found = text.find(f'"{part}"', start)
        if found < 0:
            break
        offset = start = found
    if offset is None:
        return None
    return _position(text, offset)


class SpecService:
    def __init__(self):
        self.specs_dir = SPECS_DIR

    def list_bundled(self) -> List[str]:
        return sorted(path.stem for path in self.specs_dir.glob("*.json"))

    def resolve(self, name_or_path: Union[str, Path]) -> Path:
        """A path on disk, or the name of a bundled spec."""
        path = Path(name_or_path)
        if path.exists():
            return path
        bundled = self.specs_dir / f"{path.stem}.json"
        if path.suffix in ("", ".json") and bundled.exists():
            return bundled
        raise SpecParseError(f"spec file not found: {name_or_path}")

    def load(self, name_or_path: Union[str, Path]) -> ActionSpec:
        path = self.resolve(name_or_path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise SpecParseError(f"cannot read {path}: {e}")
        spec = self.parse(text)
        logger.info(f"Loaded spec {spec.name} from {path}")
        return spec

    def parse(self, text: str) -> ActionSpec:
        """Parse a JSON spec document into an ActionSpec, with positioned errors."""
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecParseError(e.msg, line=e.lineno, column=e.colno)

        try:
            raw = SpecFile.model_validate(document)
        except ValidationError as e:
            raise self._schema_error(text, e)

        try:
            return self._build(raw)
        except ValidationError as e:
            raise self._schema_error(text, e)
        except (SpecParseError, GroupCapExceededError):
            raise
        except EngineError as e:
            raise SpecParseError(e.detail)
        except Exception as e:
            logger.error(f"Failed to build spec {raw.name}: {e}")
            raise SpecParseError(f"Failed to build spec: {e}")

    def _schema_error(self, text: str, error: ValidationError) -> SpecParseError:
        first = error.errors()[0]
        loc = tuple(first.get("loc", ()))
        position = locate(text, loc)
        line, column = position if position else (None, None)
        location = ".".join(str(part) for part in loc) or None
        message = first.get("msg", "invalid spec").removeprefix("Value error, ")
        return SpecParseError(message, line=line, column=column, location=location)

    def _subgroup(self, block: SubgroupBlock, where: str) -> SubgroupDatum:
        weyl = block.weyl
        try:
            if weyl.type is not None:
                group = group_service.weyl_standard(weyl.type, weyl.n)
            else:
                group = group_service.close_group(
                    [parse_matrix(g) for g in weyl.generators], rank=block.rank
                )
        except GroupCapExceededError:
            raise
        except EngineError as e:
            raise SpecParseError(e.detail, location=f"{where}.weyl")
        if group.rank != block.rank:
            raise SpecParseError(
                f"Weyl group of {block.name} acts in rank {group.rank}, but rank is {block.rank}",
                location=f"{where}.rank",
            )
        return SubgroupDatum(name=block.name, rank=block.rank, weyl=group)

    def _build(self, raw: SpecFile) -> ActionSpec:
        if raw.orbit == "circle":
            return ActionSpec(
                name=raw.name,
                orbit_type=OrbitType.CIRCLE,
                K=self._subgroup(raw.K, "K"),
                translation_aut=tuple(tuple(row) for row in parse_matrix(raw.translation_aut)),
            )

        def leg(block, where: str) -> Leg:
            return Leg(
                subgroup=self._subgroup(block.subgroup, f"{where}.subgroup"),
                embedding=tuple(tuple(row) for row in parse_matrix(block.embedding)),
                sphere_dimension=block.sphere_dimension,
                orientable=block.orientable,
            )

        ambient = None
        if raw.G is not None:
            ambient = AmbientGroup(
                subgroup=self._subgroup(raw.G.subgroup, "G.subgroup"),
                embedding_minus=tuple(tuple(row) for row in parse_matrix(raw.G.embedding_minus)),
                embedding_plus=tuple(tuple(row) for row in parse_matrix(raw.G.embedding_plus)),
            )
        return ActionSpec(
            name=raw.name,
            orbit_type=OrbitType.INTERVAL,
            H=self._subgroup(raw.H, "H"),
            minus=leg(raw.minus, "minus"),
            plus=leg(raw.plus, "plus"),
            G=ambient,
        )


# Create service instance
spec_service = SpecService()
