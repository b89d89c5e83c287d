import json
from fractions import Fraction

import pytest

from cohomring.core.exceptions import SpecParseError
from cohomring.models.action import OrbitType
from cohomring.models.spec_file import parse_entry
from cohomring.services.spec_service import locate, spec_service

SU3_SELF = {
    "name": "su3_self_copy",
    "H": {"name": "U(1)", "rank": 1, "weyl": {"type": "trivial", "n": 1}},
    "minus": {
        "subgroup": {"name": "SU(2)", "rank": 1, "weyl": {"generators": [[["-1"]]]}},
        "embedding": [[1]],
        "sphere_dimension": 2,
    },
    "plus": {
        "subgroup": {"name": "SU(2)", "rank": 1, "weyl": {"generators": [[[-1]]]}},
        "embedding": [["2/2"]],
        "sphere_dimension": 2,
    },
}


def document(**changes):
    doc = json.loads(json.dumps(SU3_SELF))
    for path, value in changes.items():
        target = doc
        keys = path.split("__")
        for key in keys[:-1]:
            target = target[key]
        target[keys[-1]] = value
    return json.dumps(doc, indent=2)


def test_parse_accepts_rational_strings():
    spec = spec_service.parse(document())
    assert spec.orbit_type == OrbitType.INTERVAL
    assert spec.minus.subgroup.weyl.order == 2
    assert spec.plus.embedding == ((Fraction(1),),)


def test_parse_entry():
    assert parse_entry("-1/2") == Fraction(-1, 2)
    assert parse_entry(3) == Fraction(3)
    with pytest.raises(ValueError):
        parse_entry("half")


def test_json_syntax_error_has_position():
    with pytest.raises(SpecParseError) as info:
        spec_service.parse('{"name": "broken",\n  "H": }')
    assert info.value.line == 2
    assert info.value.column == 8
    assert "line 2" in str(info.value)
    assert info.value.exit_code == 2


def test_non_square_weyl_generator():
    text = document(H__weyl={"generators": [[[1, 0], [0]]]})
    with pytest.raises(SpecParseError) as info:
        spec_service.parse(text)
    assert info.value.location == "H.weyl.generators"
    assert "not square" in info.value.detail
    assert info.value.line == locate(text, ("H", "weyl", "generators"))[0]


def test_bad_rational_entry():
    with pytest.raises(SpecParseError) as info:
        spec_service.parse(document(minus__embedding=[["one"]]))
    assert info.value.location == "minus.embedding"
    assert "not a rational number" in info.value.detail


def test_unknown_key_is_rejected():
    with pytest.raises(SpecParseError) as info:
        spec_service.parse(document(minus__colour="red"))
    assert info.value.location == "minus.colour"


def test_weyl_block_needs_one_form():
    with pytest.raises(SpecParseError) as info:
        spec_service.parse(document(H__weyl={"type": "trivial", "n": 1, "generators": []}))
    assert "exactly one" in info.value.detail


def test_rank_mismatch():
    with pytest.raises(SpecParseError) as info:
        spec_service.parse(document(H__rank=2))
    assert info.value.location == "H.rank"


def test_unknown_weyl_type():
    with pytest.raises(SpecParseError) as info:
        spec_service.parse(document(H__weyl={"type": "Z", "n": 1}))
    assert info.value.location == "H.weyl"


def test_circle_spec_needs_translation():
    text = json.dumps({"name": "c", "orbit": "circle", "K": SU3_SELF["H"]})
    with pytest.raises(SpecParseError) as info:
        spec_service.parse(text)
    assert "translation_aut" in info.value.detail


def test_orbit_must_be_known():
    with pytest.raises(SpecParseError) as info:
        spec_service.parse(document(orbit="segment"))
    assert info.value.location == "orbit"


def test_list_bundled():
    names = spec_service.list_bundled()
    assert names == sorted(names)
    assert {"su3_s7", "sp2", "s4_oddodd", "u2_oddeven", "torus_identity"} <= set(names)
    assert len(names) == 11


def test_resolve_missing_spec():
    with pytest.raises(SpecParseError) as info:
        spec_service.resolve("no_such_spec")
    assert "not found" in info.value.detail


def test_load_from_path(tmp_path):
    path = tmp_path / "copy.json"
    path.write_text(document(), encoding="utf-8")
    assert spec_service.load(str(path)).name == "su3_self_copy"


def test_locate():
    text = '{\n  "a": {\n    "b": 1\n  }\n}'
    assert locate(text, ("a", "b")) == (3, 5)
    assert locate(text, ("z",)) is None
