import json

import pytest

from cohomring.cli import build_parser
from cohomring.main import main
from cohomring.models.report import MachineReport
from cohomring.services.cohomology_service import S0_REASON
from cohomring.services.spec_service import spec_service

NON_SQUARE = """{
  "name": "non_square",
  "H": {"name": "T", "rank": 2, "weyl": {"generators": [[[1, 0], [0]]]}},
  "minus": {
    "subgroup": {"name": "K", "rank": 2, "weyl": {"type": "trivial", "n": 2}},
    "embedding": [[1, 0], [0, 1]],
    "sphere_dimension": 2
  },
  "plus": {
    "subgroup": {"name": "K", "rank": 2, "weyl": {"type": "trivial", "n": 2}},
    "embedding": [[1, 0], [0, 1]],
    "sphere_dimension": 2
  }
}
"""


def test_parser_defaults():
    args = build_parser().parse_args(["run", "sp2"])
    assert args.format == "text"
    assert args.max_degree is None
    assert not args.verify


def test_run_su3_s7_with_verify(capsys):
    code = main(["run", "su3_s7", "--verify", "--max-degree", "14", "--trials", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "k = 3" in out
    assert "case III" in out
    assert "sphere degree: 7" in out
    assert "verdict: pass" in out


def test_s0_spec_is_rejected(capsys):
    code = main(["run", "so3_rp3", "--max-degree", "8"])
    captured = capsys.readouterr()
    assert code == 3
    assert S0_REASON in captured.err
    assert captured.out == ""


@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("name", spec_service.list_bundled())
def test_bundled_specs_run_at_small_truncations(capsys, name, n):
    code = main(["run", name, "--max-degree", str(n), "--verify", "--trials", "5"])
    captured = capsys.readouterr()
    assert code == (3 if name == "so3_rp3" else 0), captured.err
    if code == 0:
        assert "verdict: pass" in captured.out


def test_malformed_spec_file(tmp_path, capsys):
    path = tmp_path / "non_square.json"
    path.write_text(NON_SQUARE, encoding="utf-8")
    code = main(["run", str(path)])
    err = capsys.readouterr().err
    assert code == 2
    assert "line 3" in err
    assert "not square" in err


def test_missing_spec(capsys):
    assert main(["run", "nowhere.json"]) == 2
    assert "not found" in capsys.readouterr().err


def test_machine_report_is_stable(capsys):
    argv = ["run", "s4_oddodd", "--format", "machine", "--max-degree", "12", "--verify", "--trials", "2"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second

    report = MachineReport.model_validate_json(first)
    assert report.case == "OddOdd"
    assert report.series == ["1", "0", "0", "0", "2", "0", "0", "0", "2", "0", "0", "0", "2"]
    assert report.verification.verdict == "pass"
    assert json.loads(first)["truncation"] == 12


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    assert main(["run", "torus_flip", "--max-degree", "8", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    text = target.read_text(encoding="utf-8")
    assert "case: Circle" in text
    assert "series to degree 8: 1 1 0 0 1 1 0 0 1" in text


def test_list(capsys):
    assert main(["list"]) == 0
    names = capsys.readouterr().out.split()
    assert "su3_s7" in names
    assert len(names) == 11


TORUS_FLIP_REPORT = """{
  "spec": "torus_flip",
  "truncation": 4,
  "case": "Circle",
  "legs_swapped": false,
  "k": null,
  "trichotomy": null,
  "generators": [
    {
      "name": "c1",
      "degree": 4
    },
    {
      "name": "s1",
      "degree": 1
    }
  ],
  "relations": [
    "s1^2 = 0"
  ],
  "sphere_degree": 1,
  "series": [
    "1",
    "1",
    "0",
    "0",
    "1"
  ],
  "verification": null
}
"""


def test_machine_report_matches_schema_doc(capsys):
    assert main(["run", "torus_flip", "--format", "machine", "--max-degree", "4"]) == 0
    assert capsys.readouterr().out == TORUS_FLIP_REPORT


def test_non_square_error_position(tmp_path, capsys):
    path = tmp_path / "non_square.json"
    path.write_text(NON_SQUARE, encoding="utf-8")
    main(["run", str(path)])
    assert "error: line 3, column 42: H.weyl.generators: Weyl generator 0 is not square" in capsys.readouterr().err
