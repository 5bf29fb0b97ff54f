import io
import json
import os
import sys
from contextlib import redirect_stdout
from pathlib import Path

import pytest

from gamma2cat.cli import (
    FixtureDocument,
    FixtureError,
    builtin_document,
    fixtures_dir,
    load,
    resolve_fixture,
    run,
    save,
)
from gamma2cat.monoidal import FIXTURE_BUILDERS, fixture
from gamma2cat.twocat import FiniteTwoCategory


def test_builtin_files_round_trip():
    for name in FIXTURE_BUILDERS:
        path = fixtures_dir() / f"{name}.fx"
        text = path.read_text(encoding="utf-8")
        doc = load(text)
        assert save(doc) == text


def test_builtin_files_match_catalogue():
    for name in FIXTURE_BUILDERS:
        F = fixture(name)
        doc = FixtureDocument()
        if isinstance(F, FiniteTwoCategory):
            doc.categories[name] = F
        else:
            doc.categories[name] = F.base
            doc.permutative[name] = F
        assert save(doc) == (fixtures_dir() / f"{name}.fx").read_text(encoding="utf-8")


def test_gamma_truncation_export_import(f2_gamma2, tmp_path):
    doc = FixtureDocument()
    doc.gammas["KoF2"] = f2_gamma2
    path = tmp_path / "kof2.fx"
    text = save(doc, path)
    doc2 = load(path)
    assert "KoF2" in doc2.gammas
    loaded = doc2.gammas["KoF2"]
    assert loaded.cap == 2
    for m in range(3):
        assert loaded.level(m).counts() == f2_gamma2.level(m).counts()
    # canonical serialization agrees after the round trip
    doc3 = FixtureDocument()
    doc3.categories.update(doc2.categories)
    doc3.gammas["KoF2"] = loaded
    assert save(doc3) == text


def test_corrupt_reference_reported_with_line(tmp_path):
    path = fixtures_dir() / "F2.fx"
    lines = path.read_text(encoding="utf-8").splitlines()
    idx = next(i for i, l in enumerate(lines) if l.startswith("one "))
    parts = lines[idx].split()
    parts[2] = "missing"
    lines[idx] = " ".join(parts)
    bad = tmp_path / "bad.fx"
    bad.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(FixtureError) as err:
        load(bad)
    assert err.value.line is not None


def _capture(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = run(argv)
    return code, buf.getvalue()


def test_exit_code_zero_on_pass():
    code, out = _capture(["validate", "--fixture", "F2"])
    assert code == 0
    assert "result: pass" in out


def test_exit_code_one_on_failing_check(tmp_path):
    # an invalid 2-category: break an associativity entry but keep typing
    text = (fixtures_dir() / "F3.fx").read_text(encoding="utf-8")
    lines = text.splitlines()
    out_lines = []
    swapped = False
    for l in lines:
        if not swapped and l.startswith("vcomp a1 a1 "):
            out_lines.append("vcomp a1 a1 a1")
            swapped = True
        else:
            out_lines.append(l)
    assert swapped
    bad = tmp_path / "brokenF3.fx"
    bad.write_text("\n".join(out_lines) + "\n", encoding="utf-8")
    # the validate command judges the file itself: a failing check, exit 1
    code, out = _capture(["validate", "--fixture", "F3", "--file", str(bad)])
    assert code == 1
    assert "FAIL" in out
    # other commands refuse invalid inputs as usage errors
    code2, _ = _capture(["ko", "--fixture", "F3", "--file", str(bad), "--level", "1"])
    assert code2 == 2


def test_exit_code_two_on_unknown_fixture(capsys):
    assert run(["validate", "--fixture", "NOPE"]) == 2


def test_exit_code_three_on_resource_ceiling(monkeypatch):
    monkeypatch.setenv("GAMMA2CAT_CELL_CEILING", "3")
    assert run(["ko", "--fixture", "F5", "--level", "2"]) == 3


def test_reports_byte_deterministic():
    code1, out1 = _capture(["segal", "--fixture", "F2", "--max", "2", "--format", "json"])
    code2, out2 = _capture(["segal", "--fixture", "F2", "--max", "2", "--format", "json"])
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["result"] == "pass"
    assert {c["name"] for c in payload["checks"]} == {"diagram-valid", "segal-2"}


def test_ko_command_counts():
    code, out = _capture(["ko", "--fixture", "F1", "--level", "3", "--format", "json"])
    assert code == 0
    assert json.loads(out)["counters"]["objects"] == 1


def test_triangle_commands():
    code, _ = _capture(["triangle-k", "--fixture", "F2", "--max", "2"])
    assert code == 0
    code, _ = _capture(["triangle-p", "--fixture", "F2", "--max-len", "2", "--max-entry", "2"])
    assert code == 0
