import json
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from twodesc import io
from twodesc.catalog import small_groupoids
from twodesc.cli import main
from twodesc.descent import descend

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
sys.path.insert(0, str(FIXTURES))
from make_fixtures import documents  # noqa: E402


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.json")))
def test_fixtures_are_canonical_and_current(name):
    text = (FIXTURES / name).read_text()
    assert io.serialize(io.parse(text)) == text
    assert io.serialize(documents()[name]) == text


def test_descended_document_round_trips():
    d = io.parse((FIXTURES / "bz2_trivial.galois.json").read_text())
    D = descend(d)
    text = io.dumps(io.to_document(D))
    doc = io.loads(text)
    assert set(doc["provenance"]) == {"base", "phi", "under"}
    assert io.serialize(io.from_document(doc)) != text  # provenance is not part of the entity
    assert io.dumps(doc) == text


@given(st.sampled_from(sorted(small_groupoids())))
def test_groupoid_documents_round_trip(name):
    g = small_groupoids()[name]
    text = io.serialize(g)
    assert io.parse(text) == g
    assert io.serialize(io.parse(text)) == text


@pytest.mark.parametrize("mutate,msg", [
    (lambda d: d.update(extra=1), "unknown fields"),
    (lambda d: d.pop("comp"), "missing fields"),
    (lambda d: d.update(kind="monoid"), "unknown or missing kind"),
    (lambda d: d.update(src=[0, "a", 0]), "integers"),
    (lambda d: d.update(provenance={"base": []}), "provenance"),
])
def test_schema_errors(mutate, msg):
    doc = json.loads((FIXTURES / "bz3.json").read_text())
    mutate(doc)
    with pytest.raises(io.ParseError, match=msg):
        io.parse(json.dumps(doc))


def test_nested_kind_is_checked():
    doc = json.loads((FIXTURES / "bz3_inversion.galois.json").read_text())
    doc["gamma"] = doc["groupoid"]
    with pytest.raises(io.ParseError, match="nested"):
        io.parse(json.dumps(doc))


def test_cover_blocks_must_be_in_order():
    doc = json.loads((FIXTURES / "bz3_inversion.cover.json").read_text())
    doc["psi_blocks"][0], doc["psi_blocks"][1] = doc["psi_blocks"][1], doc["psi_blocks"][0]
    with pytest.raises(io.ParseError, match="out of order"):
        io.parse(json.dumps(doc))


# -- command line -------------------------------------------------------------


def test_validate_exit_codes(capsys, tmp_path):
    assert run(capsys, "validate", FIXTURES / "terminal.json")[0] == 0
    doc = json.loads((FIXTURES / "bz3.json").read_text())
    doc["comp"][1][1] = 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", bad)
    assert code == 1 and "associativity" in out
    trunc = tmp_path / "trunc.json"
    trunc.write_text((FIXTURES / "bz3.json").read_text()[:40])
    assert run(capsys, "validate", trunc)[0] == 2
    assert run(capsys, "validate", tmp_path / "missing.json")[0] == 2


@pytest.mark.parametrize("name", ["bz3_inversion.galois.json", "bz3_inversion.cover.json",
                                  "bz3_inversion.action.json", "bz3_inversion.identity.morphism.json",
                                  "bz2_twisted.action.json", "s3.json"])
def test_validate_every_kind(capsys, name):
    assert run(capsys, "validate", FIXTURES / name)[0] == 0


@pytest.mark.parametrize("name,summary", [
    ("bz3_trivial_gamma.galois.json", "1 class, |Aut|=3"),
    ("bz3_inversion.galois.json", "1 class, |Aut|=1"),
    ("bz2_trivial.galois.json", "2 classes, |Aut|=2,2"),
])
def test_descend_summaries(capsys, tmp_path, name, summary):
    out_path = tmp_path / "d.json"
    code, out, _ = run(capsys, "descend", FIXTURES / name, "--out", out_path)
    assert code == 0 and summary in out
    first = out_path.read_text()
    run(capsys, "descend", FIXTURES / name, "--out", out_path)
    assert out_path.read_text() == first
    assert io.load(out_path)[0] == "groupoid"


def test_descend_to_stdout_keeps_report_separate(capsys):
    code, out, err = run(capsys, "descend", FIXTURES / "bz2_trivial.galois.json")
    assert code == 0
    assert io.loads(out)["kind"] == "groupoid"
    assert "2 classes" in err


def test_descend_rejects_invalid(capsys, tmp_path):
    doc = json.loads((FIXTURES / "bz3_inversion.galois.json").read_text())
    doc["psi"][1][1][0] = 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert run(capsys, "descend", bad, "--out", tmp_path / "o.json")[0] == 1


def test_convert_round_trip_is_bit_exact(capsys, tmp_path):
    cover, galois = tmp_path / "c.json", tmp_path / "g.json"
    assert run(capsys, "convert", FIXTURES / "bz3_inversion.cover.json", "--to", "galois",
               "--out", galois)[0] == 0
    assert galois.read_text() == (FIXTURES / "bz3_inversion.galois.json").read_text()
    run(capsys, "convert", galois, "--to", "cover", "--out", cover)
    assert cover.read_text() == (FIXTURES / "bz3_inversion.cover.json").read_text()
    run(capsys, "convert", FIXTURES / "bz3_inversion.action.json", "--to", "galois", "--out", galois)
    assert galois.read_text() == (FIXTURES / "bz3_inversion.galois.json").read_text()


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", FIXTURES / "bz3.json", FIXTURES / "bz3.json")
    assert code == 0 and out.startswith("EQUIVALENT")
    code, out, _ = run(capsys, "equiv", FIXTURES / "bz3.json", FIXTURES / "terminal.json")
    assert code == 1 and "NOT EQUIVALENT" in out
    code, out, _ = run(capsys, "equiv", FIXTURES / "bz3.json", FIXTURES / "bz3.json", "--budget", "2")
    assert code == 3 and "UNDECIDED" in out
    assert run(capsys, "equiv", FIXTURES / "bz3.json", FIXTURES / "z2.json")[0] == 2


def test_roundtrip(capsys):
    code, out, _ = run(capsys, "roundtrip", FIXTURES / "bz3.json", FIXTURES / "z2.json")
    assert code == 0 and out.startswith("EQUIVALENT")


def test_h1(capsys):
    code, out, _ = run(capsys, "h1", FIXTURES / "z2.json", FIXTURES / "z3.json",
                       "--action", "[[0,1,2],[0,2,1]]", "--compare")
    assert code == 0 and "agrees" in out
    code, out, _ = run(capsys, "h1", FIXTURES / "z2.json", FIXTURES / "s3.json", "--report", "machine")
    rep = json.loads(out)
    assert rep["classes"] == 2 and sorted(rep["stabilizer_orders"]) == [2, 6]
    assert run(capsys, "h1", FIXTURES / "z2.json", FIXTURES / "z3.json", "--action", "[[0,1,2]]")[0] == 2
    assert run(capsys, "h1", FIXTURES / "z2.json", FIXTURES / "z3.json",
               "--action", "[[0,1,2],[0,1,1]]")[0] == 1


def test_machine_report(capsys, tmp_path):
    code, out, _ = run(capsys, "descend", FIXTURES / "bz2_trivial.galois.json", "--out",
                       tmp_path / "d.json", "--report", "machine")
    rep = json.loads(out)
    assert rep == {"aut_orders": [2, 2], "classes": 2, "command": "descend", "exit": 0,
                   "morphisms": 4, "objects": 2, "out": str(tmp_path / "d.json"), "status": "pass"}


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--only", "4", "5")
    assert code == 0
    assert [line[:8] for line in out.splitlines()] == ["[PASS] 4", "[PASS] 5"]


def test_module_entry_point():
    import subprocess
    out = subprocess.run([sys.executable, "-m", "twodesc", "validate", str(FIXTURES / "terminal.json")],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "pass" in out.stdout
