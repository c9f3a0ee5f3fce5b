import json
import subprocess
import sys

import pytest

from lefcalc.catalog import catalog_get
from lefcalc.cli import main
from lefcalc.join import GridCell, PrimitiveGrid, categorical_join
from lefcalc.jsonio import (
    LadderFormatError,
    dumps_ladder,
    ladder_to_document,
    parse_ladder,
)
from lefcalc.render import render_grid


GR25_DOC = {
    "name": "gr25",
    "ambient_rank": 10,
    "right_primitives": [0, 0, 0, 0, 2],
}


# --- ladder documents -------------------------------------------------------


def test_parse_matches_catalog():
    ladder = parse_ladder(json.dumps(GR25_DOC))
    assert ladder.shape() == catalog_get("gr25").ladder.shape()


def test_parse_mirrors_left_side():
    ladder = parse_ladder(json.dumps(GR25_DOC))
    assert ladder.left_primitives == ladder.right_primitives


def test_parse_rejects_bad_ambient():
    doc = dict(GR25_DOC, ambient_rank=0)
    with pytest.raises(LadderFormatError, match=r"ambient_rank must be >= 1"):
        parse_ladder(json.dumps(doc))


def test_parse_path_addressed_errors():
    doc = dict(GR25_DOC, right_primitives=[0, "x"])
    with pytest.raises(LadderFormatError, match=r"right_primitives\[1\]"):
        parse_ladder(json.dumps(doc))
    with pytest.raises(LadderFormatError, match=r"\$: malformed JSON"):
        parse_ladder(b"{nope")
    with pytest.raises(LadderFormatError, match=r"strong\.right"):
        parse_ladder(json.dumps(dict(GR25_DOC, strong={"right": 1})))


def test_parse_rejects_invalid_invariants():
    doc = dict(GR25_DOC, right_primitives=[2, 0])
    with pytest.raises(LadderFormatError, match="invalid ladder"):
        parse_ladder(json.dumps(doc))


def test_parse_blocks():
    doc = dict(
        GR25_DOC,
        blocks={"4": [{"label": "O", "rank": 1}, {"label": "U^v", "rank": 2}]},
    )
    ladder = parse_ladder(json.dumps(doc))
    assert [b.label for b in ladder.primitive_blocks(4)] == ["O", "U^v"]


def test_round_trip_stability():
    ladder = catalog_get("clifford_p5").ladder
    once = dumps_ladder(parse_ladder(dumps_ladder(ladder)))
    twice = dumps_ladder(parse_ladder(once))
    assert once == twice
    assert parse_ladder(once) == parse_ladder(twice)


def test_document_contains_canonical_fields():
    doc = ladder_to_document(catalog_get("veronese_p2").ladder)
    assert doc["left_primitives"] == [1, 1]
    assert doc["strong"] == {"right": True, "left": True}


# --- renderer ----------------------------------------------------------------


def test_render_veronese_grid():
    v = catalog_get("veronese_p2").ladder
    art = render_grid(categorical_join(v, v))
    assert "i2=0" in art and "i1=1" in art
    assert "j[1]=1" in art and "j[2]=2" in art and "j[3]=1" in art


def test_render_matches_three_by_six_layout():
    a = catalog_get("proj_space(3,7)").ladder
    b = catalog_get("proj_space(6,7)").ladder
    art = render_grid(categorical_join(a, b))
    rows = [line for line in art.splitlines() if line.startswith("i1=")]
    assert len(rows) == 3
    assert art.splitlines()[1].count("i2=") == 6


def test_render_empty_grid():
    art = render_grid(PrimitiveGrid(cells={}, dims=(0, 0)))
    assert "(empty grid)" in art


def test_render_deterministic():
    v = catalog_get("veronese_p2").ladder
    assert render_grid(categorical_join(v, v)) == render_grid(categorical_join(v, v))


def test_render_cell_labels():
    g = catalog_get("gr25").ladder
    art = render_grid(categorical_join(g, g))
    assert "(4,4): O x O, O x U^v, U^v x O, U^v x U^v" in art


# --- command line ------------------------------------------------------------


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_hpd_veronese(capsys):
    code, out, err = run_cli(capsys, "hpd", "@veronese_p2")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["data"]["length"] == 5
    assert report["data"]["heights"] == [2, 2, 2, 2, 1]
    assert report["data"]["left_heights_outermost_first"] == [1, 2, 2, 2, 2]


def test_cli_nonlinear_gr25_pure_equivalence(capsys):
    code, out, _ = run_cli(capsys, "nonlinear", "@gr25", "@gr25", "-r", "10")
    assert code == 0
    report = json.loads(out)
    assert report["data"]["pure_equivalence"] is True
    assert "no tail components" in report["data"]["note"]


def test_cli_immoderate_misuse_is_usage_error(capsys):
    code, out, err = run_cli(capsys, "hpd", "@gr25", "--ambient", "5")
    assert code == 2
    assert "moderate" in err


def test_cli_join_render(capsys):
    code, out, _ = run_cli(capsys, "join", "@gr25", "@gr25", "--render")
    assert code == 0
    report = json.loads(out)
    assert "render" in report["data"]
    assert report["data"]["total_rank"] == 40


def test_cli_validate_bad_ladder(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ambient_rank": 6, "right_primitives": [1, 1], "left_primitives": [1, 2]}))
    code, out, _ = run_cli(capsys, "validate", str(bad))
    assert code == 1
    report = json.loads(out)
    assert report["pass"] is False
    assert any("3 vs 5" in p for p in report["data"]["ladders"][0]["problems"])


def test_cli_validate_catalog_ok(capsys):
    code, out, _ = run_cli(capsys, "validate", "@gr25", "@clifford_p5")
    assert code == 0


def test_cli_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(GR25_DOC)))
    code, out, _ = run_cli(capsys, "validate", "-")
    assert code == 0


def test_cli_check_commute_random(capsys):
    code, out, _ = run_cli(capsys, "check-commute", "--random", "10", "--seed", "3")
    assert code == 0
    report = json.loads(out)
    assert len(report["identities"]) == 10


def test_cli_check_involution(capsys):
    code, out, _ = run_cli(capsys, "check-involution", "@veronese_p2", "@gr25")
    assert code == 0


def test_cli_section(capsys):
    code, out, _ = run_cli(capsys, "section", "@gr25", "-s", "3")
    assert code == 0
    report = json.loads(out)
    comps = report["data"]["presentation"]["components"]
    assert len(comps) == 3
    assert comps[1]["twist"] == "H"


def test_cli_project(capsys):
    code, out, _ = run_cli(capsys, "project", "@veronese_p2", "--target-rank", "4")
    assert code == 0
    report = json.loads(out)
    assert report["data"]["length"] == 3
    assert report["data"]["heights"][0].endswith("+ 2") or "2" in report["data"]["heights"][0]


def test_cli_projected_join_statement(capsys):
    code, out, _ = run_cli(capsys, "project", "@veronese_p2", "@veronese_p2", "--target-rank", "6")
    assert code == 0
    report = json.loads(out)
    assert report["data"]["hpd_statement"]["kind"] == "tensor-of-duals"


def test_cli_catalog_verify(capsys):
    code, out, _ = run_cli(capsys, "catalog", "--verify")
    assert code == 0


def test_cli_iterated(capsys):
    code, out, _ = run_cli(
        capsys, "iterated", "@veronese_p2", "@veronese_p2", "@veronese_p2", "-r", "6"
    )
    assert code == 0
    report = json.loads(out)
    assert len(report["data"]["rhs"]["components"]) == 10


def test_cli_text_mode(capsys):
    code, out, _ = run_cli(capsys, "hpd", "@veronese_p2", "--text")
    assert code == 0
    assert "pass: true" in out
    assert "PASS hpd-length-formula" in out


def test_cli_deterministic_output(capsys):
    _, first, _ = run_cli(capsys, "hpd", "@veronese_p2")
    _, second, _ = run_cli(capsys, "hpd", "@veronese_p2")
    assert first == second


def test_cli_subprocess_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lefcalc.cli", "hpd", "@gr25"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["data"]["rank"] == 10


def test_grid_cell_type():
    cell = GridCell(rank=2, blocks=None)
    assert cell.label == ""
