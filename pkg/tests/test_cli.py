import json

import pytest

from seqsurf.cli import main
from cases import comparison_script


@pytest.fixture
def proof_file(tmp_path):
    f = tmp_path / "comparison.proof"
    f.write_text(comparison_script)
    return f


def test_parse_ok(proof_file, capsys):
    assert main(["parse", str(proof_file)]) == 0
    out = capsys.readouterr().out
    assert "tensor-r" in out


def test_parse_expands_sugar(tmp_path, capsys):
    f = tmp_path / "p.proof"
    f.write_text("s0: (A -o X) |- (A -o X) ; axiom (A -o X)\n")
    assert main(["parse", str(f)]) == 0
    assert "(A^ (+) X)" in capsys.readouterr().out


def test_parse_invalid_conclusion(tmp_path, capsys):
    f = tmp_path / "bad.proof"
    f.write_text("s0: A |- B ; axiom A\n")
    assert main(["parse", str(f)]) == 2
    assert "rule yields" in capsys.readouterr().err


def test_compile_round_trip(proof_file, tmp_path, capsys):
    out = tmp_path / "c.surface"
    assert main(["compile", str(proof_file), "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["conclusion"] == "A, B |- bot, (A (x) B)"
    assert len(data["events"]) > 0


def test_compile_invalid_exits_2(tmp_path):
    f = tmp_path / "bad.proof"
    f.write_text("s0: A |- B ; axiom A\n")
    out = tmp_path / "c.surface"
    assert main(["compile", str(f), "-o", str(out)]) == 2
    assert not out.exists()


def _axiom_surface_file(tmp_path, name, formula):
    f = tmp_path / f"{name}.proof"
    f.write_text(f"s0: {formula} |- {formula} ; axiom {formula}\n")
    out = tmp_path / f"{name}.surface"
    assert main(["compile", str(f), "-o", str(out)]) == 0
    return out


def test_equiv_and_witness(tmp_path, capsys):
    cutf = tmp_path / "cut.proof"
    cutf.write_text(
        "s0: A |- A ; axiom A\n"
        "s1: A |- A ; axiom A\n"
        "s2: A |- A ; cut A s0 s1\n")
    cut_s = tmp_path / "cut.surface"
    assert main(["compile", str(cutf), "-o", str(cut_s)]) == 0
    ax_s = _axiom_surface_file(tmp_path, "ax", "A")
    wit = tmp_path / "w.json"
    assert main(["equiv", str(cut_s), str(ax_s), "--out", str(wit)]) == 0
    assert "EQUIVALENT" in capsys.readouterr().out
    assert main(["equiv", str(cut_s), str(ax_s), "--witness", str(wit)]) == 0


def test_equiv_not_comparable(tmp_path, capsys):
    a = _axiom_surface_file(tmp_path, "a", "A")
    b = _axiom_surface_file(tmp_path, "b", "B")
    assert main(["equiv", str(a), str(b)]) == 2
    assert "NOT-COMPARABLE" in capsys.readouterr().out


def test_project_dot_and_json(proof_file, tmp_path, capsys):
    surf = tmp_path / "c.surface"
    assert main(["compile", str(proof_file), "-o", str(surf)]) == 0
    assert main(["project", str(surf)]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("graph proofnet")
    assert main(["project", str(surf), "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["links"]) == 2 and len(data["units"]) == 1


def test_render_views(proof_file, tmp_path):
    surf = tmp_path / "c.surface"
    assert main(["compile", str(proof_file), "-o", str(surf)]) == 0
    for view in ("conclusion", "slices", "net"):
        for fmt in ("svg", "tikz"):
            out = tmp_path / f"r-{view}.{fmt}"
            assert main(["render", str(surf), "--view", view,
                         "--format", fmt, "-o", str(out)]) == 0
            text = out.read_text()
            assert text.strip()
            if fmt == "svg":
                assert text.startswith("<svg")
            else:
                assert "tikzpicture" in text


def test_render_deterministic(proof_file, tmp_path):
    surf = tmp_path / "c.surface"
    main(["compile", str(proof_file), "-o", str(surf)])
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.svg"
        main(["render", str(surf), "--view", "net", "-o", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_usage_error_exit_code():
    assert main(["frobnicate"]) == 1
