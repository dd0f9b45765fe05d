"""CLI subcommands and exit-code mapping."""

import json

import pytest

from cubiccayley.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_writes_ball(tmp_path, capsys):
    out = tmp_path / "ball.json"
    code, _, err = run(capsys, "build", "--type", "I", "--n", "2",
                       "--radius", "4", "-o", str(out))
    assert code == 0
    assert "certified ball" in err
    data = json.loads(out.read_text())
    assert len(data["vertices"]) == 16


def test_build_presentation_finite(capsys):
    code, out, _ = run(capsys, "build", "--presentation",
                       "<b,c,d|b^2,c^2,d^2,(bc)^2,cd>", "--radius", "6")
    assert code == 0
    data = json.loads(out)
    assert len(data["vertices"]) == 4


def test_build_invalid_params(capsys):
    code, _, err = run(capsys, "build", "--type", "V", "--n", "2", "--m", "1")
    assert code == 2
    assert "m >= 2" in err


def test_classify_presentation(capsys):
    code, out, _ = run(capsys, "classify", "<a,b|b^2,(aba^-1b^-1)^2>")
    assert code == 0
    data = json.loads(out)
    assert data["type"] == "II" and data["params"] == {"n": 2}


def test_classify_ball_blind(tmp_path, capsys):
    out = tmp_path / "ball.json"
    assert run(capsys, "build", "--type", "VI", "--n", "2", "--m", "3",
               "--radius", "6", "-o", str(out))[0] == 0
    code, text, _ = run(capsys, "classify", str(out), "--blind")
    assert code == 0
    data = json.loads(text)
    assert data["type"] == "VI" and data["params"] == {"n": 2, "m": 3}


def test_classify_not_in_catalogue(capsys):
    code, _, err = run(capsys, "classify", "<a,b|b^2,a^3>")
    assert code == 3
    assert "case-1" in err


def test_classify_parse_error(capsys):
    code, _, err = run(capsys, "classify", "a,b|b^2")
    assert code == 1


def test_embed_json(capsys):
    code, out, _ = run(capsys, "embed", "--type", "IV", "--m", "2",
                       "--radius", "4")
    assert code == 0
    data = json.loads(out)
    assert data["colour_spin"] == {"b": "preserving", "c": "preserving",
                                   "d": "preserving"}


def test_render_svg(tmp_path, capsys):
    out = tmp_path / "fig.svg"
    code, _, _ = run(capsys, "render", "--type", "III", "--m", "4",
                     "--radius", "4", "--depth", "3", "-o", str(out))
    assert code == 0
    assert out.read_text().startswith("<svg")


def test_render_dot(capsys):
    code, out, _ = run(capsys, "render", "--type", "I", "--n", "2",
                       "--radius", "3", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_render_depth_overflow(capsys):
    code, _, err = run(capsys, "render", "--type", "I", "--n", "2",
                       "--radius", "3", "--depth", "9")
    assert code == 5


def test_verify_k33(capsys):
    code, out, _ = run(capsys, "verify", "--check", "k33-scaffold")
    assert code == 0
    assert json.loads(out)["pass"]


def test_verify_separator_involution(tmp_path, capsys):
    out = tmp_path / "ball.json"
    assert run(capsys, "build", "--type", "I", "--n", "2", "--radius", "5",
               "-o", str(out))[0] == 0
    code, text, _ = run(capsys, "verify", str(out), "--check",
                        "separator-involution")
    assert code == 0
    data = json.loads(text)
    assert data["pass"]
    assert data["separator"]["z_word"] == "b"


def test_verify_unknown_check(capsys):
    code, _, _ = run(capsys, "verify", "--check", "no-such-check")
    assert code == 2


def test_verify_grid_smoke(tmp_path, capsys):
    out = tmp_path / "grid"
    code, _, _ = run(capsys, "verify", "--grid", "smoke", "--radius", "4",
                     "-o", str(out))
    assert code == 0
    report = json.loads((out / "grid.json").read_text())
    assert report["pass"]
    assert len(report["grid"]) == 18
    assert len(list(out.glob("*.svg"))) == 18
