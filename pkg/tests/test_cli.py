import json

from convexcodes import Code, code_to_text, cover_to_text
from convexcodes.cli import main
from convexcodes.verification import (
    closed_line_split_cover,
    five_neuron_closed_cover,
    five_neuron_code,
    six_neuron_code,
)


def write_code(tmp_path, name, n, compact):
    path = tmp_path / name
    path.write_text(code_to_text(Code.from_compact(n, compact)))
    return str(path)


def test_analyze_local_obstruction(tmp_path, capsys):
    path = write_code(tmp_path, "c.code", 3, "0 1 2 13 23")
    assert main(["analyze", path]) == 0
    out = capsys.readouterr().out
    assert "local-obstruction: sigma=3" in out
    assert "max-intersection-complete:" in out


def test_analyze_five_neuron_code(tmp_path, capsys):
    path = tmp_path / "five.code"
    path.write_text(code_to_text(five_neuron_code()))
    assert main(["analyze", str(path)]) == 0
    out = capsys.readouterr().out
    assert "local-obstruction" not in out
    assert "max-intersection-complete: false" in out


def test_analyze_json_mirrors_text(tmp_path, capsys):
    path = write_code(tmp_path, "c.code", 4, "23 14 123")
    assert main(["analyze", path, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert main(["analyze", path]) == 0
    text = capsys.readouterr().out
    assert data["words"] == ["14", "23", "123"]
    # every scalar field of the JSON report appears in the text report
    assert f"n: {data['n']}" in text
    assert "words: " + " ".join(data["words"]) in text
    assert "delta-facets: " + " ".join(data["delta_facets"]) in text
    assert "violators: " + " ".join(data["violators"]) in text
    for o in data["local_obstructions"]:
        assert f"local-obstruction: sigma={o['sigma']}" in text
    for o in data["nonlocal_obstructions"]:
        assert f"sigma1={o['sigma1']} sigma2={o['sigma2']}" in text
    assert f"intersection-complete: {str(data['intersection_complete']).lower()}" in text
    assert (
        f"max-intersection-complete: {str(data['max_intersection_complete']).lower()}"
        in text
    )
    assert data["realization"]["applicable"] is False
    assert f"missing={data['realization']['missing']}" in text


def test_analyze_empty_file_exit_2(tmp_path, capsys):
    path = tmp_path / "empty.code"
    path.write_text("")
    assert main(["analyze", str(path)]) == 2
    assert "parse error" in capsys.readouterr().err


def test_analyze_bad_line_reports_line_number(tmp_path, capsys):
    path = tmp_path / "bad.code"
    path.write_text("n=3\n1 2\nwhat\n")
    assert main(["analyze", str(path)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_realize_bundle(tmp_path, capsys):
    path = write_code(tmp_path, "c.code", 4, "123 134 13 1")
    out_dir = tmp_path / "bundle"
    assert main(["realize", path, "--method", "auto", "--out", str(out_dir)]) == 0
    out = capsys.readouterr().out
    assert "dimension: 2" in out
    assert "valid: true" in out
    assert (out_dir / "certificate.txt").exists()
    assert (out_dir / "abstract_cover.txt").exists()
    assert (out_dir / "cover.txt").exists()


def test_realize_not_applicable_exit_1(tmp_path, capsys):
    path = tmp_path / "six.code"
    path.write_text(code_to_text(six_neuron_code()))
    assert main(["realize", str(path), "--method", "chamber"]) == 1
    out = capsys.readouterr().out
    assert "1 = 123" in out and "156" in out


def test_realize_potential(tmp_path, capsys):
    path = write_code(tmp_path, "c.code", 2, "1 2 12")
    out_dir = tmp_path / "pot"
    assert main(["realize", path, "--method", "potential", "--out", str(out_dir)]) == 0
    out = capsys.readouterr().out
    assert "achieved: 0 1 2 12" in out
    assert (out_dir / "potential_cover.txt").exists()


def test_cover_code_five_neuron(tmp_path, capsys):
    path = tmp_path / "five.cover"
    path.write_text(cover_to_text(five_neuron_closed_cover()))
    assert main(["cover-code", str(path)]) == 0
    out = capsys.readouterr().out
    want = " ".join(
        __import__("convexcodes").word_label(w, 5)
        for w in five_neuron_code().sorted_words()
    )
    assert f"code: {want}" in out


def test_cover_code_nondegen_flags(tmp_path, capsys):
    path = tmp_path / "split.cover"
    path.write_text(cover_to_text(closed_line_split_cover()))
    assert main(["cover-code", str(path), "--nondegen", "--invariance"]) == 0
    out = capsys.readouterr().out
    assert "cond_i: false" in out
    assert "cond_ii: true" in out
    assert "code-equal-interior: false" in out


def test_cover_code_ball_needs_sampling(tmp_path, capsys):
    text = "d=1 n=1 ambient=whole\nSET\nBALL 0/1 1/1 lt\n"
    path = tmp_path / "ball.cover"
    path.write_text(text)
    assert main(["cover-code", str(path)]) == 3
    assert "--sample" in capsys.readouterr().err
    assert main(["cover-code", str(path), "--sample", "500", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "sampled code estimate" in out


def test_cover_code_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.cover"
    path.write_text("d=1 n=1 ambient=whole\nH 1/1 : 1/1 le\n")
    assert main(["cover-code", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_verify_paper_list(capsys):
    assert main(["verify-paper", "--list"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert "criterion-1-local-fixtures" in out
    assert "criterion-9-homology-unit-bar" in out
    assert len(out) > 20


def test_verify_paper_flags_corrupted_row(monkeypatch, capsys):
    import convexcodes.cli as cli_mod
    from convexcodes.verification import FixtureResult

    fake = [
        FixtureResult("healthy-row", True, "fine"),
        FixtureResult("corrupted-row", False, "broken on purpose"),
    ]
    monkeypatch.setattr(cli_mod, "run_suite", lambda: fake)
    assert main(["verify-paper"]) == 1
    out = capsys.readouterr().out
    assert "FAIL  corrupted-row" in out


def test_exit_codes_are_stable(tmp_path, capsys):
    # obstructions are report content, not process failures
    path = write_code(tmp_path, "c.code", 4, "23 14 123")
    assert main(["analyze", path]) == 0
    capsys.readouterr()
