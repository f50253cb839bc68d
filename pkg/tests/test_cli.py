"""The command line interface, exercised through its main() entry."""

import json

from cobkit import parse, serialize, unknot, borromean
from cobkit.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    import io
    import sys

    if stdin is not None and monkeypatch is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_and_invariants_pipeline(capsys, monkeypatch):
    code, out, _ = run(capsys, "build", "sigma-s1", "1")
    assert code == 0
    code, out, _ = run(capsys, "invariants", "-", stdin=out,
                       monkeypatch=monkeypatch)
    assert code == 0
    assert "H1 = Z^3" in out
    assert "signature = 0" in out


def test_mend_pipeline_matches_acceptance_example(capsys, monkeypatch, tmp_path):
    code, built, _ = run(capsys, "build", "identity", "2")
    assert code == 0
    f = tmp_path / "id2.json"
    f.write_text(built)
    code, mended, _ = run(capsys, "mend", str(f), "--out-wedge", "V",
                          "--in-wedge", "U")
    assert code == 0
    code, out, _ = run(capsys, "invariants", "-", stdin=mended,
                       monkeypatch=monkeypatch)
    assert code == 0
    assert "H1 = Z^5" in out


def test_validate_ok_and_corrupted(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("COBKIT_COLOR", "0")
    good = tmp_path / "good.json"
    good.write_text(serialize(borromean(0, 0, 0)))
    code, out, _ = run(capsys, "validate", str(good))
    assert code == 0 and "ok" in out and "\x1b[" not in out

    doc = json.loads(good.read_text())
    doc["diagram"]["crossings"][0]["sign"] = 7
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 1


def test_usage_error_exit_code(capsys):
    code, _, _ = run(capsys, "build", "identity", "not-a-number")
    assert code == 2


def test_unknown_subcommand_exit_code(capsys):
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_json_errors_flag(capsys, tmp_path):
    missing = tmp_path / "missing.json"
    missing.write_text("{not json")
    code, out, _ = run(capsys, "--json-errors", "validate", str(missing))
    assert code == 1
    payload = json.loads(out)
    assert payload["error"]["kind"] == "parse"


def test_tensor_sew_compose_commands(capsys, tmp_path, monkeypatch):
    code, id1, _ = run(capsys, "build", "identity", "1")
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(id1)
    b.write_text(id1)
    code, out, _ = run(capsys, "sew", str(a), "--out-wedge", "V",
                       str(b), "--in-wedge", "U")
    assert code == 0
    d = parse(out)
    assert [w.genus for w in d.wedges] == [1, 1]

    code, out, _ = run(capsys, "compose", str(a), str(b), "--pairs", "V:U")
    assert code == 0

    code, out, _ = run(capsys, "tensor", str(a), str(b))
    assert code == 0
    assert len(parse(out).wedges) == 4

    code, out, _ = run(capsys, "permute", str(a), "--source", "0",
                       "--target", "0")
    assert code == 0


def test_build_wedge_row_and_render(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "wedge-row", "in:2", "out:1")
    assert code == 0
    f = tmp_path / "w.json"
    f.write_text(out)
    svg = tmp_path / "w.svg"
    code, _, _ = run(capsys, "render", str(f), "-o", str(svg))
    assert code == 0
    assert svg.read_text().startswith("<?xml")


def test_moves_apply_and_search(capsys, tmp_path, monkeypatch):
    from cobkit import MoveScript, BlowUp, serialize_move_script, tensor

    u = tmp_path / "u.json"
    u.write_text(serialize(unknot(0)))
    script = tmp_path / "script.json"
    script.write_text(serialize_move_script(MoveScript((BlowUp(1),))))
    code, out, _ = run(capsys, "moves", "apply", str(u), str(script))
    assert code == 0
    assert len(parse(out).circles) == 2

    b = tmp_path / "b.json"
    b.write_text(serialize(borromean(0, 0, 0)))
    bigger = tmp_path / "bigger.json"
    bigger.write_text(serialize(tensor(borromean(0, 0, 0), unknot(1))))
    code, out, _ = run(capsys, "moves", "search", str(bigger), str(b),
                       "--budget", "120")
    assert code == 0
    assert '"blow_down"' in out

    u1 = tmp_path / "u1.json"
    u1.write_text(serialize(unknot(1)))
    code, out, _ = run(capsys, "moves", "search", str(u), str(u1),
                       "--budget", "25")
    assert code == 1
    assert "not-found" in out
