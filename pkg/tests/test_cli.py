"""Command-line interface: flows, exit codes, literal parsing."""

import json

import pytest

from coslaw.cli import main, parse_complex, UsageError


def test_parse_complex_forms():
    assert parse_complex("2") == 2.0
    assert parse_complex("-1.5") == -1.5
    assert parse_complex("3i") == 3j
    assert parse_complex("i") == 1j
    assert parse_complex("-i") == -1j
    assert parse_complex("2+0i") == 2.0
    assert parse_complex("1.5-2.25i") == 1.5 - 2.25j
    assert parse_complex("2e-3+1e2i") == 0.002 + 100j


def test_parse_complex_exact():
    from fractions import Fraction

    v = parse_complex("1/2-3/4i", exact=True)
    assert v.rational_parts() == (Fraction(1, 2), Fraction(-3, 4))
    assert parse_complex("2", exact=True) == 2


def test_parse_complex_rejects_garbage():
    for bad in ("", "2+", "ii", "1+2j", "abc"):
        with pytest.raises(UsageError):
            parse_complex(bad)


def test_construct_verify_flow(tmp_path, capsys):
    out = tmp_path / "pair.json"
    rc = main([
        "construct", "--family", "8", "--fixture", "real-line",
        "--lambda", "1", "--alpha", "2+0i", "--out", str(out),
    ])
    assert rc == 0
    assert out.exists()
    rc = main(["verify", "--pair", str(out)])
    captured = capsys.readouterr()
    assert rc == 0
    report = json.loads(captured.out.strip().splitlines()[-1])
    assert report["max_residual"] < 1e-9


def test_verify_fails_on_wrong_alpha(tmp_path, capsys):
    out = tmp_path / "pair.json"
    main([
        "construct", "--family", "8", "--fixture", "real-line",
        "--lambda", "1", "--alpha", "2+0i", "--out", str(out),
    ])
    rc = main(["verify", "--pair", str(out), "--alpha", "3"])
    assert rc == 1


def test_nullsets_naturals(capsys):
    rc = main(["nullsets", "naturals-from-2", "--chi", "parity", "--window", "200"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "P_chi   = {2, 6, 10," in out
    assert "I_chi   = {2, 4, 6," in out
    assert "window" in out


def test_characters_bool_mult(capsys):
    rc = main(["characters", "bool-mult"])
    assert rc == 0
    lines = [l for l in capsys.readouterr().out.splitlines() if l.startswith("chi")]
    assert len(lines) == 3
    assert lines[0].startswith("chi0") and "(zero)" in lines[0]


def test_automorphisms_c3(capsys):
    rc = main(["automorphisms", "c3"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "id: 0 1 2" in out and "inv: 0 2 1" in out


def test_validate_fixture_and_file(tmp_path, capsys):
    assert main(["validate", "c2"]) == 0
    bad = tmp_path / "bad.sg"
    bad.write_text("order 2\n1 1\n0 0\n")
    assert main(["validate", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "associativity" in err


def test_unknown_fixture_is_usage_error(capsys):
    assert main(["validate", "no-such-fixture"]) == 2


def test_classify_flow(tmp_path, capsys):
    out = tmp_path / "pair.json"
    main([
        "construct", "--family", "6", "--fixture", "c2",
        "--chi1", "chi1", "--chi2", "chi2", "--alpha", "2", "--out", str(out),
    ])
    rc = main(["classify", "--pair", str(out)])
    assert rc == 0
    report = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert report["family_tag"] == 6
    assert report["match_residual"] <= 1e-7


def test_classify_rejects_non_solution(tmp_path, capsys):
    pair = {
        "fixture": "c2", "sigma": "id", "alpha": [0.0, 0.0],
        "g": [[2.0, 0.0], [3.0, 0.0]], "f": [[1.0, 0.0], [1.0, 0.0]],
    }
    path = tmp_path / "bad_pair.json"
    path.write_text(json.dumps(pair))
    assert main(["classify", "--pair", str(path)]) == 1


def test_solve_writes_jsonl(tmp_path, capsys):
    out = tmp_path / "sols.jsonl"
    rc = main([
        "solve", "c2", "--alpha", "1", "--seed", "7", "--restarts", "100",
        "--out", str(out),
    ])
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    assert lines
    first = json.loads(lines[0])
    assert {"g", "f", "residual", "rank_deficient"} <= set(first)


def test_construct_family7_naturals(tmp_path, capsys):
    out = tmp_path / "h.json"
    rc = main([
        "construct", "--family", "7", "--fixture", "naturals-from-2",
        "--chi", "parity", "--additive", "five-adic", "--rho-const", "0.5",
        "--alpha", "0.25", "--window", "40", "--out", str(out),
    ])
    assert rc == 0
    rc = main(["verify", "--pair", str(out)])
    assert rc == 0


def test_construct_exact_family5(tmp_path, capsys):
    out = tmp_path / "e.json"
    rc = main([
        "construct", "--family", "5", "--fixture", "c2", "--chi1", "chi1",
        "--chi2", "chi2", "--alpha", "0", "--q", "3/4", "--exact",
        "--out", str(out),
    ])
    assert rc == 0
    data = json.loads(out.read_text())
    # g = (9/8) chi1 - (1/8) chi2 -> (1, 5/4); f = (3/8)(chi1 - chi2) -> (0, 3/4)
    assert data["g"] == [["1", "0"], ["5/4", "0"]]
    assert data["f"] == [["0", "0"], ["3/4", "0"]]


def test_outdir_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("COSLAW_OUTDIR", str(tmp_path / "artifacts"))
    rc = main([
        "construct", "--family", "1", "--fixture", "c2", "--alpha", "1",
        "--out", "p.json",
    ])
    assert rc == 0
    assert (tmp_path / "artifacts" / "p.json").exists()


def test_invalid_descriptor_is_check_failure(capsys):
    rc = main([
        "construct", "--family", "8", "--fixture", "c2", "--chi", "chi2",
        "--alpha", "2",
    ])
    assert rc == 1  # chi = chi* under sigma = id
