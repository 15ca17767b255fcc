"""Input language and CLI: parsing, round trips, determinism, exit codes."""

import json
import os
import subprocess
import sys

import pytest

import loggeom.cli as cli
from loggeom.cli import dump_report, run_command, run_fixture_file
from loggeom.language import ParseError, parse, pretty


CORPUS = os.path.join(os.path.dirname(cli.__file__), "corpus")

SAMPLE = """
monoid P { gens: x; rels: ; }
monoid Q { gens: a b; rels: 2a+0b = 0a+2b; }
ring Z { coeff: int; vars: ; ideal: ; }
ring A { coeff: fp(3); vars: u; ideal: u^2; }
prelog X { ring: Z; monoid: P; alpha: x -> 3; units: builtin; }
module J { ring: A; gens: g; rels: (u); }
"""


def test_parse_examples():
    ws = parse(SAMPLE)
    assert ws.get("P", "monoid").ngens == 1
    assert ws.get("Q", "monoid").relations == (((2, 0), (0, 2)),)
    x = ws.get("X", "prelog")
    assert x.units is not None
    j = ws.get("J", "module")
    assert j.ngens == 1 and len(j.relations) == 1


def test_round_trip():
    ws = parse(SAMPLE)
    text = pretty(ws)
    assert parse(text) == ws
    assert pretty(parse(text)) == text


def test_round_trip_on_corpus_files():
    for fname in sorted(os.listdir(CORPUS)):
        if not fname.endswith(".lg"):
            continue
        ws = parse(open(os.path.join(CORPUS, fname), encoding="utf-8").read())
        assert parse(pretty(ws)) == ws, fname


@pytest.mark.parametrize("source,fragment", [
    ("monoid P { gens: x; rels: ; }\nmonoid P { gens: y; rels: ; }", "duplicate"),
    ("prelog X { ring: R; monoid: P; alpha: ; units: none; }", "forward references"),
    ("monoid P { gens: x; rels: 1x = 2y; }", "unknown generator"),
    ("ring R { coeff: int; vars: x; ideal: x^; }", "number"),
    ("monoid P { gens: x; rels: x = 0; }", "explicit integer"),
])
def test_parse_errors(source, fragment):
    with pytest.raises(ParseError) as err:
        parse(source)
    assert fragment in str(err.value)
    assert "line" in str(err.value) and "col" in str(err.value)


def test_alpha_violation_reported_with_values():
    src = """
monoid T { gens: x; rels: 2x = 0; }
ring Z { coeff: int; vars: ; ideal: ; }
prelog W { ring: Z; monoid: T; alpha: x -> 3; units: builtin; }
"""
    with pytest.raises(ParseError, match="alpha violates relation: 9 != 1"):
        parse(src)


def test_reports_deterministic():
    ws = parse(SAMPLE)
    a = dump_report(run_command("gp", ws, "Q", {}))
    b = dump_report(run_command("gp", ws, "Q", {}))
    assert a == b
    report = json.loads(a)
    assert report["schema"] == 1
    assert report["result"] == {"rank": 1, "torsion": [2]}


def test_corpus_fixtures_match():
    fixture_files = sorted(
        f for f in os.listdir(CORPUS) if f.endswith(".fixtures.json"))
    assert fixture_files
    for fname in fixture_files:
        for label, ok, detail in run_fixture_file(os.path.join(CORPUS, fname)):
            assert ok, f"{label}: {detail}"


def _run_cli(args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "loggeom.cli", *args],
        capture_output=True, text=True, cwd=cwd)


def test_cli_exit_codes(tmp_path):
    sample = tmp_path / "w.lg"
    sample.write_text(SAMPLE)
    ok = _run_cli(["gp", f"{sample}#Q"])
    assert ok.returncode == 0
    assert json.loads(ok.stdout)["result"]["torsion"] == [2]

    usage = _run_cli(["gp", f"{sample}#NOPE"])
    assert usage.returncode == 1

    bad = tmp_path / "bad.lg"
    bad.write_text("monoid P { gens: x; rels: x = 0; }")
    syntax = _run_cli(["gp", f"{bad}#P"])
    assert syntax.returncode == 1

    # derivations over the rationals cannot be enumerated: unsupported
    unsupported_src = """
monoid P { gens: x; rels: ; }
ring Q { coeff: rat; vars: ; ideal: ; }
prelog X { ring: Q; monoid: P; alpha: x -> 0; units: none; }
module J { ring: Q; gens: g; rels: ; }
"""
    u = tmp_path / "u.lg"
    u.write_text(unsupported_src)
    unsupported = _run_cli(["derivations", f"{u}#X", "--module", "J"])
    assert unsupported.returncode == 2

    fmt = _run_cli(["fmt", str(sample)])
    assert fmt.returncode == 0 and "monoid P" in fmt.stdout


def test_cli_verdict_fail_still_exits_zero(tmp_path):
    src = """
monoid P { gens: x; rels: ; }
monoid M { gens: t; rels: ; }
ring RZ { coeff: int; vars: ; ideal: ; }
ring AZ { coeff: int; vars: t; ideal: t^2 - 3; }
prelog X { ring: RZ; monoid: P; alpha: x -> 3; units: builtin; }
prelog Y { ring: AZ; monoid: M; alpha: t -> t; units: none; }
map f { from: X; to: Y; ring: ; monoid: x -> 2t; }
"""
    s = tmp_path / "c.lg"
    s.write_text(src)
    res = _run_cli(["check-log-etale", f"{s}#f"])
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["result"]["overall"] is False


def test_cli_corpus_command():
    res = _run_cli(["corpus", CORPUS])
    assert res.returncode == 0
    assert "FAIL" not in res.stdout


def test_bound_env_override(monkeypatch):
    from loggeom.monoids import degree_bound
    monkeypatch.delenv("LOGGEOM_BOUND", raising=False)
    assert degree_bound() == 12
    monkeypatch.setenv("LOGGEOM_BOUND", "7")
    assert degree_bound() == 7
    assert degree_bound(3) == 3


def test_cli_adjoin_root_and_logdiag(tmp_path):
    src = """
monoid P { gens: x; rels: ; }
ring K { coeff: fp(3); vars: ; ideal: ; }
prelog X { ring: K; monoid: P; alpha: x -> 0; units: builtin; }
"""
    s = tmp_path / "r.lg"
    s.write_text(src)
    root = _run_cli(["adjoin-root", f"{s}#X", "--degree", "2"])
    assert root.returncode == 0
    report = json.loads(root.stdout)
    assert report["result"]["chart"]["overall"] is True
    wild = _run_cli(["adjoin-root", f"{s}#X", "--degree", "3"])
    assert json.loads(wild.stdout)["result"]["chart"]["overall"] is False
    diag = _run_cli(["logdiag", f"{s}#X"])
    assert diag.returncode == 0
    payload = json.loads(diag.stdout)["result"]
    assert payload["fitting"][0] == []          # Fitt0 of a free rank-1 module
    assert payload["fitting"][1] == ["1"]


def test_cli_precondition_violations_exit_one(tmp_path):
    src = """
monoid N { gens: y; rels: ; }
monoid M { gens: x; rels: ; }
ring Z { coeff: int; vars: ; ideal: ; }
prelog A { ring: Z; monoid: N; alpha: y -> 9; units: builtin; }
prelog B { ring: Z; monoid: M; alpha: x -> 3; units: builtin; }
map DBL { from: A; to: B; ring: ; monoid: y -> 2x; }
"""
    s = tmp_path / "p.lg"
    s.write_text(src)
    res = _run_cli(["repletion", f"{s}#DBL"])
    assert res.returncode == 1
    assert "virtually surjective" in res.stderr


def test_cli_logify_uncertified_exits_two(tmp_path):
    src = """
monoid T { gens: a b; rels: ; }
ring Z { coeff: int; vars: ; ideal: ; }
prelog X { ring: Z; monoid: T; alpha: a -> 2, b -> 3; units: builtin; }
"""
    s = tmp_path / "u2.lg"
    s.write_text(src)
    res = _run_cli(["logify", f"{s}#X"])
    assert res.returncode == 2
