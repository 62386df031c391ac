from __future__ import annotations

import json

import pytest

from seifert_skein.cli import main
from seifert_skein.errors import EulerZero
from seifert_skein.report import (
    InvariantReport, KnownValuesTable, cmd_census, cmd_invariants, cmd_known, read_census,
)
from seifert_skein.seifert import SeifertData


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_report_sigma235(sigma235):
    rep = cmd_invariants(sigma235)
    assert rep.characters["x_irr"] == 2
    assert rep.characters["skein_dim"] == 3
    assert rep.characters["reduced"] is True
    assert rep.reduction["generating_set_size"] == 1920
    assert InvariantReport.from_json(json.loads(rep.dumps())) == rep


def test_invariants_euler_zero():
    with pytest.raises(EulerZero):
        cmd_invariants(SeifertData(((2, 1), (3, -1), (6, -1))))


def test_known_values():
    assert cmd_known("S2xS1").dimension == 1
    assert cmd_known("RP3").dimension == 2
    assert cmd_known("RP3#RP3").dimension == 4
    assert all(cmd_known(k).citation for k in KnownValuesTable.labels())
    with pytest.raises(KeyError):
        cmd_known("S3")


def test_rp3_is_recognized():
    rep = cmd_invariants(SeifertData(((1, 2), (1, 0), (1, 0))))
    assert rep.known_value["label"] == "RP3"
    assert rep.characters["skein_dim"] == rep.known_value["dimension"]


def test_cli_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "--slopes", "1/2,-1/3,-1/5", "--json")
    assert code == 0
    data = json.loads(out)
    assert (data["characters"]["x_irr"], data["characters"]["skein_dim"], data["characters"]["reduced"]) == (2, 3, True)


def test_cli_exit_codes(capsys):
    code, _, err = run(capsys, "invariants", "--slopes", "1/2,-1/3,-1/6")
    assert code == 2 and "Haken" in err
    code, out, _ = run(capsys, "invariants", "--slopes", "1/3,1/3,1/3", "--json")
    data = json.loads(out)
    assert code == 0 and data["characters"]["reduced"] is False and data["characters"]["x_M"] == 1
    assert run(capsys, "invariants", "--slopes", "1/x,1/3,1/5")[0] == 1
    assert run(capsys, "invariants")[0] == 1
    assert run(capsys, "known", "Poincare")[0] == 1
    assert run(capsys, "basis", "--slopes", "1/3,1/3,1/3")[0] == 2


def test_cli_subcommands(capsys, tmp_path):
    assert run(capsys, "characters", "--slopes", "1/2,-1/3,-1/5")[1].strip().endswith("3 characters")
    code, out, _ = run(capsys, "basis", "--slopes", "1/2,-1/3,-1/5", "--check-independence", "--json")
    assert code == 0 and json.loads(out)["independence"]["exact_rank"] == 3
    code, out, _ = run(capsys, "reduce", "--slopes", "1/2,-1/3,-1/5", "--index", "0,0,0,-5,0,0", "--trace", "--json")
    assert code == 0 and len(json.loads(out)["reductions"][0]["trace"]["steps"]) == 6
    code, out, _ = run(capsys, "reduce", "--slopes", "1/2,-1/3,-1/5", "--random", "3", "--range", "1", "--seed", "4")
    assert code == 0 and len(out.strip().splitlines()) == 3
    assert "1920" in run(capsys, "generating-set", "--slopes", "1/2,-1/3,-1/5")[1]
    code, out, _ = run(capsys, "cohomology", "--slopes", "1/3,1/3,1/3", "--rep", "exceptional:0", "--json")
    assert code == 0 and json.loads(out)["dim_H1"] == 2
    assert run(capsys, "cohomology", "--slopes", "1/3,1/3,1/3")[0] == 0
    assert run(capsys, "cohomology", "--slopes", "1/3,1/3,1/3", "--rep", "irreducible:9")[0] == 1
    assert run(capsys, "su2", "verify", "--base", "S2", "--slopes", "1/2,1/2,1/2,-1/2")[0] == 0
    fig = tmp_path / "traces.png"
    code, out, _ = run(capsys, "su2", "verify", "--base", "RP2", "--slopes", "1/3,2/5", "--plot", str(fig))
    assert code == 0 and "100 distinct" in out and fig.stat().st_size > 0
    code, out, _ = run(capsys, "known", "RP3#RP3", "--json")
    assert json.loads(out)["dimension"] == 4


def test_census_determinism_and_plots(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    s1 = cmd_census(3, a)
    s2 = cmd_census(3, b)
    assert s1.ok and s2.ok and s1.instances == s2.instances > 0
    assert a.read_bytes() == b.read_bytes()
    reports = list(read_census(a))
    assert len(reports) == s1.instances
    assert all(r.timings is None for r in reports)
    code, out, _ = run(capsys, "census", "--pmax", "2", "--output", str(tmp_path / "c.jsonl"),
                       "--plot", str(tmp_path / "figs"), "--json")
    figs = json.loads(out)["figures"]
    assert code == 0 and len(figs) == 3
    with pytest.raises(ValueError):
        cmd_census(13)


@pytest.mark.slow
def test_census_p5_has_no_discrepancies():
    s = cmd_census(5)
    assert s.ok
    assert s.weakly_coprime > 0 and s.weakly_coprime_nonreduced == 0
