import csv
import io
import json
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from coideal_atlas import suites
from coideal_atlas.cli import (
    SCHEMA,
    compact,
    listing_json,
    main,
    parse_listing,
    render_tableau,
    tableau_rows,
)
from coideal_atlas.freealg import Bicharacter, psi
from coideal_atlas.nichols import Subalgebra, deconcat, multidegrees_upto, omega, spans_equal
from coideal_atlas.rootdata import GenDesc, build_RT, enumerate_theta, pbw_generators

from tableau_reference import ERRATA, ROWS

GOLDEN = Path(__file__).parent / "golden" / "tableau_n3.txt"


@pytest.fixture
def runner():
    return CliRunner()


# tableau -------------------------------------------------------------------

def test_tableau_golden_bytes(runner):
    res = runner.invoke(main, ["tableau", "--n", "3"])
    assert res.exit_code == 0
    assert res.output == GOLDEN.read_text()


def test_tableau_rows_against_reference():
    rows = {r.theta: r for r in tableau_rows(3)}
    assert set(rows) == set(ROWS)
    assert [r.theta for r in tableau_rows(3)] == sorted(ROWS, reverse=True)
    for theta, ref in ROWS.items():
        row = rows[theta]
        fixed = {**ref, **ERRATA.get(theta, {})}
        assert row.starred == ref["star"], theta
        assert row.T == ref["T"], theta
        assert row.pbw == ref["pbw"], theta
        assert row.R == fixed["R"], theta
        assert row.rcs == fixed["rcs"], theta
        assert row.rcs_diagrams == fixed["diagrams"], theta
    assert sum(r.starred for r in rows.values()) == 6


def test_erratum_row_is_inconsistent_as_typed():
    # max R_1 must equal k + theta_1 - 1 = 2 for theta = (2,2,1)
    typed_R1 = ROWS[(2, 2, 1)]["R"][2]
    assert max(typed_R1) != 2
    assert typed_R1 == ROWS[(3, 0, 0)]["R"][2]
    assert build_RT((2, 2, 1)).R_set(1) == [1, 2]


def _rcs(bc, descs):
    """Right coideal subalgebra generated by the Psi of the descriptors: the
    subalgebra on all left legs of their deconcatenations."""
    legs = [left for g in descs for left, _ in deconcat(omega(psi(bc, g))) if left.terms]
    return Subalgebra(legs, bc)


def test_erratum_generating_sets_agree():
    bc = Bicharacter.one_parameter(3)
    ours = [GenDesc(1, 2, {1}), GenDesc(2, 3)]
    typed = [GenDesc(1, 3, {1, 2}), GenDesc(2, 3)]
    assert tuple(compact(g) for g in ours) == ERRATA[(2, 2, 1)]["rcs"]
    assert tuple(compact(g) for g in typed) == ROWS[(2, 2, 1)]["rcs"]
    A, B = _rcs(bc, ours), _rcs(bc, typed)
    U = Subalgebra([psi(bc, g) for g in pbw_generators(build_RT((2, 2, 1)))], bc)
    for d in multidegrees_upto(3, 6):
        assert spans_equal(A.basis(d), B.basis(d)), d
        assert spans_equal(A.basis(d), U.basis(d)), d


def test_tableau_examples():
    rows = {r.theta: r for r in tableau_rows(3)}
    assert rows[(3, 1, 0)].rcs == ("[x3x2x1]", "x2")
    assert rows[(0, 2, 1)].rcs == ("[x2x3]",)
    text = render_tableau(tableau_rows(3, unicode=True), 3, unicode=True)
    assert "○" in text and "●" in text and "∅" in text


def test_compact_notation():
    assert compact(GenDesc(1, 3)) == "[x1x2x3]"
    assert compact(GenDesc(1, 3, {1, 2})) == "[x3x2x1]"
    assert compact(GenDesc(1, 3, {2})) == "[x3[x1x2]]"
    assert compact(GenDesc(1, 3, {1})) == "[[x2x3]x1]"
    assert compact(GenDesc(2, 2)) == "x2"


# listings ------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_json_round_trip(n):
    text = listing_json(n)
    doc = json.loads(text)
    assert doc["schema"] == SCHEMA and doc["count"] == math.factorial(n + 1)
    profiles = parse_listing(text)
    assert profiles == [build_RT(t) for t in enumerate_theta(n)]


def test_parse_listing_rejects_tampering():
    doc = json.loads(listing_json(2))
    doc["records"][4]["T"][0] = [1]
    with pytest.raises(ValueError):
        parse_listing(json.dumps(doc))
    doc["schema"] = "other/9"
    with pytest.raises(ValueError):
        parse_listing(json.dumps(doc))


def test_borel_json_row_220(runner):
    res = runner.invoke(main, ["borel", "--n", "3", "--format", "json"])
    doc = json.loads(res.output)
    rec = next(r for r in doc["records"] if r["theta"] == [2, 2, 0])
    assert rec["R"][1] == rec["T"][1] == [2, 3]
    assert rec["R"][0] == rec["T"][0] == [2]
    assert rec["brackets"] == ["x2", "[x3,x2]", "[x1,x2]"]


def test_borel_text_counts(runner):
    res = runner.invoke(main, ["borel", "--n", "2"])
    assert len(res.output.splitlines()) == 6
    res = runner.invoke(main, ["borel", "--n", "1"])
    lines = res.output.splitlines()
    assert [ln.split()[0] for ln in lines] == ["(0)", "(1)"]


def test_borel_csv(runner, tmp_path):
    out = tmp_path / "b.csv"
    res = runner.invoke(main, ["borel", "--n", "3", "--format", "csv", "--out", str(out)])
    assert res.exit_code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 24
    assert all(r["schema"] == SCHEMA for r in rows)
    assert sum(int(r["adr_invariant"]) for r in rows) == 8
    assert json.loads(rows[-1]["theta"]) == [3, 2, 1]


# counts --------------------------------------------------------------------

def test_count_borel(runner):
    res = runner.invoke(main, ["count", "borel", "--n", "4"])
    assert res.exit_code == 0 and res.output.splitlines()[0] == "120"


def test_count_full_json(runner):
    res = runner.invoke(main, ["count", "full", "--n", "3", "--format", "json"])
    doc = json.loads(res.output)
    assert doc["count"] == 252
    assert doc["condition1_only"] + doc["needing_condition2"] == 252
    assert doc["pairs_checked"] == 576


def test_count_threads_env(runner):
    res = runner.invoke(main, ["count", "full", "--n", "4", "--format", "json", "--quiet"], env={"ATLAS_THREADS": "2"})
    doc = json.loads(res.output)
    assert doc["count"] == 3368 and doc["threads"] == 2


# verify --------------------------------------------------------------------

def test_verify_passes(runner):
    res = runner.invoke(main, ["verify", "sh", "--n", "3"])
    assert res.exit_code == 0 and "PASS" in res.output
    res = runner.invoke(main, ["verify", "omega", "--n", "3", "--format", "json"])
    assert res.exit_code == 0 and json.loads(res.output)["ok"]


def test_verify_consistency_rank2(runner):
    res = runner.invoke(main, ["verify", "consistency", "--n", "2"])
    assert res.exit_code == 0
    assert "accepted=26/36" in res.output


def test_verify_failure_exit_code(runner, monkeypatch):
    def broken(name, n, bound=None, multiparameter=False):
        c = suites.Check("planted")
        c.record(False, lambda: {"where": "here"})
        return suites.SuiteResult(name, n, [c])

    monkeypatch.setattr(suites, "run_suite", broken)
    res = runner.invoke(main, ["verify", "sh", "--n", "2"])
    assert res.exit_code == 1
    assert "first counterexample" in res.output


def test_usage_errors(runner):
    assert runner.invoke(main, ["verify", "nosuch"]).exit_code == 2
    assert runner.invoke(main, ["borel"]).exit_code == 2
    assert runner.invoke(main, ["pair", "1,0", "2"]).exit_code == 2


# pair ----------------------------------------------------------------------

def test_pair_examples(runner):
    res = runner.invoke(main, ["pair", "1", "1"])
    assert res.exit_code == 0 and "verdict: compatible" in res.output
    assert " 1  1  no     yes" in res.output
    res = runner.invoke(main, ["pair", "1,0", "2,0"])
    assert "incompatible at (1,1)" in res.output
    res = runner.invoke(main, ["pair", "0,0", "0,0", "--format", "json"])
    assert json.loads(res.output)["ok"]


def test_pair_symbolic(runner):
    res = runner.invoke(main, ["pair", "1", "1", "--symbolic"])
    assert "[x1, x1^-] = (1) 1 + (-1) g1*f1" in res.output
