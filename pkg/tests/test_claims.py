from __future__ import annotations

import json

from unitdist.claims import CLAIM_IDS, FAIL, PASS, SKIPPED, report_json, report_table, verify_paper


def test_fast_subset():
    claims = verify_paper(only=["chi_f3_equals_3", "spindle_edges_exact", "sqrt2_quotient_bipartite"])
    assert [c.status for c in claims] == [PASS, PASS, PASS]
    assert claims[0].evidence["lower_kind"] == "clique"
    assert claims[1].evidence["edges"] == 11 and claims[1].evidence["non_edges"] == 10


def test_printed_sqrt2_coloring_is_reported_as_failing():
    (c,) = verify_paper(only=["sqrt2_printed_coloring"])
    assert c.status == FAIL and "U0-U1" in c.evidence["monochromatic_edges"]


def test_labels():
    claims = verify_paper(only=["f11_table_proper", "chi_f11_equals_5"])
    assert claims[0].basis.startswith("source asserts")
    assert claims[1].basis.startswith("source cites")


def test_zero_budget_skips_everything():
    claims = verify_paper(budget=0)
    assert [c.id for c in claims] == list(CLAIM_IDS)
    assert {c.status for c in claims} == {SKIPPED}


def test_deterministic_report():
    a = report_json(verify_paper(samples=50, only=["oracle_soundness", "valuation_axioms"]))
    b = report_json(verify_paper(samples=50, only=["oracle_soundness", "valuation_axioms"]))
    assert a == b
    rows = json.loads(a)
    assert all({"id", "status", "evidence"} <= set(r) for r in rows)


def test_table():
    text = report_table(verify_paper(only=["unit_identity"]))
    assert "unit_identity" in text and "1 passed" in text
