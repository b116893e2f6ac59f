from __future__ import annotations

import json

import pytest

from unitdist.catalog import fixture
from unitdist.certificate import (
    certificate_from_dict,
    certificate_to_dict,
    certificate_to_json,
    check_certificate,
    independent_unsat,
)
from unitdist.chromatic import chi_exact
from unitdist.geometry import build_fp_graph, dimacs_sha256


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_fp_certificates_pass_the_checker(p):
    g = build_fp_graph(p, 2)
    d = json.loads(certificate_to_json(g, chi_exact(g)))
    rep = check_certificate(g.n, g.edges, d)
    assert rep.ok, rep.messages
    assert d["graph"]["dimacs_sha256"] == dimacs_sha256(g)


def test_field_order():
    g = fixture("moser_spindle").graph()
    d = certificate_to_dict(g, chi_exact(g))
    assert list(d) == ["version", "graph", "chi", "upper", "lower"]
    assert list(d["graph"]) == ["n", "m", "dimacs_sha256"]
    assert list(d["lower"]) == ["kind", "witness", "k", "nodes"]
    assert d["lower"]["k"] == d["chi"] - 1 == 3


def test_round_trip():
    g = build_fp_graph(5, 2)
    cert = chi_exact(g)
    back = certificate_from_dict(certificate_to_dict(g, cert))
    assert back.chi == cert.chi and back.upper == cert.upper and back.lower.witness == cert.lower.witness


class TestTampering:
    def setup_method(self):
        self.g = build_fp_graph(7, 2)
        self.d = certificate_to_dict(self.g, chi_exact(self.g))

    def check(self):
        return check_certificate(self.g.n, self.g.edges, self.d)

    def test_bad_coloring(self):
        cols = self.d["upper"]["colors"]
        j = self.g.neighbors(0)[0]
        cols[j] = cols[0]
        assert not self.check().ok

    def test_false_unsat_claim(self):
        self.d["chi"] = 5
        self.d["upper"]["k"] = 5
        self.d["lower"]["k"] = 4
        rep = self.check()
        assert not rep.ok and any("4-colouring" in m for m in rep.messages)

    def test_wrong_graph(self):
        rep = check_certificate(self.g.n, self.g.edges[1:], self.d)
        assert not rep.ok

    def test_fake_clique(self):
        self.d["lower"] = {"kind": "clique", "witness": [0, 1, 2, 3], "k": 3, "nodes": 0}
        assert not self.check().ok

    def test_fake_odd_cycle(self):
        g = build_fp_graph(5, 2)
        d = certificate_to_dict(g, chi_exact(g))
        assert d["lower"]["kind"] == "odd_cycle"
        d["lower"]["witness"] = d["lower"]["witness"][:-1]
        assert not check_certificate(g.n, g.edges, d).ok

    def test_unknown_kind(self):
        self.d["lower"]["kind"] = "lp_bound"
        assert not self.check().ok


def test_independent_unsat():
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    assert independent_unsat(5, c5, 2) is True
    assert independent_unsat(5, c5, 3) is False
    assert independent_unsat(121, build_fp_graph(11, 2).edges, 4) is True
    assert independent_unsat(121, build_fp_graph(11, 2).edges, 4, node_limit=10) is None


def test_checker_does_not_import_the_solver():
    import ast
    import inspect

    import unitdist.certificate as mod

    tree = ast.parse(inspect.getsource(mod))
    imported = [n for node in ast.walk(tree) if isinstance(node, ast.ImportFrom) for n in node.names]
    assert {a.name for a in imported if a.name[0].islower()} <= {"annotations", "dataclass", "field", "Sequence"}
