from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unitdist.catalog import fixture
from unitdist.chromatic import (
    Coloring,
    Unresolved,
    ChiUnresolved,
    brute_force_chi,
    chi_exact,
    clique_lower,
    dsatur_upper,
    is_clique,
    k_colorable,
    odd_cycle,
    search_coloring,
    structure_probe,
    verify_coloring,
)
from unitdist.geometry import UGraph, build_fp_graph


def cycle(n):
    return UGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return UGraph(n, itertools.combinations(range(n), 2))


def random_graph(rng, n, p=0.5):
    return UGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


graphs = st.integers(1, 9).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=30).map(
        lambda es: UGraph(n, [(i, j) for i, j in es if i != j])
    )
)

F3 = build_fp_graph(3, 2)
F11 = build_fp_graph(11, 2)
SPINDLE = fixture("moser_spindle").graph()


class TestVerify:
    def test_examples(self):
        assert verify_coloring(F3, Coloring(tuple((u + v) % 3 for u, v in F3.labels), 3))
        assert not verify_coloring(F3, Coloring((0,) * 9, 3))
        table = fixture("f11_table").data["table"]
        assert verify_coloring(F11, Coloring(tuple(table[x][y] for x, y in F11.labels), 5))

    def test_partial_and_out_of_range(self):
        with pytest.raises(ValueError):
            verify_coloring(F3, Coloring((0, 1), 3))
        assert not verify_coloring(cycle(4), Coloring((0, 1, 0, 5), 2))


class TestBounds:
    def test_dsatur_examples(self):
        assert dsatur_upper(cycle(9)).k == 3
        assert dsatur_upper(SPINDLE).k == 4
        assert dsatur_upper(UGraph(5, [])).k == 1

    def test_clique_examples(self):
        c = clique_lower(F3)
        assert len(c) == 3 and is_clique(F3, c)
        assert len(clique_lower(SPINDLE)) == 3
        assert len(clique_lower(fixture("c9_sqrt7").graph())) == 2

    @given(graphs)
    def test_bounds_sandwich(self, g):
        up = dsatur_upper(g)
        assert verify_coloring(g, up)
        cert = chi_exact(g)
        assert up.k >= cert.chi >= len(clique_lower(g))
        assert structure_probe(g).is_bipartite == (cert.chi <= 2)


class TestSearch:
    def test_k_colorable_examples(self):
        assert k_colorable(cycle(9), 2) is None
        assert k_colorable(SPINDLE, 3) is None
        c = k_colorable(F11, 5)
        assert c is not None and verify_coloring(F11, c)

    def test_budget_reports_unresolved(self):
        with pytest.raises(Unresolved):
            search_coloring(F11, 4, node_budget=50)
        with pytest.raises(ChiUnresolved) as info:
            chi_exact(F11, node_budget=50)
        assert info.value.lo <= 5 <= info.value.hi

    def test_canonical_is_deterministic(self):
        a = search_coloring(build_fp_graph(7, 2), 4)
        b = search_coloring(build_fp_graph(7, 2), 4)
        assert a.coloring == b.coloring and a.nodes == b.nodes

    def test_non_canonical_agrees(self):
        g = build_fp_graph(7, 2)
        assert not search_coloring(g, 3, canonical=False).sat
        assert search_coloring(g, 4, canonical=False).sat

    def test_parallel_mode(self):
        g = build_fp_graph(7, 2)
        out = search_coloring(g, 4, threads=2)
        assert out.sat and verify_coloring(g, out.coloring)
        assert not search_coloring(g, 3, threads=2).sat
        assert chi_exact(g, threads=2).chi == 4


class TestChi:
    def test_examples(self):
        c3 = chi_exact(F3)
        assert c3.chi == 3 and c3.lower.kind == "clique"
        sp = chi_exact(SPINDLE)
        assert sp.chi == 4 and sp.lower.kind == "exhaustive_unsat" and sp.lower.k == 3
        assert chi_exact(build_fp_graph(5, 2)).lower.kind == "odd_cycle"

    def test_f11(self):
        cert = chi_exact(F11, time_budget=600)
        assert cert.chi == 5 and cert.lower.kind == "exhaustive_unsat" and cert.lower.k == 4
        assert verify_coloring(F11, cert.upper)

    def test_brute_force_examples(self):
        assert brute_force_chi(complete(4)) == 4
        assert brute_force_chi(cycle(5)) == 3
        assert brute_force_chi(SPINDLE) == 4
        with pytest.raises(ValueError):
            brute_force_chi(F3, max_n=8)

    def test_agrees_with_brute_force(self):
        rng = random.Random(2024)
        for _ in range(200):
            g = random_graph(rng, rng.randint(1, 10))
            assert chi_exact(g).chi == brute_force_chi(g)

    def test_empty_and_edgeless(self):
        assert chi_exact(UGraph(0, [])).chi == 0
        assert chi_exact(UGraph(4, [])).chi == 1


class TestStructure:
    def test_examples(self):
        rep = structure_probe(fixture("c9_sqrt7").graph())
        assert rep.triangle_count == 0 and rep.shortest_odd_cycle == 9
        assert structure_probe(build_fp_graph(2, 2)).is_bipartite
        assert structure_probe(F3).triangle_count > 0

    @settings(max_examples=200)
    @given(graphs)
    def test_odd_cycle_is_a_cycle(self, g):
        cyc = odd_cycle(g)
        rep = structure_probe(g)
        assert (cyc is None) == rep.is_bipartite
        if cyc is not None:
            assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
            assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
            assert len(cyc) == rep.shortest_odd_cycle


class TestAgainstSat:
    """Cross-check k-colourability with an off-the-shelf SAT solver."""

    def _sat(self, g, k):
        pysat = pytest.importorskip("pysat.solvers")
        var = lambda v, c: v * k + c + 1  # noqa: E731
        with pysat.Solver(name="cadical153") as s:
            for v in range(g.n):
                s.add_clause([var(v, c) for c in range(k)])
            for i, j in g.edges:
                for c in range(k):
                    s.add_clause([-var(i, c), -var(j, c)])
            return s.solve()

    @pytest.mark.parametrize("p, chi", [(3, 3), (5, 3), (7, 4), (11, 5)])
    def test_fp_planes(self, p, chi):
        g = build_fp_graph(p, 2)
        assert chi_exact(g).chi == chi
        assert self._sat(g, chi) and not self._sat(g, chi - 1)

    def test_random_graphs(self):
        rng = random.Random(11)
        for _ in range(40):
            g = random_graph(rng, rng.randint(10, 30), 0.3)
            chi = chi_exact(g).chi
            assert self._sat(g, chi) and (chi == 1 or not self._sat(g, chi - 1))
