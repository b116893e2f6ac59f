from __future__ import annotations

import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import padic_rationals
from unitdist.catalog import fixture
from unitdist.exact import BiQuadElem, Field, QuadElem, parse_elem, rat_val
from unitdist.geometry import EUCLIDEAN2, DiagForm, apply_matrix, circle_param, rotate_to_e1
from unitdist.numtheory import primes_upto
from unitdist.reduction import (
    ORACLES,
    NonIntegralError,
    OracleId,
    OutsideDomainError,
    PrimeSpec,
    anisotropic_fp,
    anisotropic_mod_p2,
    class_representative,
    color_oracle,
    edge_integrality_check,
    oracle_trace,
    reduce_graph_hom,
    reduce_point,
    sqrt2_class,
    valuation,
)

SQRT3 = PrimeSpec.ramified(3, 3)
SQRT7 = PrimeSpec.split(7, 3, root=2)
BIQUAD = PrimeSpec.biquad(3, 11, 11, root=5)


class TestAnisotropy:
    def test_examples(self):
        assert anisotropic_fp(EUCLIDEAN2, 3)
        assert not anisotropic_fp(EUCLIDEAN2, 5)
        assert not anisotropic_fp(DiagForm.euclidean(3), 3)
        assert anisotropic_mod_p2(EUCLIDEAN2, 2)
        assert not anisotropic_mod_p2(EUCLIDEAN2, 5)
        assert anisotropic_mod_p2(EUCLIDEAN2, 3)

    @pytest.mark.parametrize("p", [p for p in primes_upto(200) if p > 2])
    def test_plane_anisotropic_iff_3_mod_4(self, p):
        assert anisotropic_fp(EUCLIDEAN2, p) == (p % 4 == 3)


class TestPrimeSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            PrimeSpec.split(3, 3)
        with pytest.raises(ValueError):
            PrimeSpec.ramified(7, 3)
        with pytest.raises(ValueError):
            PrimeSpec.split(7, 3, root=0)
        assert PrimeSpec.split(7, 3).root == 1


class TestRepresentatives:
    def test_examples(self):
        spec = PrimeSpec.rational(3)
        assert class_representative(F(22, 9), spec) == F(4, 9)
        assert class_representative(F(5, 7), spec) == 0
        x = QuadElem(3, F(1, 3), F(5, 9))
        assert class_representative(x, SQRT3) == x

    @pytest.mark.parametrize("spec", [PrimeSpec.rational(2), PrimeSpec.rational(3), SQRT3, SQRT7,
                                      PrimeSpec.ramified(2, 2), PrimeSpec.split(-5, 3, root=2)])
    def test_properties(self, spec):
        rng = random.Random(str(spec))
        p, f = spec.p, spec.field

        def rr():
            return F(rng.randint(-500, 500), rng.randint(1, 30) * p ** rng.randint(0, 4))

        def elem():
            return rr() if f.kind == "q" else QuadElem(f.m1, rr(), rr())

        def integral():
            # p-integral elements: denominators prime to p
            def r():
                d = rng.randint(1, 30)
                while d % p == 0:
                    d += 1
                return F(rng.randint(-500, 500), d)
            return r() if f.kind == "q" else QuadElem(f.m1, r(), r())

        for _ in range(10_000 if spec.p == 3 and f.kind == "q" else 2_000):
            x = elem()
            rep = class_representative(x, spec)
            assert valuation(x - rep, spec) >= 0
            assert class_representative(rep, spec) == rep
            assert class_representative(x + integral(), spec) == rep

    def test_half_lattice(self):
        spec = PrimeSpec.ramified(2, 2)
        x = QuadElem(2, F(3, 4), F(5, 8))
        rep = class_representative(x, spec, half_lattice=True)
        assert valuation(x - rep, spec) >= F(-1, 2)
        assert class_representative(rep, spec, half_lattice=True) == rep


class TestReducePoint:
    def test_examples(self):
        f7, f3 = Field("quad", 7), Field("quad", 3)
        assert reduce_point((F(1, 8), parse_elem("3/8*sqrt(7)", f7)), SQRT7) == (2, 0)
        p4 = fixture("moser_spindle").points[4]
        assert reduce_point(p4, BIQUAD) == (10, 0)
        assert reduce_point((F(1, 2), parse_elem("1/2*sqrt(3)", f3)), SQRT3) == (2, 0)

    def test_non_integral_names_coordinate(self):
        with pytest.raises(NonIntegralError) as info:
            reduce_point((F(1), QuadElem(3, F(1, 3))), SQRT3)
        assert "coordinate 1" in str(info.value) and "-1" in str(info.value)

    def test_biquad_domain(self):
        with pytest.raises(NonIntegralError):
            reduce_point((BiQuadElem(3, 11, F(1, 11)), 0), BIQUAD)
        with pytest.raises(OutsideDomainError):
            class_representative(BiQuadElem(3, 11, F(1, 11)), BIQUAD)
        with pytest.raises(OutsideDomainError):
            color_oracle("biquad", (BiQuadElem(3, 11, 0, F(1, 11)), 0))


class TestEdgeIntegrality:
    def test_examples(self):
        f3 = Field("quad", 3)
        for t in (F(1, 2), F(7, 3), QuadElem(3, F(2, 9), F(-1, 3))):
            d = circle_param(f3.coerce(t))
            assert edge_integrality_check((f3.zero(), f3.zero()), d, SQRT3)
        u = QuadElem(2, 0, F(1, 2))
        sq2 = PrimeSpec.ramified(2, 2)
        assert edge_integrality_check((0, 0), (u, u), sq2, half_lattice=True)
        assert not edge_integrality_check((0, 0), (u, u), sq2)
        assert edge_integrality_check((0, 0), (F(3, 5), F(4, 5)), PrimeSpec.rational(2))

    def test_requires_unit_pair(self):
        with pytest.raises(ValueError):
            edge_integrality_check((0, 0), (1, 1), PrimeSpec.rational(2))

    @given(padic_rationals(3), padic_rationals(3))
    def test_unit_vectors_are_integral_over_sqrt7(self, a, b):
        d = circle_param(QuadElem(7, a, b))
        assert edge_integrality_check((0, 0), d, SQRT7)


class TestOracles:
    def test_examples(self):
        tri = fixture("triangle_sqrt3").points
        assert [color_oracle(OracleId.SQRT3_3COLOR, p) for p in tri] == [0, 1, 2]
        u = QuadElem(2, 0, F(1, 2))
        assert color_oracle("sqrt2", (0, 0)) != color_oracle("sqrt2", (u, u))
        assert color_oracle("q2", (0, 0)) == 0 and color_oracle("q2", (F(3, 5), F(4, 5))) == 1

    def test_trace(self):
        tr = oracle_trace("sqrt3", (F(1, 2), parse_elem("1/2*sqrt(3)")))
        assert tr["residue"] == (2, 0) and tr["color"] == 2
        tr = oracle_trace("sqrt2", (QuadElem(2, 0, F(1, 2)), 1))
        assert tr["residue_names"] == "U1"

    def test_parse(self):
        assert OracleId.parse("SQRT7_3COLOR") is OracleId.parse("sqrt7")
        with pytest.raises(ValueError):
            OracleId.parse("sqrt5")

    def test_sqrt2_color_matches_quotient_coloring(self):
        fx = fixture("sqrt2_quotient")
        for idx, pt in enumerate(fx.points):
            assert color_oracle("sqrt2", pt) == fx.data["corrected_coloring"][idx]
            assert 4 * sqrt2_class(pt[0]) + sqrt2_class(pt[1]) == idx

    def test_spindle_biquad_colors(self):
        fx = fixture("moser_spindle")
        cols = [color_oracle("biquad", p) for p in fx.points]
        assert all(cols[i] != cols[j] for i, j in fx.graph().edges)

    @pytest.mark.parametrize("oid, m", [("q2", None), ("sqrt2", 2), ("sqrt3", 3), ("sqrt7", 7), ("sqrtneg5", -5)])
    def test_soundness_sample(self, oid, m):
        rng = random.Random(oid)
        p = ORACLES[OracleId.parse(oid)].spec.p

        def r():
            return F(rng.randint(-60, 60), rng.randint(1, 20) * p ** rng.randint(0, 3))

        def e():
            return r() if m is None else QuadElem(m, r(), r())

        for _ in range(500):
            v = circle_param(e())
            if m in (7, -5):
                inv = tuple(zip(*rotate_to_e1(circle_param(e()))))  # inverse rotation = transpose
                v = apply_matrix(inv, v)
            x = (e(), e())
            y = (x[0] + v[0], x[1] + v[1])
            assert color_oracle(oid, x) != color_oracle(oid, y)

    def test_a_wrong_coloring_is_caught(self):
        # colouring by u alone instead of u + v is not proper on Gamma(F_3^2)
        rng = random.Random(1)
        spec = SQRT3
        bad = 0
        for _ in range(200):
            t = QuadElem(3, F(rng.randint(-9, 9), rng.randint(1, 9)), F(rng.randint(-9, 9), rng.randint(1, 9)))
            d = circle_param(t)
            x = (QuadElem(3, F(rng.randint(0, 8))), QuadElem(3, 0))
            y = (x[0] + d[0], x[1] + d[1])
            ux = reduce_point(tuple(c - class_representative(c, spec) for c in x), spec)[0]
            uy = reduce_point(tuple(c - class_representative(c, spec) for c in y), spec)[0]
            bad += ux == uy
        assert bad > 0


class TestHomomorphisms:
    def test_c9_to_f3(self):
        rep = reduce_graph_hom(fixture("c9_sqrt7").points, SQRT7)
        assert rep.ok and rep.edges_checked == 9
        assert rep.images[:3] == [(0, 0), (2, 0), (1, 0)]

    def test_spindle_to_f11(self):
        rep = reduce_graph_hom(fixture("moser_spindle").points, BIQUAD)
        assert rep.ok and rep.edges_checked == 11
        assert rep.images[1][0] - rep.images[0][0] == 1

    def test_triangle_to_f3_triangle(self):
        rep = reduce_graph_hom(fixture("triangle_sqrt3").points, SQRT3)
        assert rep.ok and rep.images == [(0, 0), (1, 0), (2, 0)]
        assert rep.image_graph.m == 3

    def test_other_root_also_works(self):
        assert reduce_graph_hom(fixture("moser_spindle").points, PrimeSpec.biquad(3, 11, 11, root=6)).ok
        assert reduce_graph_hom(fixture("c9_sqrt7").points, PrimeSpec.split(7, 3, root=1)).ok

    def test_rational_valuation_consistency(self):
        assert valuation(F(9, 2), PrimeSpec.rational(3)) == rat_val(F(9, 2), 3)
