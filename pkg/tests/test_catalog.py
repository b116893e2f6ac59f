from __future__ import annotations

from fractions import Fraction as F

import pytest

from unitdist.catalog import (
    FIXTURE_NAMES,
    SQRT2_PRINTED_CLASS,
    canonical_serialization,
    fixture,
    fixture_sha256,
    pinned_fixture_names,
    pinned_hashes,
)
from unitdist.chromatic import Coloring, structure_probe, verify_coloring
from unitdist.exact import BiQuadElem, QuadElem
from unitdist.geometry import LORENTZ2


@pytest.mark.parametrize("name", pinned_fixture_names())
def test_pinned_hash(name):
    assert fixture_sha256(fixture(name)) == pinned_hashes()[name]


def test_every_pin_is_checked():
    assert set(pinned_hashes()) == set(pinned_fixture_names())


@pytest.mark.parametrize("name", pinned_fixture_names())
def test_exact_only(name):
    fx = fixture(name)
    for pt in fx.points:
        for c in pt:
            assert isinstance(c, (F, QuadElem, BiQuadElem))
    assert "." not in canonical_serialization(fx)


def test_unknown():
    with pytest.raises(ValueError):
        fixture("golomb")
    with pytest.raises(ValueError):
        fixture("lorentz_cycle")
    with pytest.raises(ValueError):
        fixture("lorentz_cycle", 2)
    assert "lorentz_cycle" in FIXTURE_NAMES


def test_f11_first_row():
    assert list(fixture("f11_table").data["table"][0]) == [3, 1, 0, 2, 1, 2, 3, 4, 2, 0, 1]


def test_sqrt2_quotient():
    fx = fixture("sqrt2_quotient")
    g, names = fx.graph(), fx.data["names"]
    assert {names[j] for j in g.neighbors(0)} == {"01", "10", "UU", "VV"}
    assert g.n == 16 and all(g.degree(i) == 4 for i in range(16))
    assert structure_probe(g).is_bipartite
    assert verify_coloring(g, Coloring(fx.data["corrected_coloring"], 2))
    # translation by any vertex (xor of Klein-group bits) is an automorphism
    assert all(g.has_edge(i ^ t, j ^ t) for i, j in g.edges for t in range(16))


def test_sqrt2_printed_class_has_an_edge():
    # the printed colour class contains both U0 and U1, which differ by (0, 1)
    fx = fixture("sqrt2_quotient")
    names = list(fx.data["names"])
    assert {"U0", "U1"} <= set(SQRT2_PRINTED_CLASS)
    assert fx.graph().has_edge(names.index("U0"), names.index("U1"))


def test_lorentz_cycle_3():
    fx = fixture("lorentz_cycle", 3)
    assert fx.form == LORENTZ2
    assert fx.points[-1] == (QuadElem(5, F(3, 2)), QuadElem(5, 0, F(1, 2)))
    assert fixture("lorentz_cycle_3") == fx
    g = fx.graph()
    assert g.m == 5 and all(g.degree(i) == 2 for i in range(5))


def test_lorentz_apex_needs_a_root():
    # k^2 - 4 is never a square for k >= 3, so the apex always needs a root
    for k in range(3, 30):
        assert fixture("lorentz_cycle", k).field.kind == "quad"


def test_c9():
    g = fixture("c9_sqrt7").graph()
    assert all(g.has_edge(i, (i + 1) % 9) for i in range(9)) and g.m == 9
    assert structure_probe(g).triangle_count == 0


def test_unit_identity():
    d = fixture("unit_identity").data
    assert d["unit"] * d["unit_inverse"] == 1
    assert d["unit"] * d["pi"] ** 2 * d["pi_conj"] ** 2 == 11
