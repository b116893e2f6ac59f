"""Named exact constructions: the triangle, Moser spindle, odd cycles over
Q(sqrt 7) and Q(sqrt -5), Lorentzian cycles, the F_11 colour table, the
sixteen-vertex quotient graph for Q(sqrt 2), and the unit of Q(sqrt 3, sqrt 11).
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .exact import BiQuadElem, Field, QuadElem, parse_elem, squarefree_part, to_literal
from .geometry import EUCLIDEAN2, LORENTZ2, DiagForm, UGraph, build_exact_graph
from .reduction import f11_table, quad_val_ramified, sqrt2_class

__all__ = [
    "Fixture",
    "FIXTURE_NAMES",
    "fixture",
    "canonical_serialization",
    "fixture_sha256",
    "pinned_hashes",
    "pinned_fixture_names",
    "SPINDLE_EDGES",
]

FIXTURE_NAMES = (
    "triangle_sqrt3",
    "moser_spindle",
    "c9_sqrt7",
    "c5_sqrt_neg5",
    "lorentz_cycle",
    "lorentz_4cycle",
    "f11_table",
    "sqrt2_quotient",
    "unit_identity",
)

# P0P1, P0P2, P1P2, P1P3, P2P3, P0P4, P0P5, P4P5, P4P6, P5P6, P3P6
SPINDLE_EDGES = (
    (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (4, 5), (4, 6), (5, 6), (3, 6),
)


@dataclass(frozen=True)
class Fixture:
    name: str
    field: Field
    form: DiagForm = EUCLIDEAN2
    points: tuple = ()
    data: dict = field(default_factory=dict, compare=False)

    def graph(self) -> UGraph:
        if "graph" in self.data:
            return self.data["graph"]
        return build_exact_graph(self.points, self.form, name=self.name)


def _pts(fld: Field, rows):
    return tuple(tuple(parse_elem(c, fld) for c in row) for row in rows)


def _triangle_sqrt3() -> Fixture:
    f = Field("quad", 3)
    return Fixture("triangle_sqrt3", f, points=_pts(f, [("0", "0"), ("1", "0"), ("1/2", "1/2*sqrt(3)")]))


def _moser_spindle() -> Fixture:
    f = Field("biquad", 3, 11)
    rows = [
        ("0", "0"),
        ("1", "0"),
        ("1/2", "1/2*sqrt(3)"),
        ("3/2", "1/2*sqrt(3)"),
        ("5/6", "1/6*sqrt(11)"),
        ("5/12-1/12*sqrt(33)", "5/12*sqrt(3)+1/12*sqrt(11)"),
        ("5/4-1/12*sqrt(33)", "5/12*sqrt(3)+1/4*sqrt(11)"),
    ]
    return Fixture("moser_spindle", f, points=_pts(f, rows), data={"edges": SPINDLE_EDGES})


def _c9_sqrt7() -> Fixture:
    f = Field("quad", 7)
    top = "3/8*sqrt(7)"
    rows = [("0", "0"), ("1/8", top), ("1/4", "0"), ("3/8", top), ("1/2", "0"),
            ("5/8", top), ("3/4", "0"), ("7/8", top), ("1", "0")]
    return Fixture("c9_sqrt7", f, points=_pts(f, rows))


def _c5_sqrt_neg5() -> Fixture:
    f = Field("quad", -5)
    rows = [("0", "0"), ("1", "0"), ("2", "0"), ("3", "0"), ("3/2", "1/2*sqrt(-5)")]
    return Fixture("c5_sqrt_neg5", f, points=_pts(f, rows))


def lorentz_cycle(k: int) -> Fixture:
    """(i, 0) for 0 <= i <= k and the apex (k/2, sqrt(k^2 - 4)/2), which is at
    Lorentzian distance 1 from (0, 0) and (k, 0): a (k+2)-cycle."""
    if k < 3:
        raise ValueError("k must be >= 3")
    c, s = squarefree_part(k * k - 4)
    f = Field("quad", s)
    pts = [(f.coerce(i), f.zero()) for i in range(k + 1)]
    pts.append((f.coerce(Fraction(k, 2)), QuadElem(s, 0, Fraction(c, 2))))
    return Fixture(f"lorentz_cycle_{k}", f, LORENTZ2, tuple(pts), {"k": k})


def _lorentz_4cycle() -> Fixture:
    f = Field("q")
    return Fixture("lorentz_4cycle", f, LORENTZ2,
                   _pts(f, [("0", "0"), ("1", "0"), ("9/4", "3/4"), ("5/4", "3/4")]))


def _f11_table() -> Fixture:
    return Fixture("f11_table", Field("q"), data={"table": f11_table()})


SQRT2_LABELS = ("0", "1", "U", "V")
# the colour class of 00 exactly as printed (it contains the edge U0 -- U1)
SQRT2_PRINTED_CLASS = ("00", "11", "U0", "V1", "U1", "V0", "UV", "VU")
# same list with the two transposed entries U1 -> 1U, V0 -> 0V
SQRT2_CORRECTED_CLASS = ("00", "11", "U0", "V1", "1U", "0V", "UV", "VU")


def _sqrt2_quotient() -> Fixture:
    """Vertices {0, 1, U, V}^2 with U = 1/sqrt 2, V = U + 1; an edge when
    v(q(delta) - 1) >= 1 for the valuation with v(2) = 1."""
    reps = {
        "0": QuadElem(2, 0, 0),
        "1": QuadElem(2, 1, 0),
        "U": QuadElem(2, 0, Fraction(1, 2)),
        "V": QuadElem(2, 1, Fraction(1, 2)),
    }
    names = [a + b for a in SQRT2_LABELS for b in SQRT2_LABELS]
    points = tuple((reps[nm[0]], reps[nm[1]]) for nm in names)
    edges = []
    for i in range(16):
        for j in range(i + 1, 16):
            d = [b - a for a, b in zip(points[i], points[j])]
            if quad_val_ramified(EUCLIDEAN2(d) - 1, 2) >= 1:
                edges.append((i, j))
    g = UGraph(16, edges, names, name="sqrt2_quotient")
    for nm, pt in zip(names, points):
        assert "".join(SQRT2_LABELS[sqrt2_class(c)] for c in pt) == nm

    def coloring(cls0):
        return tuple(0 if nm in cls0 else 1 for nm in names)

    return Fixture("sqrt2_quotient", Field("quad", 2), points=points, data={
        "graph": g,
        "names": tuple(names),
        "printed_coloring": coloring(SQRT2_PRINTED_CLASS),
        "corrected_coloring": coloring(SQRT2_CORRECTED_CLASS),
    })


def _unit_identity() -> Fixture:
    f = Field("biquad", 3, 11)
    return Fixture("unit_identity", f, data={
        "unit": parse_elem("23+4*sqrt(33)", f),
        "unit_inverse": parse_elem("23-4*sqrt(33)", f),
        "pi": parse_elem("-5/2-1/2*sqrt(3)+1/2*sqrt(11)+1/2*sqrt(33)", f),
        "pi_conj": parse_elem("-5/2+1/2*sqrt(3)-1/2*sqrt(11)+1/2*sqrt(33)", f),
    })


_BUILDERS = {
    "triangle_sqrt3": _triangle_sqrt3,
    "moser_spindle": _moser_spindle,
    "c9_sqrt7": _c9_sqrt7,
    "c5_sqrt_neg5": _c5_sqrt_neg5,
    "lorentz_4cycle": _lorentz_4cycle,
    "f11_table": _f11_table,
    "sqrt2_quotient": _sqrt2_quotient,
    "unit_identity": _unit_identity,
}


def fixture(name: str, k: int | None = None) -> Fixture:
    """Build a fixture by name; 'lorentz_cycle' takes k (also 'lorentz_cycle_7')."""
    if name.startswith("lorentz_cycle"):
        if name != "lorentz_cycle":
            k = int(name.rsplit("_", 1)[1])
        if k is None:
            raise ValueError("lorentz_cycle needs k")
        return lorentz_cycle(k)
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}") from None


def _ser(v):
    if isinstance(v, (Fraction, QuadElem, BiQuadElem)):
        return to_literal(v)
    if isinstance(v, UGraph):
        return {"n": v.n, "edges": [list(e) for e in v.edges]}
    if isinstance(v, (tuple, list)):
        return [_ser(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _ser(x) for k, x in v.items()}
    return v


def canonical_serialization(fx: Fixture) -> str:
    body = {
        "name": fx.name,
        "field": str(fx.field),
        "form": list(fx.form.coefficients),
        "points": _ser(fx.points),
        "data": _ser(fx.data),
    }
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def fixture_sha256(fx: Fixture) -> str:
    return hashlib.sha256(canonical_serialization(fx).encode("utf-8")).hexdigest()


def pinned_hashes() -> dict[str, str]:
    text = resources.files("unitdist.data").joinpath("fixtures.sha256.json").read_text("utf-8")
    return json.loads(text)


def pinned_fixture_names() -> list[str]:
    names = [n for n in FIXTURE_NAMES if n != "lorentz_cycle"]
    return names + [f"lorentz_cycle_{k}" for k in range(3, 11)]
