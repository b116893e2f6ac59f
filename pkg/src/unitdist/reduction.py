"""Reduction of number-field planes to finite planes, made executable.

A point x of K^2 is coloured by: subtracting a canonical representative of its
class in K^2 / A^2 (A the valuation ring at a chosen prime), reducing the
now-integral point to the residue field, and looking up a colouring of the
finite plane. Unit vectors of K^2 are integral whenever the reduced form is
anisotropic, so neighbours share a representative and their reductions are
again neighbours.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .exact import (
    BiQuadElem,
    Field,
    HalfVal,
    QuadElem,
    _vp,
    quad_val_ramified,
    quad_val_split,
    rat_val,
)
from .geometry import EUCLIDEAN2, DiagForm, UGraph, build_fp_graph
from .numtheory import hensel_sqrt, is_prime, least_sqrt_mod, legendre

__all__ = [
    "PrimeSpec",
    "NonIntegralError",
    "OutsideDomainError",
    "anisotropic_fp",
    "anisotropic_mod_p2",
    "valuation",
    "class_representative",
    "reduce_scalar",
    "reduce_point",
    "edge_integrality_check",
    "sqrt2_class",
    "OracleId",
    "ORACLES",
    "color_oracle",
    "oracle_trace",
    "f11_table",
    "reduce_graph_hom",
    "HomReport",
]

RAMIFIED = "ramified"
SPLIT = "split"
BIQUAD_RAMIFIED = "biquad_ramified"
MOD_SQUARE = "mod_square"


@dataclass(frozen=True)
class PrimeSpec:
    """A prime of a small number field with residue field F_p.

    kind:
      ramified         Q(sqrt m), p | m exactly; sqrt m -> 0
      split            Q(sqrt m), m a nonzero square mod p; sqrt m -> root
      biquad_ramified  Q(sqrt m1, sqrt m2), p | m2, m1 a square mod p;
                       sqrt m1 -> root, sqrt m2 -> 0
      mod_square       Q at p, using the form modulo p^2 (the case p = 2)
    """

    p: int
    field: Field
    kind: str
    root: int | None = None

    def __post_init__(self):
        p, f = self.p, self.field
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if self.kind == RAMIFIED:
            if f.kind != "quad" or f.m1 % p or f.m1 % (p * p) == 0:
                raise ValueError(f"ramified spec needs Q(sqrt m) with p || m, got {f} at {p}")
        elif self.kind == SPLIT:
            if f.kind != "quad" or p == 2 or legendre(f.m1, p) != 1:
                raise ValueError(f"split spec needs m a nonzero square mod odd p, got {f} at {p}")
            root = least_sqrt_mod(f.m1, p) if self.root is None else self.root % p
            if (root * root - f.m1) % p:
                raise ValueError(f"{root}^2 != {f.m1} mod {p}")
            object.__setattr__(self, "root", root)
        elif self.kind == BIQUAD_RAMIFIED:
            if f.kind != "biquad" or p == 2 or f.m2 % p or legendre(f.m1, p) != 1:
                raise ValueError(f"biquad spec needs p | m2 and m1 a square mod p, got {f} at {p}")
            root = least_sqrt_mod(f.m1, p) if self.root is None else self.root % p
            if (root * root - f.m1) % p:
                raise ValueError(f"{root}^2 != {f.m1} mod {p}")
            object.__setattr__(self, "root", root)
        elif self.kind == MOD_SQUARE:
            if f.kind != "q":
                raise ValueError("mod_square spec is defined over Q")
        else:
            raise ValueError(f"unknown prime kind {self.kind!r}")

    @classmethod
    def ramified(cls, m: int, p: int) -> PrimeSpec:
        return cls(p, Field("quad", m), RAMIFIED)

    @classmethod
    def split(cls, m: int, p: int, root: int | None = None) -> PrimeSpec:
        return cls(p, Field("quad", m), SPLIT, root)

    @classmethod
    def biquad(cls, m1: int, m2: int, p: int, root: int | None = None) -> PrimeSpec:
        return cls(p, Field("biquad", m1, m2), BIQUAD_RAMIFIED, root)

    @classmethod
    def rational(cls, p: int) -> PrimeSpec:
        return cls(p, Field("q"), MOD_SQUARE)

    def __str__(self):
        root = f", root={self.root}" if self.root is not None else ""
        return f"{self.kind}({self.field} at {self.p}{root})"


class NonIntegralError(ValueError):
    pass


class OutsideDomainError(ValueError):
    pass


# ---------------------------------------------------------------------------
# anisotropy


def anisotropic_fp(form: DiagForm, p: int, budget: int = 10**6) -> bool:
    """No nonzero z in F_p^d with q(z) = 0 (brute force)."""
    if p**form.d > budget:
        raise ValueError(f"p^d = {p ** form.d} over budget")
    for z in itertools.product(range(p), repeat=form.d):
        if any(z) and form.mod(z, p) == 0:
            return False
    return True


def anisotropic_mod_p2(form: DiagForm, p: int, budget: int = 10**6) -> bool:
    """No z in (Z/p^2)^d, not all divisible by p, with q(z) = 0 mod p^2."""
    mod = p * p
    if mod**form.d > budget:
        raise ValueError(f"p^(2d) = {mod ** form.d} over budget")
    for z in itertools.product(range(mod), repeat=form.d):
        if all(x % p == 0 for x in z):
            continue
        if form.mod(z, mod) == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# valuations and representatives


def valuation(x, spec: PrimeSpec) -> HalfVal:
    f = spec.field
    x = f.coerce(x)
    if spec.kind == MOD_SQUARE:
        return rat_val(x, spec.p)
    if spec.kind == RAMIFIED:
        return quad_val_ramified(x, spec.p)
    if spec.kind == SPLIT:
        return quad_val_split(x, spec.p, spec.root)
    raise OutsideDomainError("valuations at the biquadratic prime are not implemented")


def _rat_rep(r: Fraction, p: int) -> Fraction:
    """c / p^k with 0 <= c < p^k and r - c/p^k p-integral."""
    if r == 0:
        return Fraction(0)
    v = _vp(r, p)
    if v >= 0:
        return Fraction(0)
    pk = p ** (-v)
    unit_den = r.denominator // pk
    c = r.numerator * pow(unit_den, -1, pk) % pk
    return Fraction(c, pk)


def _split_precision(x: QuadElem, p: int, extra: int) -> int:
    worst = 0
    for comp in (x.a, x.b):
        if comp:
            worst = max(worst, -_vp(comp, p))
    return worst + extra


def class_representative(x, spec: PrimeSpec, half_lattice: bool = False):
    """Canonical element of the class x + A (or x + (1/sqrt 2)A when
    `half_lattice`, only for Q(sqrt 2) at 2).

    The result depends only on the class, is idempotent, and x minus it is
    integral. Rational case: c / p^k with 0 <= c < p^k. Ramified: applied to both
    coordinates a and b. Split: the p-adic principal part of a + b*s computed
    with enough Hensel digits (a rational number).
    """
    f, p = spec.field, spec.p
    x = f.coerce(x)
    if spec.kind == MOD_SQUARE:
        return _rat_rep(x, p)
    if spec.kind == RAMIFIED:
        if half_lattice:
            if (f.m1, p) != (2, 2):
                raise ValueError("the half lattice is only used for Q(sqrt 2) at 2")
            return QuadElem(2, _rat_rep(x.a, 2), _rat_rep(2 * x.b, 2) / 2)
        return QuadElem(f.m1, _rat_rep(x.a, p), _rat_rep(x.b, p))
    if spec.kind == SPLIT:
        k = _split_precision(x, p, 0)
        if k <= 0:
            return QuadElem(f.m1, 0, 0)
        s = hensel_sqrt(f.m1, p, k, spec.root)
        return QuadElem(f.m1, _rat_rep(x.a + x.b * s, p), 0)
    # biquadratic: partial domain of p-integral components, on which A contains x
    if any(c and _vp(c, p) < 0 for c in x.coeffs):
        raise OutsideDomainError(
            f"{x} has a non-{p}-integral component; outside the supported domain"
        )
    return BiQuadElem(f.m1, f.m2)


def _mod_p(r: Fraction, p: int) -> int:
    return r.numerator * pow(r.denominator, -1, p) % p


def reduce_scalar(x, spec: PrimeSpec, index: int | None = None) -> int:
    """Residue of an integral scalar in F_p."""
    f, p = spec.field, spec.p
    x = f.coerce(x)
    where = "" if index is None else f"coordinate {index}: "
    if spec.kind == BIQUAD_RAMIFIED:
        for c in x.coeffs:
            if c and _vp(c, p) < 0:
                raise NonIntegralError(
                    f"{where}{x} has a component with {p}-adic valuation {_vp(c, p)} < 0"
                )
        return (_mod_p(x.a, p) + _mod_p(x.b, p) * spec.root) % p
    v = valuation(x, spec)
    if v < 0:
        raise NonIntegralError(f"{where}{x} has valuation {v.value} < 0 at {spec}")
    if spec.kind == MOD_SQUARE:
        return _mod_p(x, p)
    if spec.kind == RAMIFIED:
        return _mod_p(x.a, p)
    k = _split_precision(x, p, 1)
    s = hensel_sqrt(f.m1, p, max(k, 1), spec.root)
    return _mod_p(x.a + x.b * s, p)


def reduce_point(x: Sequence, spec: PrimeSpec) -> tuple[int, ...]:
    return tuple(reduce_scalar(c, spec, i) for i, c in enumerate(x))


def edge_integrality_check(x: Sequence, y: Sequence, spec: PrimeSpec, form: DiagForm = EUCLIDEAN2,
                           half_lattice: bool = False) -> bool:
    """For a unit-distance pair, whether every coordinate of y - x is integral
    (valuation >= 0, or >= -1/2 on the half lattice of Q(sqrt 2))."""
    f = spec.field
    delta = [f.coerce(b) - f.coerce(a) for a, b in zip(x, y)]
    if form(delta) != 1:
        raise ValueError("points are not at unit distance")
    bound = HalfVal(-1) if half_lattice else HalfVal(0)
    if spec.kind == BIQUAD_RAMIFIED:
        return all(all(c == 0 or _vp(c, spec.p) >= 0 for c in d.coeffs) for d in delta)
    return all(valuation(d, spec) >= bound for d in delta)


# ---------------------------------------------------------------------------
# Q(sqrt 2): classes of (1/sqrt 2)A modulo sqrt(2)A


SQRT2_CLASS_NAMES = ("0", "1", "U", "V")


def sqrt2_class(y: QuadElem) -> int:
    """Class of y in (1/sqrt 2)A / sqrt(2)A as 0, 1, U = 1/sqrt 2, V = U + 1,
    encoded 0..3 with bit 0 = (a mod 2) and bit 1 = (2b mod 2)."""
    if y.m != 2:
        raise ValueError("expected an element of Q(sqrt 2)")
    a, b2 = y.a, 2 * y.b
    for name, c in (("rational part", a), ("2 * sqrt(2) part", b2)):
        if c and _vp(c, 2) < 0:
            raise NonIntegralError(f"{y}: {name} is not 2-integral")
    return _mod_p(a, 2) | (_mod_p(b2, 2) << 1)


def _sqrt2_color(c1: int, c2: int) -> int:
    # the class of the origin takes colour 0; linear on the Klein group squared
    return ((c1 & 1) + (c2 & 1) + (c2 >> 1)) % 2


# ---------------------------------------------------------------------------
# oracles


@lru_cache(maxsize=1)
def f11_table() -> tuple[tuple[int, ...], ...]:
    text = resources.files("unitdist.data").joinpath("f11_table.txt").read_text("utf-8")
    rows = [tuple(int(t) for t in line.split()) for line in text.splitlines()
            if line.strip() and not line.startswith("#")]
    assert len(rows) == 11 and all(len(r) == 11 for r in rows)
    return tuple(rows)


class OracleId(enum.Enum):
    Q2COLOR = "q2"
    SQRT2_2COLOR = "sqrt2"
    SQRT3_3COLOR = "sqrt3"
    SQRT7_3COLOR = "sqrt7"
    SQRTNEG5_3COLOR = "sqrtneg5"
    BIQUAD_5COLOR = "biquad"

    @classmethod
    def parse(cls, text: str) -> OracleId:
        t = text.strip()
        for o in cls:
            if t.upper() == o.name or t.lower() == o.value:
                return o
        raise ValueError(f"unknown oracle {text!r}; choose from "
                         + ", ".join(o.value for o in cls))


@dataclass(frozen=True)
class Oracle:
    id: OracleId
    spec: PrimeSpec
    k: int
    half_lattice: bool = False

    @property
    def field(self) -> Field:
        return self.spec.field


ORACLES = {
    OracleId.Q2COLOR: Oracle(OracleId.Q2COLOR, PrimeSpec.rational(2), 2),
    OracleId.SQRT2_2COLOR: Oracle(OracleId.SQRT2_2COLOR, PrimeSpec.ramified(2, 2), 2, True),
    OracleId.SQRT3_3COLOR: Oracle(OracleId.SQRT3_3COLOR, PrimeSpec.ramified(3, 3), 3),
    # sqrt 7 -> 2 and sqrt(-5) -> 2 = -1 pick the primes (sqrt 7 - 2) and (3, sqrt(-5) + 1)
    OracleId.SQRT7_3COLOR: Oracle(OracleId.SQRT7_3COLOR, PrimeSpec.split(7, 3, root=2), 3),
    OracleId.SQRTNEG5_3COLOR: Oracle(OracleId.SQRTNEG5_3COLOR, PrimeSpec.split(-5, 3, root=2), 3),
    OracleId.BIQUAD_5COLOR: Oracle(OracleId.BIQUAD_5COLOR, PrimeSpec.biquad(3, 11, 11, root=5), 5),
}


def _residue_color(oracle: Oracle, pt: tuple[int, ...]) -> int:
    u, v = pt
    if oracle.k == 5:
        return f11_table()[u][v]
    return (u + v) % oracle.k


def oracle_trace(oracle_id: OracleId | str, x: Sequence) -> dict:
    """Colour of x with the intermediate steps: class representative, the
    reduced residue point and the residue colour."""
    if isinstance(oracle_id, str):
        oracle_id = OracleId.parse(oracle_id)
    oracle = ORACLES[oracle_id]
    f = oracle.field
    if len(x) != 2:
        raise ValueError("oracles colour points of the plane")
    try:
        pt = tuple(f.coerce(c) for c in x)
    except ValueError as exc:
        raise ValueError(f"point is not in {f}: {exc}") from None
    rep = tuple(class_representative(c, oracle.spec, oracle.half_lattice) for c in pt)
    shifted = tuple(c - r for c, r in zip(pt, rep))
    if oracle.half_lattice:
        residue = tuple(sqrt2_class(c) for c in shifted)
        color = _sqrt2_color(*residue)
        residue_names = "".join(SQRT2_CLASS_NAMES[c] for c in residue)
    else:
        residue = reduce_point(shifted, oracle.spec)
        color = _residue_color(oracle, residue)
        residue_names = None
    return {
        "oracle": oracle_id.name,
        "representative": rep,
        "residue": residue,
        "residue_names": residue_names,
        "color": color,
    }


def color_oracle(oracle_id: OracleId | str, x: Sequence) -> int:
    return oracle_trace(oracle_id, x)["color"]


# ---------------------------------------------------------------------------
# homomorphism reports


@dataclass
class HomReport:
    spec: PrimeSpec
    images: list[tuple[int, ...]]
    vertex_map: list[int]            # index into Gamma(F_p^d) in lexicographic order
    image_graph: UGraph
    edges_checked: int
    violations: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def reduce_graph_hom(points: Sequence[Sequence], spec: PrimeSpec, form: DiagForm = EUCLIDEAN2) -> HomReport:
    """Reduce every point and check that each unit-distance pair lands on an
    edge of Gamma(F_p^d, q mod p)."""
    p = spec.p
    f = spec.field
    pts = [tuple(f.coerce(c) for c in pt) for pt in points]
    images = [reduce_point(pt, spec) for pt in pts]
    d = form.d
    vertex_map = [sum(c * p ** (d - 1 - i) for i, c in enumerate(im)) for im in images]
    checked, bad = 0, []
    for i, j in itertools.combinations(range(len(pts)), 2):
        delta = [b - a for a, b in zip(pts[i], pts[j])]
        if form(delta) != 1:
            continue
        checked += 1
        dbar = [(b - a) % p for a, b in zip(images[i], images[j])]
        if form.mod(dbar, p) != 1 % p:
            bad.append((i, j))
    distinct = sorted(set(vertex_map))
    full = build_fp_graph(p, d, form) if p**d <= 10**6 else None
    if full is not None:
        image_graph = full.induced(distinct)
    else:
        image_graph = UGraph(len(distinct), [], [images[vertex_map.index(v)] for v in distinct])
    return HomReport(spec, images, vertex_map, image_graph, checked, bad)
