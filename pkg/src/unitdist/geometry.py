"""Unit-distance graphs over F_p^d and over exact point sets in number fields."""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exact import Field
from .numtheory import is_prime

__all__ = [
    "DiagForm",
    "EUCLIDEAN2",
    "LORENTZ2",
    "UGraph",
    "BudgetExceeded",
    "unit_sphere_fp",
    "build_fp_graph",
    "build_exact_graph",
    "point_field",
    "circle_param",
    "rotate_to_e1",
    "apply_matrix",
    "to_dimacs",
    "from_dimacs",
    "dimacs_sha256",
]


@dataclass(frozen=True)
class DiagForm:
    """q(x) = sum(c_i * x_i**2) with nonzero integer coefficients."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("a form needs at least one variable")
        if any(c == 0 for c in self.coefficients):
            raise ValueError("diagonal coefficients must be nonzero")

    @classmethod
    def euclidean(cls, d: int) -> DiagForm:
        return cls((1,) * d)

    @classmethod
    def parse(cls, text: str) -> DiagForm:
        return cls(tuple(int(s) for s in text.split(",")))

    @property
    def d(self) -> int:
        return len(self.coefficients)

    def __call__(self, vec: Sequence):
        if len(vec) != self.d:
            raise ValueError(f"vector of length {len(vec)} for a form in {self.d} variables")
        total = 0
        for c, x in zip(self.coefficients, vec):
            total = total + x * x * c
        return total

    def mod(self, vec: Sequence[int], p: int) -> int:
        return sum(c * x * x for c, x in zip(self.coefficients, vec)) % p

    def __str__(self):
        return ",".join(str(c) for c in self.coefficients)


EUCLIDEAN2 = DiagForm((1, 1))
LORENTZ2 = DiagForm((1, -1))


class BudgetExceeded(RuntimeError):
    pass


class UGraph:
    """Finite simple graph with a fixed vertex order.

    `adj[i]` is the neighbourhood of i as an int bitset; `edges` is the sorted
    list of pairs (i, j) with i < j. Both views are built once and agree.
    """

    __slots__ = ("n", "labels", "adj", "edges", "name")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels=None, name=""):
        adj = [0] * n
        es = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            i, j = min(i, j), max(i, j)
            es.add((i, j))
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self.n = n
        self.edges = sorted(es)
        self.adj = adj
        self.labels = list(labels) if labels is not None else list(range(n))
        if len(self.labels) != n:
            raise ValueError("one label per vertex required")
        self.name = name

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, i: int) -> list[int]:
        a, out = self.adj[i], []
        while a:
            low = a & -a
            out.append(low.bit_length() - 1)
            a ^= low
        return out

    def degree(self, i: int) -> int:
        return bin(self.adj[i]).count("1")

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def induced(self, vertices: Sequence[int]) -> UGraph:
        pos = {v: k for k, v in enumerate(vertices)}
        es = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        return UGraph(len(vertices), es, [self.labels[v] for v in vertices])

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<UGraph{tag} n={self.n} m={self.m}>"


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def unit_sphere_fp(p: int, d: int, form: DiagForm | None = None) -> list[tuple[int, ...]]:
    """All vectors of F_p^d with q(v) = 1, in lexicographic order."""
    _require_prime(p)
    form = form or DiagForm.euclidean(d)
    if form.d != d:
        raise ValueError("form dimension does not match d")
    return [v for v in itertools.product(range(p), repeat=d) if form.mod(v, p) == 1 % p]


def build_fp_graph(
    p: int, d: int, form: DiagForm | None = None, max_vertices: int = 10**6
) -> UGraph:
    """Gamma(F_p^d, q): vertices in lexicographic order, x ~ y iff q(y - x) = 1."""
    _require_prime(p)
    form = form or DiagForm.euclidean(d)
    n = p**d
    if n > max_vertices:
        raise BudgetExceeded(f"p^d = {n} exceeds the vertex budget {max_vertices}")
    sphere = unit_sphere_fp(p, d, form)
    coords = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(n, d)
    weights = p ** np.arange(d - 1, -1, -1, dtype=np.int64)
    edges = []
    for off in sphere:
        nbr = ((coords + np.array(off, dtype=np.int64)) % p) @ weights
        src = np.arange(n, dtype=np.int64)
        keep = src < nbr
        edges.extend(zip(src[keep].tolist(), nbr[keep].tolist()))
    labels = [tuple(row) for row in coords.tolist()]
    form_tag = "" if form == DiagForm.euclidean(d) else f", q={form}"
    g = UGraph(n, edges, labels, name=f"Gamma(F_{p}^{d}{form_tag})")
    deg = len(sphere)
    assert all(g.degree(i) == deg for i in range(n)), "translation-invariant graph must be regular"
    return g


def point_field(points: Sequence[Sequence]) -> Field:
    """Common field of a homogeneous point list (rationals embed anywhere)."""
    found: set[Field] = set()
    for pt in points:
        for x in pt:
            f = Field.of(x)
            if f.kind != "q":
                found.add(f)
    if len(found) > 1:
        raise ValueError(f"mixed scalar kinds: {sorted(map(str, found))}")
    return found.pop() if found else Field("q")


def build_exact_graph(points: Sequence[Sequence], form: DiagForm | None = None, name="") -> UGraph:
    """Unit-distance graph on an exact point list: {i, j} is an edge iff
    q(points[j] - points[i]) == 1 exactly. Every pair is tested."""
    if not points:
        return UGraph(0, [], name=name)
    d = len(points[0])
    if any(len(pt) != d for pt in points):
        raise ValueError("points of different dimensions")
    form = form or DiagForm.euclidean(d)
    if form.d != d:
        raise ValueError("form dimension does not match the points")
    fld = point_field(points)
    pts = [tuple(fld.coerce(x) for x in pt) for pt in points]
    edges = []
    for i, j in itertools.combinations(range(len(pts)), 2):
        delta = [b - a for a, b in zip(pts[i], pts[j])]
        if form(delta) == 1:
            edges.append((i, j))
    return UGraph(len(pts), edges, pts, name=name)


def circle_param(t, field: Field | None = None):
    """((1 - t^2)/(1 + t^2), 2t/(1 + t^2)), a point on x1^2 + x2^2 = 1."""
    fld = field or Field.of(t)
    t = fld.coerce(t)
    den = t * t + 1
    if not den:
        raise ZeroDivisionError("1 + t^2 = 0: no circle point for this t")
    return ((1 - t * t) / den, (t * 2) / den)


def rotate_to_e1(v: Sequence):
    """The rotation ((v1, v2), (-v2, v1)) taking the unit vector v to (1, 0)."""
    v1, v2 = v
    if v1 * v1 + v2 * v2 != 1:
        raise ValueError("v is not on the unit circle")
    return ((v1, v2), (-v2, v1))


def apply_matrix(mat, vec: Sequence) -> tuple:
    return tuple(sum((a * x for a, x in zip(row, vec)), 0 * vec[0]) for row in mat)


def to_dimacs(g: UGraph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {i + 1} {j + 1}" for i, j in g.edges)
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> UGraph:
    n, m, edges = None, None, []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ValueError(f"line {lineno}: bad problem line {line!r}")
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise ValueError(f"line {lineno}: unexpected {line!r}")
    if n is None:
        raise ValueError("missing 'p edge N M' line")
    g = UGraph(n, edges)
    if g.m != m:
        raise ValueError(f"header announces {m} edges, found {g.m} distinct")
    return g


def dimacs_sha256(g: UGraph) -> str:
    return hashlib.sha256(to_dimacs(g).encode("utf-8")).hexdigest()
