"""Certificate JSON and an auditor that re-checks certificates from the raw
edge list.

Nothing here imports the solver: colourings, cliques and odd cycles are checked
directly, and exhaustive-search claims can be re-proved by a separate, plainly
written backtracking search.
"""
from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .chromatic import ChiCertificate, Coloring, LowerWitness

__all__ = [
    "certificate_to_dict",
    "certificate_to_json",
    "certificate_from_dict",
    "CheckReport",
    "check_certificate",
    "independent_unsat",
]

LOWER_KINDS = ("clique", "odd_cycle", "exhaustive_unsat")


def _dimacs_digest(n: int, edges: Sequence[tuple[int, int]]) -> str:
    text = f"p edge {n} {len(edges)}\n" + "".join(f"e {i + 1} {j + 1}\n" for i, j in edges)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def certificate_to_dict(g, cert: ChiCertificate) -> dict:
    # insertion order is the wire order
    return {
        "version": 1,
        "graph": {"n": g.n, "m": g.m, "dimacs_sha256": _dimacs_digest(g.n, g.edges)},
        "chi": cert.chi,
        "upper": {"k": cert.upper.k, "colors": list(cert.upper.colors)},
        "lower": {
            "kind": cert.lower.kind,
            "witness": list(cert.lower.witness),
            "k": cert.lower.k,
            "nodes": cert.lower.nodes,
        },
    }


def certificate_to_json(g, cert: ChiCertificate) -> str:
    return json.dumps(certificate_to_dict(g, cert), indent=2) + "\n"


def certificate_from_dict(d: dict) -> ChiCertificate:
    if d.get("version") != 1:
        raise ValueError(f"unsupported certificate version {d.get('version')!r}")
    lo = d["lower"]
    if lo["kind"] not in LOWER_KINDS:
        raise ValueError(f"unknown lower-bound kind {lo['kind']!r}")
    return ChiCertificate(
        d["chi"],
        Coloring(tuple(d["upper"]["colors"]), d["upper"]["k"]),
        LowerWitness(lo["kind"], tuple(lo["witness"]), lo["k"], lo.get("nodes", 0)),
    )


@dataclass
class CheckReport:
    ok: bool = True
    unsat_rechecked: bool | None = None
    messages: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.ok = False
        self.messages.append(msg)


def independent_unsat(n: int, edges: Sequence[tuple[int, int]], k: int, node_limit: int = 2_000_000):
    """Plain backtracking: is there no proper k-colouring?

    Returns True (none exists), False (found one) or None (node limit hit).
    Vertex order is fixed up front: repeatedly take the vertex with most
    already-ordered neighbours. Only the new-colour symmetry is used.
    """
    nb: list[set[int]] = [set() for _ in range(n)]
    for i, j in edges:
        nb[i].add(j)
        nb[j].add(i)
    order: list[int] = []
    placed = [False] * n
    weight = [0] * n
    for _ in range(n):
        v = max((u for u in range(n) if not placed[u]), key=lambda u: (weight[u], len(nb[u]), -u))
        placed[v] = True
        order.append(v)
        for u in nb[v]:
            weight[u] += 1
    color = [-1] * n
    count = 0

    def place(i: int, used: int):
        nonlocal count
        if i == n:
            return True
        v = order[i]
        taken = {color[u] for u in nb[v]}
        for c in range(min(k, used + 1)):
            if c in taken:
                continue
            count += 1
            if count > node_limit:
                raise OverflowError
            color[v] = c
            if place(i + 1, max(used, c + 1)):
                return True
            color[v] = -1
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, n + 100))
    try:
        return not place(0, 0)
    except OverflowError:
        return None
    finally:
        sys.setrecursionlimit(old)


def check_certificate(
    n: int,
    edges: Sequence[tuple[int, int]],
    cert: dict | ChiCertificate,
    recheck_unsat: bool = True,
    node_limit: int = 2_000_000,
) -> CheckReport:
    """Audit a certificate against a graph given as (n, edge list)."""
    rep = CheckReport()
    edges = sorted((min(i, j), max(i, j)) for i, j in edges)
    if isinstance(cert, dict):
        g = cert.get("graph", {})
        if g.get("n") != n or g.get("m") != len(edges):
            rep.fail(f"graph size mismatch: certificate says n={g.get('n')} m={g.get('m')}")
        if g.get("dimacs_sha256") not in (None, _dimacs_digest(n, edges)):
            rep.fail("DIMACS digest mismatch")
        try:
            cert = certificate_from_dict(cert)
        except (KeyError, TypeError, ValueError) as exc:
            rep.fail(f"malformed certificate: {exc}")
            return rep
    adj = set(edges)

    def adjacent(a, b):
        return (min(a, b), max(a, b)) in adj

    chi = cert.chi
    cols = cert.upper.colors
    if cert.upper.k != chi:
        rep.fail(f"upper colouring uses k={cert.upper.k}, chi={chi}")
    if len(cols) != n:
        rep.fail(f"upper colouring has {len(cols)} entries for {n} vertices")
    elif any(not 0 <= c < chi for c in cols):
        rep.fail("upper colouring has colours outside 0..chi-1")
    else:
        bad = [(i, j) for i, j in edges if cols[i] == cols[j]]
        if bad:
            rep.fail(f"monochromatic edge {bad[0]}")

    lo = cert.lower
    w = list(lo.witness)
    if lo.k != chi - 1:
        rep.fail(f"lower bound refutes k={lo.k}, expected chi-1={chi - 1}")
    if len(set(w)) != len(w) or any(not 0 <= v < n for v in w):
        rep.fail("witness vertices must be distinct and in range")
    if lo.kind == "clique":
        if len(w) != chi:
            rep.fail(f"clique of size {len(w)} cannot certify chi={chi}")
        for a in range(len(w)):
            for b in range(a + 1, len(w)):
                if not adjacent(w[a], w[b]):
                    rep.fail(f"clique vertices {w[a]}, {w[b]} not adjacent")
    elif lo.kind == "odd_cycle":
        if chi != 3 or len(w) % 2 == 0 or len(w) < 3:
            rep.fail("odd-cycle witness must have odd length and certify chi=3")
        for a in range(len(w)):
            if not adjacent(w[a], w[(a + 1) % len(w)]):
                rep.fail(f"cycle step {w[a]} -> {w[(a + 1) % len(w)]} is not an edge")
    elif lo.kind == "exhaustive_unsat":
        if recheck_unsat:
            res = independent_unsat(n, edges, lo.k, node_limit)
            rep.unsat_rechecked = res is not None
            if res is False:
                rep.fail(f"found a proper {lo.k}-colouring: exhaustive claim is false")
            elif res is None:
                rep.messages.append(f"unsat at k={lo.k} not re-proved within {node_limit} nodes")
    else:
        rep.fail(f"unknown witness kind {lo.kind!r}")
    return rep
