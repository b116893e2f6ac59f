"""Exact chromatic numbers with certificates.

The exact engine is a DSATUR-ordered backtracking search over colour domains
held as small bitmasks, with forward checking and the usual new-colour symmetry
breaking; in canonical mode the colours of a maximum (or greedy) clique are
fixed before branching.
"""
from __future__ import annotations

import heapq
import itertools
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .geometry import UGraph

__all__ = [
    "Coloring",
    "LowerWitness",
    "ChiCertificate",
    "StructureReport",
    "SearchOutcome",
    "Unresolved",
    "ChiUnresolved",
    "verify_coloring",
    "dsatur_upper",
    "clique_lower",
    "is_clique",
    "odd_cycle",
    "structure_probe",
    "search_coloring",
    "k_colorable",
    "chi_exact",
    "brute_force_chi",
]


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(int(c) for c in self.colors))

    @property
    def used(self) -> int:
        return len(set(self.colors))


def verify_coloring(g: UGraph, c: Coloring) -> bool:
    """True iff c assigns every vertex a colour in 0..k-1 and no edge is
    monochromatic."""
    if len(c.colors) != g.n:
        raise ValueError(f"coloring covers {len(c.colors)} of {g.n} vertices")
    if any(x < 0 or x >= c.k for x in c.colors):
        return False
    cols = c.colors
    return all(cols[i] != cols[j] for i, j in g.edges)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def dsatur_upper(g: UGraph) -> Coloring:
    """Greedy DSATUR colouring.

    Next vertex: highest saturation, then highest degree, then least index;
    it gets the least colour absent from its neighbourhood.
    """
    n = g.n
    if n == 0:
        return Coloring((), 0)
    deg = [g.degree(i) for i in range(n)]
    nbr_colors = [0] * n
    colors = [-1] * n
    heap = [(0, -deg[i], i) for i in range(n)]
    heapq.heapify(heap)
    sat = [0] * n
    nbrs = [g.neighbors(i) for i in range(n)]
    while heap:
        s, _, v = heapq.heappop(heap)
        if colors[v] >= 0 or -s != sat[v]:
            continue
        used = nbr_colors[v]
        c = 0
        while used >> c & 1:
            c += 1
        colors[v] = c
        for u in nbrs[v]:
            if colors[u] < 0 and not nbr_colors[u] >> c & 1:
                nbr_colors[u] |= 1 << c
                sat[u] += 1
                heapq.heappush(heap, (-sat[u], -deg[u], u))
    return Coloring(tuple(colors), max(colors) + 1)


def is_clique(g: UGraph, vertices: Sequence[int]) -> bool:
    return all(g.has_edge(i, j) for i, j in itertools.combinations(vertices, 2))


def _greedy_clique(g: UGraph, start: int) -> list[int]:
    clique = [start]
    cand = g.adj[start]
    while cand:
        # most neighbours inside the candidate set, then least index
        best, best_key = None, None
        for u in _bits(cand):
            key = (_popcount(g.adj[u] & cand), -u)
            if best_key is None or key > best_key:
                best, best_key = u, key
        clique.append(best)
        cand &= g.adj[best]
    return sorted(clique)


def _max_clique_exact(g: UGraph) -> list[int]:
    best: list[int] = []
    adj = g.adj

    def expand(current: list[int], cand: int):
        nonlocal best
        if not cand:
            if len(current) > len(best):
                best = list(current)
            return
        # greedy colouring bound on cand
        order, bounds = [], []
        uncol, color = cand, 0
        while uncol:
            color += 1
            q = uncol
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                uncol &= ~low
                order.append(v)
                bounds.append(color)
        for v, b in zip(reversed(order), reversed(bounds)):
            if len(current) + b <= len(best):
                return
            current.append(v)
            expand(current, cand & adj[v])
            current.pop()
            cand &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return sorted(best)


def clique_lower(g: UGraph, exact_below: int = 64) -> list[int]:
    """A clique of g: maximum when n < exact_below (branch and bound), else the
    best greedy clique over all start vertices followed by 1-swap search."""
    if g.n == 0:
        return []
    if g.n < exact_below:
        cl = _max_clique_exact(g)
    else:
        cl = max((_greedy_clique(g, v) for v in range(g.n)), key=lambda c: (len(c), [-x for x in c]))
        cl = _swap_improve(g, cl)
    assert is_clique(g, cl)
    return cl


def _swap_improve(g: UGraph, clique: list[int], rounds: int = 50) -> list[int]:
    """(1,2)-swaps: drop one vertex, add two mutually adjacent ones."""
    cur = list(clique)
    for _ in range(rounds):
        mask = 0
        for v in cur:
            mask |= 1 << v
        improved = False
        for drop in cur:
            rest = [v for v in cur if v != drop]
            common = (1 << g.n) - 1
            for v in rest:
                common &= g.adj[v]
            common &= ~mask
            cands = _bits(common)
            for a, b in itertools.combinations(cands, 2):
                if g.has_edge(a, b):
                    cur = sorted(rest + [a, b])
                    improved = True
                    break
            if improved:
                break
        if not improved:
            break
    return cur


@dataclass(frozen=True)
class StructureReport:
    is_bipartite: bool
    triangle_count: int
    shortest_odd_cycle: int | None


def _bfs(g: UGraph, root: int):
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[root] = 0
    q = deque([root])
    while q:
        v = q.popleft()
        for u in g.neighbors(v):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                parent[u] = v
                q.append(u)
    return dist, parent


def odd_cycle(g: UGraph) -> list[int] | None:
    """A shortest odd cycle as a vertex list (consecutive entries adjacent,
    last adjacent to first), or None if g is bipartite."""
    best = None
    for root in range(g.n):
        dist, parent = _bfs(g, root)
        for i, j in g.edges:
            if dist[i] >= 0 and dist[i] == dist[j]:
                length = 2 * dist[i] + 1
                if best is None or length < best[0]:
                    best = (length, root, i, j, parent)
        if best is not None and best[0] == 3:
            break
    if best is None:
        return None
    _, root, i, j, parent = best

    def path(v):
        out = [v]
        while out[-1] != root:
            out.append(parent[out[-1]])
        return out

    pi, pj = path(i), path(j)
    cycle = list(reversed(pi)) + pj[:-1]
    # a minimum-length odd closed walk is always a simple cycle
    assert len(set(cycle)) == len(cycle)
    return cycle


def structure_probe(g: UGraph) -> StructureReport:
    color = [-1] * g.n
    bipartite = True
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        q = deque([s])
        while q and bipartite:
            v = q.popleft()
            for u in g.neighbors(v):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    q.append(u)
                elif color[u] == color[v]:
                    bipartite = False
                    break
    triangles = sum(_popcount(g.adj[i] & g.adj[j]) for i, j in g.edges) // 3
    oc = None if bipartite else len(odd_cycle(g))
    return StructureReport(bipartite, triangles, oc)


# ---------------------------------------------------------------------------
# exact k-colourability


class Unresolved(RuntimeError):
    """The search hit its node or time budget before deciding."""

    def __init__(self, k: int, nodes: int, reason: str):
        self.k, self.nodes, self.reason = k, nodes, reason
        super().__init__(f"{k}-colourability unresolved after {nodes} nodes ({reason})")


@dataclass
class SearchOutcome:
    k: int
    coloring: Coloring | None
    nodes: int
    fixed: tuple[int, ...]
    options: dict = field(default_factory=dict)

    @property
    def sat(self) -> bool:
        return self.coloring is not None


def _search(
    nbrs: list[list[int]],
    k: int,
    fixed: Sequence[int],
    node_budget: int | None,
    deadline: float | None,
    first_branch: int | None = None,
):
    """Core DSATUR backtracking. Returns (colors or None, nodes); raises
    Unresolved on budget. `fixed` vertices get colours 0, 1, ... in order.

    If `first_branch` is given, only that candidate index is explored at the
    first branching vertex (used to split work between processes).
    """
    n = len(nbrs)
    full = (1 << k) - 1
    dom = [full] * n
    col = [-1] * n
    udeg = [len(a) for a in nbrs]
    trail: list[tuple[int, int]] = []  # (vertex, previous domain)
    uncolored = set(range(n))
    nodes = 0

    def assign(v: int, c: int) -> bool:
        col[v] = c
        uncolored.discard(v)
        bit = 1 << c
        ok = True
        for u in nbrs[v]:
            if col[u] < 0:
                udeg[u] -= 1
                d = dom[u]
                if d & bit:
                    trail.append((u, d))
                    d ^= bit
                    dom[u] = d
                    if not d:
                        ok = False
        return ok

    def unassign(v: int, mark: int):
        while len(trail) > mark:
            u, d = trail.pop()
            dom[u] = d
        for u in nbrs[v]:
            if col[u] < 0:
                udeg[u] += 1
        col[v] = -1
        uncolored.add(v)

    used = 0
    for c, v in enumerate(fixed):
        if c >= k or not (dom[v] >> c & 1):
            return None, nodes
        if not assign(v, c):
            return None, nodes
        used = c + 1

    # explicit stack of frames: [v, candidates, next index, trail mark, used before]
    stack: list[list] = []
    check_every = 4096
    while True:
        if not uncolored:
            return list(col), nodes
        allowed = (1 << min(k, used + 1)) - 1
        best, best_key = -1, None
        for u in uncolored:
            key = (_POP[dom[u] & allowed], -udeg[u], u)
            if best_key is None or key < best_key:
                best, best_key = u, key
        v = best
        d = dom[v] & allowed
        cands = _BITLIST[d]
        if first_branch is not None and not stack:
            cands = cands[first_branch : first_branch + 1]
        stack.append([v, cands, 0, len(trail), used])
        descended = False
        while stack:
            fr = stack[-1]
            v, cands, idx, mark, used_before = fr
            if col[v] >= 0:
                unassign(v, mark)
                used = used_before
            if idx == len(cands):
                stack.pop()
                continue
            c = cands[idx]
            fr[2] = idx + 1
            nodes += 1
            if deadline is not None and nodes % check_every == 0:
                if time.monotonic() > deadline:
                    raise Unresolved(k, nodes, "time budget")
            if node_budget is not None and nodes > node_budget:
                raise Unresolved(k, nodes, "node budget")
            if assign(v, c):
                used = max(used_before, c + 1)
                descended = True
                break
        if not descended:
            return None, nodes


_POP = [_popcount(i) for i in range(1 << 16)]
_BITLIST = [tuple(_bits(i)) for i in range(1 << 16)]
MAX_K = 16


def _split_worker(args):
    nbrs, k, fixed, node_budget, deadline, branch = args
    try:
        cols, nodes = _search(nbrs, k, fixed, node_budget, deadline, first_branch=branch)
    except Unresolved as exc:
        return branch, "unresolved", None, exc.nodes
    return branch, "done", cols, nodes


def search_coloring(
    g: UGraph,
    k: int,
    *,
    canonical: bool = True,
    clique: Sequence[int] | None = None,
    node_budget: int | None = None,
    time_budget: float | None = None,
    threads: int = 1,
) -> SearchOutcome:
    """Complete search for a proper k-colouring.

    Returns the outcome (colouring or definitive absence) with the node count;
    raises Unresolved if a budget runs out first.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > MAX_K:
        raise ValueError(f"k > {MAX_K} not supported by the exact engine")
    options = {"canonical": canonical, "order": "dsatur", "symmetry": "new-color",
               "clique_fixing": canonical}
    if g.n == 0:
        return SearchOutcome(k, Coloring((), k), 0, (), options)
    fixed: tuple[int, ...] = ()
    if canonical:
        fixed = tuple(clique if clique is not None else clique_lower(g))
        if len(fixed) > k:
            return SearchOutcome(k, None, 0, fixed, options)
    nbrs = [g.neighbors(i) for i in range(g.n)]
    deadline = None if time_budget is None else time.monotonic() + time_budget
    if threads > 1:
        cols, nodes = _parallel_search(nbrs, k, fixed, node_budget, deadline, threads)
    else:
        cols, nodes = _search(nbrs, k, fixed, node_budget, deadline)
    coloring = None if cols is None else Coloring(tuple(cols), k)
    if coloring is not None:
        assert verify_coloring(g, coloring)
    return SearchOutcome(k, coloring, nodes, fixed, options)


def _parallel_search(nbrs, k, fixed, node_budget, deadline, threads):
    """Split the first branching vertex's candidates over worker processes.

    The reported colouring is the one from the lowest branch index that
    succeeds, so the answer does not depend on scheduling.
    """
    branches = list(range(k))
    args = [(nbrs, k, fixed, node_budget, deadline, b) for b in branches]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = sorted(pool.map(_split_worker, args))
    total = sum(r[3] for r in results)
    for _, status, cols, _ in results:
        if status == "done" and cols is not None:
            return cols, total
    if any(status == "unresolved" for _, status, _, _ in results):
        raise Unresolved(k, total, "budget")
    return None, total


def k_colorable(g: UGraph, k: int, **kwargs) -> Coloring | None:
    """A proper k-colouring or None when none exists (complete search)."""
    return search_coloring(g, k, **kwargs).coloring


# ---------------------------------------------------------------------------
# chi with certificate


@dataclass(frozen=True)
class LowerWitness:
    """Evidence that chi > k.

    kind is "clique" (witness: k+1 pairwise adjacent vertices), "odd_cycle"
    (witness: an odd cycle, k = 2) or "exhaustive_unsat" (complete search found
    no k-colouring; witness empty, `nodes` and `options` allow a re-run).
    """

    kind: str
    witness: tuple[int, ...]
    k: int
    nodes: int = 0
    seed: int = 0
    options: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ChiCertificate:
    chi: int
    upper: Coloring
    lower: LowerWitness


class ChiUnresolved(RuntimeError):
    """Budget ran out; only bounds lo <= chi <= hi are known."""

    def __init__(self, lo: int, hi: int, upper: Coloring, lower: LowerWitness | None, cause):
        self.lo, self.hi, self.upper, self.lower = lo, hi, upper, lower
        super().__init__(f"chi unresolved: {lo} <= chi <= {hi} ({cause})")


def chi_exact(
    g: UGraph,
    *,
    node_budget: int | None = None,
    time_budget: float | None = None,
    threads: int = 1,
) -> ChiCertificate:
    """Chromatic number with an upper colouring and a lower-bound witness.

    Colourings are searched downward from the DSATUR bound, so the only
    expensive proof is the single refutation at chi - 1. Witness preference:
    clique of size chi, else odd cycle when chi = 3, else exhaustive search.
    """
    if g.n == 0:
        return ChiCertificate(0, Coloring((), 0), LowerWitness("clique", (), -1))
    upper = dsatur_upper(g)
    clique = clique_lower(g)
    lower = LowerWitness("clique", tuple(clique), len(clique) - 1)
    lo = len(clique)
    if lo < 3 and upper.k >= 3:
        cyc = odd_cycle(g)
        if cyc is not None:
            lower = LowerWitness("odd_cycle", tuple(cyc), 2)
            lo = 3
    deadline = None if time_budget is None else time.monotonic() + time_budget
    k = upper.k - 1
    while k >= lo:
        remaining = None if deadline is None else max(0.0, deadline - time.monotonic())
        try:
            out = search_coloring(
                g, k, clique=clique, node_budget=node_budget,
                time_budget=remaining, threads=threads,
            )
        except Unresolved as exc:
            raise ChiUnresolved(lo, upper.k, upper, lower, exc) from exc
        if out.sat:
            upper = Coloring(out.coloring.colors, k)
            k -= 1
            continue
        lower = LowerWitness("exhaustive_unsat", (), k, out.nodes, 0, out.options)
        break
    chi = upper.k
    if lower.kind != "exhaustive_unsat":
        assert lower.k + 1 == chi
    return ChiCertificate(chi, _compact(upper), lower)


def _compact(c: Coloring) -> Coloring:
    """Relabel colours in order of first appearance so exactly k are used."""
    relabel: dict[int, int] = {}
    for x in c.colors:
        relabel.setdefault(x, len(relabel))
    return Coloring(tuple(relabel[x] for x in c.colors), len(relabel))


def brute_force_chi(g: UGraph, max_n: int = 12) -> int:
    """Chromatic number by trying every assignment in range(k)**n for
    k = 1, 2, ... (vectorised in chunks). Test oracle only."""
    n = g.n
    if n > max_n:
        raise ValueError(f"brute force limited to n <= {max_n}")
    if n == 0:
        return 0
    if not g.edges:
        return 1
    ei = np.array([e[0] for e in g.edges])
    ej = np.array([e[1] for e in g.edges])
    for k in range(2, n + 1):
        total = k**n
        chunk = 1 << 20
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            digits = np.empty((idx.size, n), dtype=np.int8)
            for pos in range(n):
                digits[:, pos] = idx % k
                idx //= k
            ok = np.all(digits[:, ei] != digits[:, ej], axis=1)
            if ok.any():
                return k
    return n
