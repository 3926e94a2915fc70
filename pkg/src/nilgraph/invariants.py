"""Exact graph invariants by search, independent of any closed form.

Every search runs per connected component and the results are combined:
max for clique number and both chromatic numbers, min for girth, sum for
domination.  Component searches work on bitmasks over a local vertex
numbering.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .graph import BICLIQUE, COMPLETE, NilpotentGraph, components_classify, connected_components

INF = math.inf

DEFAULT_CLIQUE_CAP = 512
DEFAULT_DOMINATING_CAP = 512
DEFAULT_COLORING_CAP = 16


class CapExceeded(Exception):
    """An exact search was asked to run on a component larger than its cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: component of {size} vertices exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


def girth_json(g):
    return "inf" if g == INF else g


class _Local:
    """A component relabelled 0..k-1 with neighbour bitmasks."""

    def __init__(self, G: NilpotentGraph, comp):
        self.ids = tuple(comp)
        index = {v: i for i, v in enumerate(self.ids)}
        self.nbr = []
        for v in self.ids:
            mask = 0
            for w in G.adjacency[v]:
                mask |= 1 << index[w]
            self.nbr.append(mask)
        self.k = len(self.ids)
        self.full = (1 << self.k) - 1

    def unmask(self, mask):
        return [self.ids[i] for i in _bits(mask)]


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def girth(G: NilpotentGraph):
    """Shortest cycle length via BFS from every vertex; ``INF`` when acyclic."""
    best = INF
    for s in G.vertices:
        dist = {s: 0}
        parent = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for v in G.adjacency[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
        if best == 3:
            break
    return best


def _max_clique_local(loc: _Local) -> int:
    best = 0

    def expand(size, cand):
        nonlocal best
        if not cand:
            if size > best:
                best = size
            return
        if size + bin(cand).count("1") <= best:
            return
        pivot = max(_bits(cand), key=lambda u: bin(cand & loc.nbr[u]).count("1"))
        for v in list(_bits(cand & ~loc.nbr[pivot])):
            if size + bin(cand).count("1") <= best:
                return
            expand(size + 1, cand & loc.nbr[v])
            cand &= ~(1 << v)

    expand(0, loc.full)
    return best


def clique_number(G: NilpotentGraph, cap: int = DEFAULT_CLIQUE_CAP) -> int:
    """Exact ω by pivoted branch and bound, per component."""
    best = 0
    for comp in connected_components(G):
        if len(comp) > cap:
            raise CapExceeded("clique_number", len(comp), cap)
        best = max(best, _max_clique_local(_Local(G, comp)))
    return best


def _min_dominating_local(loc: _Local) -> int:
    closed = [loc.nbr[i] | (1 << i) for i in range(loc.k)]
    found = None

    def search(dominated, chosen, budget):
        nonlocal found
        if dominated == loc.full:
            found = chosen
            return True
        if budget == 0:
            return False
        undominated = loc.full & ~dominated
        u = (undominated & -undominated).bit_length() - 1
        # u must be covered by some member of its closed neighbourhood
        for v in _bits(closed[u]):
            if search(dominated | closed[v], chosen | (1 << v), budget - 1):
                return True
        return False

    for k in range(1, loc.k + 1):
        if search(0, 0, k):
            return k, found
    return 0, 0


def dominating_number(G: NilpotentGraph, cap: int = DEFAULT_DOMINATING_CAP):
    """Exact γ and one minimum dominating set, summed over components."""
    total = 0
    witness = []
    for comp in connected_components(G):
        if len(comp) > cap:
            raise CapExceeded("dominating_number", len(comp), cap)
        loc = _Local(G, comp)
        k, mask = _min_dominating_local(loc)
        total += k
        witness.extend(loc.unmask(mask))
    return total, tuple(sorted(witness))


def _edge_colour_search(k_vertices, edges, colours):
    """Backtracking proper edge colouring with ``colours`` colours, or None.

    Picks the uncoloured edge with the fewest free colours; among colours never
    used so far only the smallest is tried, which removes colour permutations.
    """
    m = len(edges)
    used = [0] * k_vertices
    colour = [-1] * m
    all_c = (1 << colours) - 1
    incident = [[] for _ in range(k_vertices)]
    for i, (a, b) in enumerate(edges):
        incident[a].append(i)
        incident[b].append(i)

    def pick():
        best, best_free, best_deg = -1, colours + 1, -1
        for i in range(m):
            if colour[i] >= 0:
                continue
            a, b = edges[i]
            free = bin(all_c & ~(used[a] | used[b])).count("1")
            if free < best_free or (free == best_free and len(incident[a]) + len(incident[b]) > best_deg):
                best, best_free, best_deg = i, free, len(incident[a]) + len(incident[b])
                if free == 0:
                    break
        return best

    def solve(done, highest):
        if done == m:
            return True
        i = pick()
        a, b = edges[i]
        free = all_c & ~(used[a] | used[b])
        for c in _bits(free):
            if c > highest + 1:
                break
            colour[i] = c
            used[a] |= 1 << c
            used[b] |= 1 << c
            if solve(done + 1, max(highest, c)):
                return True
            used[a] &= ~(1 << c)
            used[b] &= ~(1 << c)
            colour[i] = -1
        return False

    if solve(0, -1):
        return colour
    return None


def _component_edge_index(G, comp):
    index = {v: i for i, v in enumerate(comp)}
    edges = [(index[u], index[v]) for u in comp for v in G.adjacency[u] if u < v]
    return edges


def component_chromatic_index(G: NilpotentGraph, comp, lower: int = 0) -> tuple[int, dict]:
    """Exact χ′ of one component together with a certifying colouring."""
    edges = _component_edge_index(G, comp)
    if not edges:
        return 0, {}
    deg = [0] * len(comp)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    delta = max(deg)
    # each colour class is a matching of at most floor(k/2) edges
    matching = len(comp) // 2
    start = max(delta, lower, -(-len(edges) // matching))
    for k in range(start, delta + 2):
        colouring = _edge_colour_search(len(comp), edges, k)
        if colouring is not None:
            out = {(comp[a], comp[b]): c for (a, b), c in zip(edges, colouring)}
            _assert_proper(out)
            return k, out
    raise AssertionError("no (Δ+1)-edge-colouring found; Vizing's bound violated")


def _assert_proper(colouring: dict):
    seen = set()
    for (u, v), c in colouring.items():
        for end in (u, v):
            if (end, c) in seen:
                raise AssertionError(f"colour {c} repeated at vertex {end}")
            seen.add((end, c))


@dataclass(frozen=True)
class ChromaticIndex:
    chi_prime: int
    delta: int

    @property
    def vizing_class(self) -> int:
        return 1 if self.chi_prime == self.delta else 2


def chromatic_index(G: NilpotentGraph, cap: int = DEFAULT_COLORING_CAP) -> ChromaticIndex:
    """Exact chromatic index; class 1 iff it equals Δ of the whole graph."""
    decomposition = components_classify(G)
    chi = 0
    for c in decomposition.components:
        if c.edge_count == 0:
            continue
        if c.size > cap:
            raise CapExceeded("chromatic_index", c.size, cap)
        # a regular biclique K_{t,t} needs at least t colours
        lower = len(c.parts[0]) if c.kind == BICLIQUE else 0
        chi = max(chi, component_chromatic_index(G, c.vertices, lower)[0])
    return ChromaticIndex(chi, G.max_degree())


@dataclass(frozen=True)
class SumColouring:
    colouring: dict
    colours: frozenset

    @property
    def count(self) -> int:
        return len(self.colours)


def constructive_edge_coloring(G: NilpotentGraph) -> SumColouring:
    """Colour edge {x, y} by the nilpotent element ``x + y``.

    Two edges at x with one colour would give x + y = x + z, so y = z; the
    resulting colouring is proper with ``|colours| <= |Nil(R)|``.
    """
    R = G.ring
    colouring = {(u, v): R.add(u, v) for u, v in G.edges}
    _assert_proper(colouring)
    colours = frozenset(colouring.values())
    if not colours <= G.nil.as_set:
        raise AssertionError("an edge colour is not nilpotent")
    return SumColouring(colouring, colours)


def _greedy_colours(loc: _Local) -> int:
    # DSATUR
    colour = [-1] * loc.k
    for _ in range(loc.k):
        best, key = -1, None
        for v in range(loc.k):
            if colour[v] >= 0:
                continue
            sat = len({colour[w] for w in _bits(loc.nbr[v]) if colour[w] >= 0})
            cand = (sat, bin(loc.nbr[v]).count("1"))
            if key is None or cand > key:
                best, key = v, cand
        taken = {colour[w] for w in _bits(loc.nbr[best])}
        c = 0
        while c in taken:
            c += 1
        colour[best] = c
    return max(colour) + 1 if loc.k else 0


def _colourable(loc: _Local, k: int) -> bool:
    colour = [-1] * loc.k
    order = sorted(range(loc.k), key=lambda v: -bin(loc.nbr[v]).count("1"))

    def solve(pos, highest):
        if pos == loc.k:
            return True
        v = order[pos]
        taken = {colour[w] for w in _bits(loc.nbr[v]) if colour[w] >= 0}
        for c in range(min(k, highest + 2)):
            if c not in taken:
                colour[v] = c
                if solve(pos + 1, max(highest, c)):
                    return True
                colour[v] = -1
        return False

    return solve(0, -1)


def component_vertex_chromatic(G: NilpotentGraph, comp, cap: int = DEFAULT_COLORING_CAP) -> int:
    """Exact χ of one component: clique lower bound, DSATUR upper bound, then backtracking."""
    loc = _Local(G, comp)
    lower = _max_clique_local(loc)
    upper = _greedy_colours(loc)
    for k in range(lower, upper):
        if loc.k > cap:
            raise CapExceeded("vertex_chromatic_number", loc.k, cap)
        if _colourable(loc, k):
            return k
    return upper


def vertex_chromatic_number(G: NilpotentGraph, cap: int = DEFAULT_COLORING_CAP, validate: bool = False) -> int:
    """Exact χ of the whole graph.

    CompleteK(t) components short-circuit to t and bicliques to 2; with
    ``validate`` the exact search runs on those too and must agree.
    """
    best = 0
    for c in components_classify(G).components:
        if c.kind == COMPLETE:
            value = c.size
        elif c.kind == BICLIQUE:
            value = 2 if c.edge_count else 1
        else:
            value = None
        if value is None or validate:
            exact = component_vertex_chromatic(G, c.vertices, cap)
            if value is not None and exact != value:
                raise AssertionError(f"shortcut χ={value} disagrees with search χ={exact} on {c.shape}")
            value = exact
        best = max(best, value)
    return best


@dataclass
class InvariantReport:
    girth: float | int | None = None
    omega: int | None = None
    gamma: int | None = None
    gamma_witness: tuple = ()
    chi_prime: int | None = None
    delta: int = 0
    chi: int | None = None
    vizing_class: int | None = None
    skipped: dict | None = None

    def to_json(self) -> dict:
        return {
            "girth": None if self.girth is None else girth_json(self.girth),
            "omega": self.omega,
            "gamma": self.gamma,
            "chi_prime": self.chi_prime,
            "delta": self.delta,
            "chi": self.chi,
            "vizing_class": self.vizing_class,
            "skipped": dict(sorted((self.skipped or {}).items())),
        }


def compute_invariants(
    G: NilpotentGraph,
    clique_cap: int = DEFAULT_CLIQUE_CAP,
    dominating_cap: int = DEFAULT_DOMINATING_CAP,
    coloring_cap: int = DEFAULT_COLORING_CAP,
) -> InvariantReport:
    """All invariants; a cap overflow leaves the field None and records why."""
    report = InvariantReport(girth=girth(G), delta=G.max_degree(), skipped={})
    try:
        report.omega = clique_number(G, clique_cap)
    except CapExceeded as exc:
        report.skipped["omega"] = str(exc)
    try:
        report.gamma, report.gamma_witness = dominating_number(G, dominating_cap)
    except CapExceeded as exc:
        report.skipped["gamma"] = str(exc)
    try:
        ci = chromatic_index(G, coloring_cap)
        report.chi_prime, report.vizing_class = ci.chi_prime, ci.vizing_class
    except CapExceeded as exc:
        report.skipped["chi_prime"] = str(exc)
    try:
        report.chi = vertex_chromatic_number(G, coloring_cap)
    except CapExceeded as exc:
        report.skipped["chi"] = str(exc)
    return report
