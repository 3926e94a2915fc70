"""Nilpotent graph construction, component analysis and DOT export."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .ring import FiniteRing, NilData, nil_set

COMPLETE = "complete"
BICLIQUE = "biclique"
OTHER = "other"


@dataclass(frozen=True, eq=False)
class NilpotentGraph:
    ring: FiniteRing
    nil: NilData
    vertices: tuple[int, ...]
    adjacency: dict  # vertex -> sorted tuple of neighbours

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in self.vertices for v in self.adjacency[u] if u < v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbour_sets(self) -> dict:
        return {v: frozenset(nb) for v, nb in self.adjacency.items()}

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbour_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adjacency.values()), default=0)

    def doubles_nilpotent(self, x: int) -> bool:
        return self.ring.add(x, x) in self.nil

    def __repr__(self):
        return f"NilpotentGraph({self.ring.spec}, |V|={len(self.vertices)}, |E|={self.edge_count})"


def build_graph(R: FiniteRing, nil: NilData | None = None) -> NilpotentGraph:
    """Vertices R∖Nil(R); distinct x, y adjacent when x + y is nilpotent.

    Neighbours of x are exactly ``n - x`` for n in Nil(R), minus x itself.
    """
    nil = nil or nil_set(R)
    vertices = tuple(x for x in R.elements() if x not in nil)
    adjacency = {}
    for x in vertices:
        nb = {R.sub(n, x) for n in nil.nilpotent_ids}
        nb.discard(x)
        adjacency[x] = tuple(sorted(nb))
    return NilpotentGraph(R, nil, vertices, adjacency)


@dataclass(frozen=True)
class DegreeCheck:
    rows: tuple[tuple[int, int, int], ...]  # (vertex, actual, predicted)

    @property
    def all_match(self) -> bool:
        return all(a == p for _, a, p in self.rows)

    @property
    def matching(self) -> int:
        return sum(a == p for _, a, p in self.rows)


def degree_check(G: NilpotentGraph) -> DegreeCheck:
    """Compare counted degrees with ``t - 1`` (2x nilpotent) or ``t`` otherwise."""
    t = G.nil.t
    rows = []
    for x in G.vertices:
        predicted = t - 1 if G.doubles_nilpotent(x) else t
        rows.append((x, G.degree(x), predicted))
    return DegreeCheck(tuple(rows))


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    kind: str
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None = None
    edge_count: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def shape(self) -> str:
        if self.kind == COMPLETE:
            return f"K{self.size}"
        if self.kind == BICLIQUE:
            a, b = self.parts
            return f"K{len(a)},{len(b)}"
        return "Other"

    def to_json(self, label=str):
        out = {"shape": self.shape, "kind": self.kind, "vertices": [label(v) for v in self.vertices]}
        if self.parts is not None:
            out["parts"] = [[label(v) for v in p] for p in self.parts]
        return out


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Component, ...]

    @property
    def m_biclique(self) -> int:
        return sum(c.kind == BICLIQUE for c in self.components)

    @property
    def shapes(self) -> tuple[str, ...]:
        return tuple(c.shape for c in self.components)

    def summary(self) -> str:
        """Canonical ``count x shape`` text, e.g. ``1xK2 + 2xK2,2``."""
        counts: dict[str, int] = {}
        for c in self.components:
            counts[c.shape] = counts.get(c.shape, 0) + 1
        keys = sorted(counts, key=_shape_key)
        return " + ".join(f"{counts[k]}x{k}" for k in keys) or "empty"


def _shape_key(shape: str):
    if shape.startswith("K") and "," not in shape:
        return (0, int(shape[1:]), 0)
    if shape.startswith("K"):
        a, b = shape[1:].split(",")
        return (1, int(a), int(b))
    return (2, 0, 0)


def connected_components(G: NilpotentGraph) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for s in G.vertices:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in G.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        out.append(tuple(sorted(comp)))
    return out


def _two_colour(G: NilpotentGraph, comp) -> dict | None:
    colour = {comp[0]: 0}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for v in G.adjacency[u]:
            if v not in colour:
                colour[v] = 1 - colour[u]
                queue.append(v)
            elif colour[v] == colour[u]:
                return None
    return colour


def _classify(G: NilpotentGraph, comp: tuple[int, ...]) -> Component:
    members = set(comp)
    internal = sum(1 for u in comp for v in G.adjacency[u] if v in members) // 2
    k = len(comp)
    complete = internal == k * (k - 1) // 2
    if complete and all(G.doubles_nilpotent(x) for x in comp):
        return Component(comp, COMPLETE, None, internal)
    colour = _two_colour(G, comp)
    if colour is not None:
        p = tuple(v for v in comp if colour[v] == 0)
        q = tuple(v for v in comp if colour[v] == 1)
        if internal == len(p) * len(q):
            return Component(comp, BICLIQUE, (p, q), internal)
    return Component(comp, OTHER, None, internal)


def components_classify(G: NilpotentGraph) -> ComponentDecomposition:
    """Split into connected components and tag each CompleteK, Biclique or Other.

    A clique counts as CompleteK only when every member has a nilpotent
    double, so a two-vertex component {x, -x} with 2x ∉ Nil is Biclique(1,1).
    """
    return ComponentDecomposition(tuple(_classify(G, c) for c in connected_components(G)))


def is_bipartite_with_parts(G: NilpotentGraph):
    """Two-colour every component by BFS layering.

    Returns ``(True, (part_a, part_b))`` or ``(False, odd_cycle)`` where the
    cycle is a vertex list whose consecutive entries (and last/first) are adjacent.
    """
    colour: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    depth: dict[int, int] = {}
    for s in G.vertices:
        if s in colour:
            continue
        colour[s], parent[s], depth[s] = 0, None, 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in G.adjacency[u]:
                if v not in colour:
                    colour[v] = 1 - colour[u]
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif colour[v] == colour[u]:
                    return False, _odd_cycle(u, v, parent, depth)
    a = tuple(v for v in G.vertices if colour[v] == 0)
    b = tuple(v for v in G.vertices if colour[v] == 1)
    return True, (a, b)


def _odd_cycle(u, v, parent, depth):
    left, right = [u], [v]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    right.pop()
    return left + right[::-1]


def to_dot(G: NilpotentGraph) -> str:
    R = G.ring
    name = R.spec.canonical_text
    lines = [f'graph "G({name})" {{']
    for v in G.vertices:
        lines.append(f'  {v} [label="{R.label(v)}"];')
    for u, v in G.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_json(G: NilpotentGraph) -> dict:
    R = G.ring
    return {
        "ring": R.spec.canonical_text,
        "order": R.order,
        "nil": [R.label(x) for x in G.nil.nilpotent_ids],
        "vertex_count": len(G.vertices),
        "edge_count": G.edge_count,
        "edges": [[R.label(u), R.label(v)] for u, v in G.edges],
    }
