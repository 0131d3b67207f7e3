"""Free-vertex collapses of graphs: the invariants ℓ, A and W."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import SizeError

DEFAULT_BRANCH_BOUND = 8


@dataclass(frozen=True)
class Graph:
    """A simple graph on {0, ..., nvertices-1}; isolated vertices are allowed."""

    nvertices: int
    edges: frozenset

    def __init__(self, nvertices: int, edges=()):
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < nvertices and 0 <= v < nvertices):
                raise ValueError(f"edge {e} leaves the vertex set 0..{nvertices - 1}")
            es.add((min(u, v), max(u, v)))
        object.__setattr__(self, "nvertices", nvertices)
        object.__setattr__(self, "edges", frozenset(es))

    @classmethod
    def from_complex(cls, delta) -> "Graph":
        if delta.dimension > 1:
            raise ValueError("complex has faces of dimension > 1")
        return cls(delta.nvertices, [tuple(sorted(f)) for f in delta.faces_of_dimension(1)])

    def to_complex(self):
        from .simplicial import SimplicialComplex

        return SimplicialComplex.from_edges(self.nvertices, self.edges)

    @property
    def n(self) -> int:
        """Largest vertex index."""
        return self.nvertices - 1

    def neighbors(self, v: int, W=None) -> set:
        out = {b if a == v else a for a, b in self.edges if v in (a, b)}
        return out if W is None else out & set(W)

    def degree(self, v: int, W=None) -> int:
        return len(self.neighbors(v, W))

    def is_free(self, v: int, W=None) -> bool:
        return self.degree(v, W) == 1

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def __str__(self):
        return f"Graph({self.nvertices}, {sorted(self.edges)})"


@dataclass(frozen=True)
class CollapseResult:
    ell: int
    removed: tuple
    core: frozenset

    def invariant(self) -> tuple:
        """(ℓ, A as a set, W): the removal order is not an invariant."""
        return (self.ell, frozenset(self.removed), self.core)


def free_vertices(G: Graph, W=None) -> list:
    """Vertices of the induced graph on ``W`` with degree exactly one."""
    W = set(range(G.nvertices)) if W is None else set(W)
    deg = dict.fromkeys(W, 0)
    for a, b in G.edges:
        if a in W and b in W:
            deg[a] += 1
            deg[b] += 1
    return sorted(v for v, d in deg.items() if d == 1)


def collapse(G: Graph) -> CollapseResult:
    """Remove free vertices (smallest index first) until none is left."""
    W = set(range(G.nvertices))
    removed = []
    while True:
        free = free_vertices(G, W)
        if not free:
            break
        v = free[0]
        removed.append(v)
        W.discard(v)
    return CollapseResult(len(removed), tuple(removed), frozenset(W))


def collapse_all_branches(G: Graph, bound: int = DEFAULT_BRANCH_BOUND) -> set:
    """Every terminal outcome over all free-vertex choice sequences.

    Outcomes are returned with ``removed`` sorted, since only the set A is
    meaningful across branches.  Intermediate states are memoised on the
    remaining vertex set.
    """
    if G.nvertices > bound:
        raise SizeError(f"{G.nvertices} vertices exceed the branching bound {bound}")
    full = frozenset(range(G.nvertices))
    seen = set()
    stack = [full]
    outcomes = set()
    while stack:
        W = stack.pop()
        if W in seen:
            continue
        seen.add(W)
        free = free_vertices(G, W)
        if not free:
            A = full - W
            outcomes.add(CollapseResult(len(A), tuple(sorted(A)), W))
            continue
        for v in free:
            stack.append(W - {v})
    return outcomes


def is_connected(G: Graph) -> bool:
    if G.nvertices == 0:
        return True
    seen = {0}
    stack = [0]
    adj = {v: set() for v in range(G.nvertices)}
    for a, b in G.edges:
        adj[a].add(b)
        adj[b].add(a)
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == G.nvertices


def is_tree(G: Graph) -> bool:
    return is_connected(G) and len(G.edges) == G.nvertices - 1


def all_graphs(nvertices: int):
    """Every labelled simple graph on ``nvertices`` vertices."""
    pairs = list(combinations(range(nvertices), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(nvertices, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def connected_graphs(nvertices: int):
    for G in all_graphs(nvertices):
        if is_connected(G):
            yield G


# named graphs used throughout the tests and the built-in corpus


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def star_graph(k: int, center: int | None = None) -> Graph:
    c = k - 1 if center is None else center
    return Graph(k, [(c, v) for v in range(k) if v != c])
