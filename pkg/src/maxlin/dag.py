"""Directed acyclic graphs: parsing, validation, reachability, closure poset."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .errors import BadVertexError, CyclicGraphError, DagSyntaxError
from .poset import Poset


@dataclass(frozen=True)
class Dag:
    """A validated DAG on vertices 1..n with an innovation state count k.

    Vertex labels are 1-indexed throughout, matching the file format.
    Acyclicity is checked once at construction, so downstream code never
    re-checks it.
    """

    n: int
    k: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    _parents: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _children: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BadVertexError(f"vertex count must be positive, got {self.n}")
        if self.k < 1:
            raise ValueError(f"state count must be >= 1, got {self.k}")
        up: list[list[int]] = [[] for _ in range(self.n)]
        down: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise CyclicGraphError(f"self-loop at vertex {u}")
            for w in (u, v):
                if not 1 <= w <= self.n:
                    raise BadVertexError(f"edge endpoint {w} outside 1..{self.n}")
            up[v - 1].append(u)
            down[u - 1].append(v)
        object.__setattr__(self, "_parents", tuple(tuple(sorted(l)) for l in up))
        object.__setattr__(self, "_children", tuple(tuple(sorted(l)) for l in down))
        topological_order(self)  # raises CyclicGraphError on a cycle

    def parents(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._parents[v - 1]

    def children(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._children[v - 1]

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise BadVertexError(f"vertex {v} outside 1..{self.n}")


def parse_dag(text: str) -> Dag:
    """Parse the DAG file format.

    Line 1 is "n k"; each later non-empty line is "u v" for an edge u -> v.
    "#" starts a comment; blank lines and extra whitespace are ignored.

    Raises:
        DagSyntaxError: malformed line or duplicate edge.
        CyclicGraphError: the edges admit no topological order.
        BadVertexError: an endpoint outside 1..n.
    """
    header: tuple[int, int] | None = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DagSyntaxError(f"line {lineno}: expected two integers, got {line!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise DagSyntaxError(f"line {lineno}: expected two integers, got {line!r}") from None
        if header is None:
            header = (a, b)
            continue
        if (a, b) in edges:
            raise DagSyntaxError(f"line {lineno}: duplicate edge {a} -> {b}")
        edges.add((a, b))
    if header is None:
        raise DagSyntaxError("empty input: missing 'n k' header line")
    n, k = header
    if k < 1:
        raise DagSyntaxError(f"state count must be >= 1, got {k}")
    return Dag(n=n, k=k, edges=frozenset(edges))


def serialize_dag(dag: Dag) -> str:
    """Inverse of parse_dag, edges emitted smallest-first."""
    lines = [f"{dag.n} {dag.k}"]
    lines.extend(f"{u} {v}" for u, v in sorted(dag.edges))
    return "\n".join(lines) + "\n"


def topological_order(dag: Dag) -> list[int]:
    """Kahn-style peeling with a smallest-label-first tie-break."""
    indegree = {v: 0 for v in range(1, dag.n + 1)}
    children: dict[int, list[int]] = {v: [] for v in range(1, dag.n + 1)}
    for u, v in dag.edges:
        indegree[v] += 1
        children[u].append(v)
    heap = [v for v, d in indegree.items() if d == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in children[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != dag.n:
        stuck = sorted(v for v, d in indegree.items() if d > 0)
        raise CyclicGraphError(f"no topological order: cycle through vertices {stuck}")
    return order


def ancestors(dag: Dag, v: int) -> frozenset[int]:
    """All u with a directed path u -> ... -> v, excluding v itself."""
    dag._check_vertex(v)
    seen: set[int] = set()
    stack = list(dag.parents(v))
    while stack:
        u = stack.pop()
        if u not in seen:
            seen.add(u)
            stack.extend(dag.parents(u))
    return frozenset(seen)


def transitive_closure(dag: Dag) -> Poset:
    """The reachability poset: j <= i iff j = i or there is a path j -> i."""
    pairs = {(v, v) for v in range(1, dag.n + 1)}
    for v in range(1, dag.n + 1):
        for u in ancestors(dag, v):
            pairs.add((u, v))
    return Poset(tuple(range(1, dag.n + 1)), frozenset(pairs))
