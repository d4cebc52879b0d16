"""Finite simple graphs on index vertex sets, generators, and products.

Vertices are always the indices 0..n-1 and adjacency is kept as a dense
boolean matrix, symmetric with a false diagonal.  Graphs are immutable
after construction, so every operation below returns a new value and is
safe to call concurrently.

Product graphs index the pair (u, v) as ``u * |V(H)| + v`` (row major,
u major).  The coloring constructions elsewhere in the package rely on
this ordering.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    CapacityError,
    DimensionError,
    DomainError,
    ParseError,
    ValidationError,
)

#: Largest n accepted by the omega family by default (2**n vertices).
OMEGA_CAP_DEFAULT = 10

GENERATOR_FAMILIES = ("complete", "cycle", "path", "empty", "petersen", "omega")


class ProductKind(str, Enum):
    """The five graph products."""

    CATEGORICAL = "categorical"
    CARTESIAN = "cartesian"
    STRONG = "strong"
    DISJUNCTIVE = "disjunctive"
    LEXICOGRAPHIC = "lexicographic"


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple undirected graph with dense boolean adjacency."""

    n: int
    adj: np.ndarray
    label: str = ""

    def __post_init__(self):
        adj = np.asarray(self.adj, dtype=bool)
        if self.n < 0:
            raise DomainError("vertex count must be nonnegative")
        if adj.shape != (self.n, self.n):
            raise DimensionError(
                f"adjacency shape {adj.shape} does not match n={self.n}"
            )
        if adj.size and not np.array_equal(adj, adj.T):
            raise ValidationError("adjacency matrix must be symmetric")
        if adj.size and adj.diagonal().any():
            raise ValidationError("self-loops are not allowed")
        adj = adj.copy()
        adj.setflags(write=False)
        object.__setattr__(self, "adj", adj)

    @property
    def edge_count(self) -> int:
        return int(np.triu(self.adj).sum())

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted (u, v) pairs with u < v."""
        return [tuple(e) for e in np.argwhere(np.triu(self.adj)).tolist()]

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1).astype(int)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def adjacency(self, dtype=float) -> np.ndarray:
        """A writable copy of the adjacency matrix in the given dtype."""
        return self.adj.astype(dtype)

    def key(self) -> tuple:
        """Hashable canonical identity, suitable for memo dictionaries."""
        return (self.n, np.packbits(self.adj).tobytes())

    def relabel(self, label: str) -> "Graph":
        return Graph(self.n, self.adj, label)

    def __repr__(self):  # pragma: no cover - debugging aid
        name = self.label or "graph"
        return f"Graph({name}, n={self.n}, m={self.edge_count})"


def graph_from_edges(n: int, edges, label: str = "") -> Graph:
    """Build a graph from an iterable of (u, v) pairs.

    Duplicate edges collapse; self-loops and out-of-range endpoints are
    rejected.
    """
    if n < 0:
        raise DomainError("vertex count must be nonnegative")
    adj = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        if u == v:
            raise ValidationError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge endpoint out of range: ({u}, {v})")
        adj[u, v] = adj[v, u] = True
    return Graph(n, adj, label)


def generate(family: str, size: int = 0, *, omega_cap: int = OMEGA_CAP_DEFAULT) -> Graph:
    """Named graph generator.

    Families: complete, cycle, path, empty, petersen (size ignored), and
    omega.  Omega n has all 2**n sign vectors as vertices, with vertex i
    encoding its sign vector through the binary digits of i (bit b set
    means coordinate b is -1); two vertices are adjacent exactly when
    their sign vectors are orthogonal.
    """
    if family not in GENERATOR_FAMILIES:
        raise DomainError(f"unknown graph family {family!r}")
    if size < 0:
        raise DomainError("size must be nonnegative")

    if family == "complete":
        adj = ~np.eye(size, dtype=bool)
        return Graph(size, adj, f"K_{size}")
    if family == "empty":
        return Graph(size, np.zeros((size, size), dtype=bool), f"empty_{size}")
    if family == "cycle":
        if size <= 1:
            return Graph(size, np.zeros((size, size), dtype=bool), f"C_{size}")
        edges = [(i, (i + 1) % size) for i in range(size)] if size >= 3 else [(0, 1)]
        return graph_from_edges(size, edges, f"C_{size}")
    if family == "path":
        edges = [(i, i + 1) for i in range(size - 1)]
        return graph_from_edges(size, edges, f"P_{size}")
    if family == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return graph_from_edges(10, outer + spokes + inner, "petersen")

    # omega family
    if size > omega_cap:
        raise CapacityError(
            f"omega size {size} exceeds cap {omega_cap} (2**{size} vertices)"
        )
    count = 1 << size
    ids = np.arange(count)
    popcount = np.array([bin(i).count("1") for i in range(count)])
    xor = np.bitwise_xor.outer(ids, ids)
    # <s_i, s_j> = size - 2 * popcount(i ^ j); adjacency is exact orthogonality
    adj = (2 * popcount[xor]) == size
    np.fill_diagonal(adj, False)
    return Graph(count, adj, f"omega_{size}")


def complement(G: Graph) -> Graph:
    """Graph whose edges are exactly the non-edges among distinct vertices."""
    adj = ~G.adj & ~np.eye(G.n, dtype=bool)
    label = f"~{G.label}" if G.label else ""
    return Graph(G.n, adj, label)


def product(kind: ProductKind | str, G: Graph, H: Graph) -> Graph:
    """One of the five products of G and H, on |V(G)|*|V(H)| vertices."""
    kind = ProductKind(kind)
    a = G.adj.astype(np.uint8)
    b = H.adj.astype(np.uint8)
    ig = np.eye(G.n, dtype=np.uint8)
    ih = np.eye(H.n, dtype=np.uint8)
    jg = np.ones((G.n, G.n), dtype=np.uint8)
    jh = np.ones((H.n, H.n), dtype=np.uint8)

    if kind is ProductKind.CATEGORICAL:
        adj = np.kron(a, b)
        sym = "x"
    elif kind is ProductKind.CARTESIAN:
        adj = np.kron(a, ih) | np.kron(ig, b)
        sym = "[]"
    elif kind is ProductKind.STRONG:
        adj = np.kron(a, b) | np.kron(a, ih) | np.kron(ig, b)
        sym = "<>"
    elif kind is ProductKind.DISJUNCTIVE:
        adj = np.kron(a, jh) | np.kron(jg, b)
        sym = "*"
    else:  # lexicographic: u1 ~ u2, or u1 = u2 and v1 ~ v2
        adj = np.kron(a, jh) | np.kron(ig, b)
        sym = "lex"
    # loopless factors leave every product diagonal false already; the
    # Graph validator double-checks
    label = f"({G.label}){sym}({H.label})" if G.label and H.label else ""
    return Graph(G.n * H.n, adj.astype(bool), label)


def union(G: Graph, H: Graph) -> Graph:
    """Edge union of two graphs on the same indexed vertex set."""
    if G.n != H.n:
        raise DimensionError(f"union needs equal vertex counts, got {G.n} and {H.n}")
    label = f"({G.label})u({H.label})" if G.label and H.label else ""
    return Graph(G.n, G.adj | H.adj, label)


def is_bipartite(G: Graph):
    """(flag, two-coloring) with a proper 2-coloring of every nonempty component.

    Returns (False, None) when the graph contains an odd cycle.
    """
    colors = np.full(G.n, -1, dtype=int)
    for start in range(G.n):
        if colors[start] >= 0:
            continue
        colors[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(G.adj[u]):
                if colors[v] < 0:
                    colors[v] = 1 - colors[u]
                    queue.append(v)
                elif colors[v] == colors[u]:
                    return False, None
    return True, colors


def remove_isolated(G: Graph):
    """Drop isolated vertices; returns (graph, old->new index map)."""
    keep = np.flatnonzero(G.degrees() > 0)
    mapping = {int(old): new for new, old in enumerate(keep)}
    adj = G.adj[np.ix_(keep, keep)]
    return Graph(len(keep), adj, G.label), mapping


def is_homomorphism(G: Graph, H: Graph, f) -> tuple[bool, tuple | None]:
    """Check that f maps every edge of G to an edge of H.

    Returns (True, None) or (False, witness_edge).
    """
    f = np.asarray(f, dtype=int)
    if f.shape != (G.n,):
        raise DimensionError("map must assign one target vertex per source vertex")
    if G.n and ((f < 0).any() or (f >= H.n).any()):
        raise DomainError("map image outside target vertex set")
    for u, v in G.edges():
        if not H.adj[f[u], f[v]]:
            return False, (u, v)
    return True, None


def erdos_renyi(n: int, p: float = 0.5, *, seed=None, rng=None, label: str = "") -> Graph:
    """G(n, p) sample from a seeded generator (deterministic given seed)."""
    if rng is None:
        rng = np.random.default_rng(seed)
    adj = np.zeros((n, n), dtype=bool)
    iu = np.triu_indices(n, k=1)
    draws = rng.random(len(iu[0])) < p
    adj[iu] = draws
    adj |= adj.T
    return Graph(n, adj, label or f"gnp_{n}")


# ---------------------------------------------------------------------------
# Edge-list text format: first line "n m", then m lines "u v" (0-based),
# whitespace separated; '#' starts a comment.  The writer emits edges in
# lexicographic order.


def parse_edge_list(text: str, label: str = "") -> Graph:
    """Parse the edge-list text format into a graph."""
    header = None
    n = m = 0
    adj = None
    seen_edges = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise ParseError(f"line {lineno}: expected header 'n m'", line=lineno)
            try:
                n, m = int(fields[0]), int(fields[1])
            except ValueError:
                raise ParseError(f"line {lineno}: header entries must be integers", line=lineno)
            if n < 0 or m < 0:
                raise ParseError(f"line {lineno}: negative header entry", line=lineno)
            header = (n, m)
            adj = np.zeros((n, n), dtype=bool)
            continue
        if len(fields) != 2:
            raise ParseError(f"line {lineno}: expected edge 'u v'", line=lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: edge endpoints must be integers", line=lineno)
        seen_edges += 1
        if seen_edges > m:
            raise ParseError(f"line {lineno}: more than {m} edges listed", line=lineno)
        if u == v:
            raise ValidationError(f"line {lineno}: self-loop at vertex {u}", line=lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(
                f"line {lineno}: endpoint out of range for n={n}: ({u}, {v})",
                line=lineno,
            )
        adj[u, v] = adj[v, u] = True
    if header is None:
        raise ParseError("empty graph file", line=1)
    if seen_edges != m:
        raise ParseError(f"header promised {m} edges but {seen_edges} were listed")
    return Graph(n, adj, label)


def write_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def load_graph(path, label: str = "") -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), label=label or str(path))


def save_graph(path, G: Graph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_edge_list(G))


def edge_hash(G: Graph) -> str:
    """Short stable digest of the canonical edge-list serialization."""
    return hashlib.sha256(write_edge_list(G).encode()).hexdigest()[:16]
