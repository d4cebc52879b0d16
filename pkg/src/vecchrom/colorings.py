"""Vector colorings: constructions, transformations, and verification.

A (strict) vector k-coloring assigns a unit vector to every vertex so
that each edge's inner product equals (is at most) -1/(k-1).  The
strict/non-strict distinction is carried explicitly on the value: the
two notions differ only in "equals" versus "at most", and silent
coercion between them is a historical source of confusion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, FeasibilityError
from .graphs import Graph
from .linalg import eig_sym, kron

UNIT_NORM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class VectorColoring:
    """Unit vectors (rows) with a target value k and strictness flag."""

    vectors: np.ndarray
    k: float
    strict: bool

    def __post_init__(self):
        vectors = np.asarray(self.vectors, dtype=float)
        if vectors.ndim != 2:
            raise DomainError("vectors must form a 2-d array (one row per vertex)")
        if self.k <= 1.0:
            raise DomainError(f"target value k must exceed 1, got {self.k}")
        if vectors.shape[0]:
            norms = np.linalg.norm(vectors, axis=1)
            worst = float(np.abs(norms - 1.0).max())
            if worst > UNIT_NORM_TOL:
                raise DomainError(f"vectors must be unit norm (off by {worst:.3e})")
        vectors = vectors.copy()
        vectors.setflags(write=False)
        object.__setattr__(self, "vectors", vectors)

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def edge_target(self) -> float:
        return -1.0 / (self.k - 1.0)


@dataclass(frozen=True, eq=False)
class ClassicalColoring:
    """Vertex colors in 0..m-1."""

    colors: np.ndarray
    m: int

    def __post_init__(self):
        colors = np.asarray(self.colors, dtype=int)
        if self.m <= 0:
            raise DomainError("number of colors must be positive")
        if colors.size and (colors.min() < 0 or colors.max() >= self.m):
            raise DomainError("colors outside 0..m-1")
        colors = colors.copy()
        colors.setflags(write=False)
        object.__setattr__(self, "colors", colors)


@dataclass
class ColoringReport:
    ok: bool
    k: float
    strict: bool
    worst_edge: tuple | None
    worst_residual: float
    worst_norm_residual: float


def simplex_coloring(n: int) -> VectorColoring:
    """The n vertices of the regular simplex in dimension n-1.

    All pairwise inner products equal -1/(n-1); this is a strict vector
    n-coloring of the complete graph.
    """
    if n < 2:
        raise DomainError("simplex coloring needs n >= 2")
    # rows of the Helmert matrix span the orthogonal complement of the
    # all-ones vector; centered standard basis vectors expressed there
    W = np.zeros((n - 1, n))
    for k in range(1, n):
        W[k - 1, :k] = 1.0
        W[k - 1, k] = -float(k)
        W[k - 1] /= np.sqrt(k * (k + 1.0))
    vectors = W.T * np.sqrt(n / (n - 1.0))
    norms = np.linalg.norm(vectors, axis=1)
    vectors = vectors / norms[:, None]
    return VectorColoring(vectors, float(n), strict=True)


def verify_coloring(G: Graph, c: VectorColoring, tol: float = 1e-6) -> ColoringReport:
    """Check the edge inner-product condition of a coloring against G.

    Strict colorings must hit -1/(k-1) exactly (within tol) on every
    edge; non-strict ones must stay at or below it.  Failures come back
    in the report with the worst edge, never as exceptions.
    """
    if c.n != G.n:
        raise DimensionError(f"coloring covers {c.n} vertices, graph has {G.n}")
    norms = np.linalg.norm(c.vectors, axis=1) if c.n else np.array([])
    worst_norm = float(np.abs(norms - 1.0).max()) if c.n else 0.0
    target = c.edge_target
    worst_edge = None
    worst_res = 0.0
    gram = c.vectors @ c.vectors.T if c.n else np.zeros((0, 0))
    for u, v in G.edges():
        inner = float(gram[u, v])
        res = abs(inner - target) if c.strict else max(inner - target, 0.0)
        if res > worst_res:
            worst_res = res
            worst_edge = (u, v)
    ok = worst_res <= tol and worst_norm <= max(tol, UNIT_NORM_TOL)
    return ColoringReport(ok, c.k, c.strict, worst_edge, worst_res, worst_norm)


def extract_coloring(M, lam: float, tol: float = 1e-6, *, strict: bool = True) -> VectorColoring:
    """Turn a feasible primal SDP matrix into a vector coloring.

    M must have constant diagonal lam - 1 (within tol) and be PSD within
    tol; the Gram vectors, scaled back to unit norm, then color every
    graph whose primal program M solved.
    """
    M = np.asarray(M, dtype=float)
    if lam <= 1.0 + tol:
        raise DomainError(f"degenerate target value lam = {lam}")
    diag = np.diag(M)
    dev = float(np.abs(diag - (lam - 1.0)).max())
    if dev > tol * max(1.0, lam):
        raise FeasibilityError(
            f"diagonal must equal lam - 1 = {lam - 1.0:.6f}; worst deviation {dev:.3e}"
        )
    spec = eig_sym(M)
    if spec.least < -tol * max(1.0, spec.greatest):
        raise FeasibilityError(f"matrix is not PSD within tolerance: {spec.least:.3e}")
    keep = spec.eigenvalues > tol * spec.greatest
    if not keep.any():
        raise FeasibilityError("matrix has no significant eigenvalues")
    vals = spec.eigenvalues[keep]
    vectors = spec.eigenvectors[:, keep] * np.sqrt(vals)
    vectors /= np.sqrt(lam - 1.0)
    # SDP noise leaves norms off by about the solver tolerance
    vectors /= np.linalg.norm(vectors, axis=1)[:, None]
    return VectorColoring(vectors, float(lam), strict=strict)


def lift_coloring(c: VectorColoring, k_target: float) -> VectorColoring:
    """Re-target a strict coloring at a larger value.

    Appends one coordinate: with t = -1/(k-1) and t' = -1/(k'-1), the
    map phi' = (alpha phi, sqrt(1 - alpha^2)) with
    alpha^2 = (t' - 1)/(t - 1) is a strict vector k'-coloring.
    """
    if not c.strict:
        raise DomainError("only strict colorings lift")
    if k_target < c.k:
        raise DomainError(f"cannot lift from k = {c.k} down to {k_target}")
    t = -1.0 / (c.k - 1.0)
    t_prime = -1.0 / (k_target - 1.0)
    alpha = np.sqrt((t_prime - 1.0) / (t - 1.0))
    extra = np.sqrt(max(1.0 - alpha * alpha, 0.0))
    vectors = np.hstack([alpha * c.vectors, np.full((c.n, 1), extra)])
    return VectorColoring(vectors, float(k_target), strict=True)


def cartesian_tensor_coloring(cG: VectorColoring, cH: VectorColoring) -> VectorColoring:
    """Tensor coloring (u, v) -> g(u) x h(v) of the Cartesian product.

    Both inputs must be strict and share the same k; lift the smaller
    one first.  The product vertex (u, v) is indexed u * nH + v.
    """
    if not (cG.strict and cH.strict):
        raise DomainError("tensor construction needs strict colorings")
    if cG.k != cH.k:
        raise DomainError(
            f"values differ ({cG.k} vs {cH.k}); lift the smaller coloring first"
        )
    vectors = np.zeros((cG.n * cH.n, cG.dim * cH.dim))
    for u in range(cG.n):
        for v in range(cH.n):
            vectors[u * cH.n + v] = kron(cG.vectors[u], cH.vectors[v])
    return VectorColoring(vectors, cG.k, strict=True)


def modular_coloring(gc: ClassicalColoring, hc: ClassicalColoring) -> ClassicalColoring:
    """Color (u, v) of the Cartesian product by (g(u) + h(v)) mod m."""
    if gc.m != hc.m:
        raise DomainError(f"color counts differ: {gc.m} vs {hc.m}")
    m = gc.m
    colors = (gc.colors[:, None] + hc.colors[None, :]) % m
    return ClassicalColoring(colors.ravel(), m)


def is_proper_coloring(G: Graph, colors) -> tuple[bool, tuple | None]:
    """Edge scan for properness; returns (flag, witness_edge)."""
    colors = np.asarray(colors, dtype=int)
    if colors.shape != (G.n,):
        raise DimensionError("one color per vertex required")
    for u, v in G.edges():
        if colors[u] == colors[v]:
            return False, (u, v)
    return True, None


# ---------------------------------------------------------------------------
# JSON file format: {"k": real, "strict": bool, "dim": d,
#                    "vectors": [[...], ...]} in graph index order.


def coloring_to_json(c: VectorColoring) -> dict:
    return {
        "k": float(c.k),
        "strict": bool(c.strict),
        "dim": int(c.dim),
        "vectors": [[float(x) for x in row] for row in c.vectors],
    }


def coloring_from_json(data: dict) -> VectorColoring:
    vectors = np.array(data["vectors"], dtype=float)
    if vectors.ndim != 2 or vectors.shape[1] != int(data["dim"]):
        raise DomainError("vector dimensions disagree with the declared dim")
    return VectorColoring(vectors, float(data["k"]), bool(data["strict"]))


def save_coloring(path, c: VectorColoring) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(coloring_to_json(c), fh)


def load_coloring(path) -> VectorColoring:
    with open(path, "r", encoding="utf-8") as fh:
        return coloring_from_json(json.load(fh))
