"""Graph parameters: theta-bar, vector chromatic number, spectral formulas,
the combinatorial 1-homogeneity test, and exact chromatic number.

The two SDP parameters are computed from the dual-form programs by
default (simpler constraint structure); a primal-form solve is added on
request when the Gram matrix is needed for coloring extraction, and the
two forms must then agree within twice the configured gap tolerance.

Edgeless graphs take the conventional value 1 for both parameters, with
no SDP run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    CapacityError,
    ConvergenceError,
    DomainError,
    LimitExceededError,
)
from .graphs import Graph
from .linalg import eig_sym
from .sdp import (
    OPTIMAL,
    SolverConfig,
    build_chi_vec,
    build_theta_bar,
    solve,
)

CHROMATIC_CAP_DEFAULT = 30


@dataclass
class ParamResult:
    """A parameter value with machine-checkable certificates.

    ``method`` is "sdp", "spectral" (1-homogeneous formula) or
    "convention" (edgeless value 1, bipartite value 2).  ``residuals``
    mirrors the solver's (affine, cone, entrywise) report when an SDP
    ran.
    """

    value: float
    gap: float = 0.0
    method: str = "sdp"
    primal_certificate: np.ndarray | None = None
    dual_certificate: np.ndarray | None = None
    residuals: tuple | None = None


def _sdp_param(G: Graph, cfg, builder, want_primal: bool) -> ParamResult:
    if G.edge_count == 0:
        return ParamResult(value=1.0, gap=0.0, method="convention")
    cfg = cfg or SolverConfig()
    dual_sol = solve(builder(G, "dual"), cfg)
    if dual_sol.status != OPTIMAL:
        raise ConvergenceError(
            f"dual-form solve ended with status {dual_sol.status}",
            residual=max(dual_sol.residuals),
            partial=ParamResult(
                value=dual_sol.objective,
                gap=dual_sol.gap,
                method="sdp",
                dual_certificate=dual_sol.X,
                residuals=dual_sol.residuals,
            ),
        )
    result = ParamResult(
        value=dual_sol.objective,
        gap=dual_sol.gap,
        method="sdp",
        dual_certificate=dual_sol.X,
        residuals=dual_sol.residuals,
    )
    if want_primal:
        primal_sol = solve(builder(G, "primal"), cfg, reference_dual=dual_sol.objective)
        agree = abs(primal_sol.objective - dual_sol.objective)
        if primal_sol.status != OPTIMAL or agree > 2 * cfg.gap_tol:
            raise ConvergenceError(
                f"primal-form solve disagrees with dual value by {agree:.3e} "
                f"(status {primal_sol.status})",
                residual=agree,
                partial=result,
            )
        result.primal_certificate = primal_sol.X[: G.n, : G.n]
        result.gap = max(result.gap, agree)
    return result


def theta_bar(G: Graph, cfg: SolverConfig | None = None, *, want_primal: bool = False) -> ParamResult:
    """Strict vector chromatic number (Lovasz theta of the complement)."""
    return _sdp_param(G, cfg, build_theta_bar, want_primal)


def chi_vec(G: Graph, cfg: SolverConfig | None = None, *, want_primal: bool = False) -> ParamResult:
    """Vector chromatic number."""
    return _sdp_param(G, cfg, build_chi_vec, want_primal)


def spectral_lower_bound(G: Graph) -> float:
    """Average-degree bound 1 - (2e/n)/tau; requires at least one edge."""
    e = G.edge_count
    if e == 0:
        raise DomainError("spectral lower bound needs at least one edge")
    tau = eig_sym(G.adjacency()).least
    return 1.0 - (2.0 * e / G.n) / tau


# ---------------------------------------------------------------------------
# 1-homogeneity: the walk-count conditions A^k o I = b_k I and
# A^k o A = c_k A, checked in exact integer arithmetic for k up to the
# degree of the minimal polynomial of A (higher powers are combinations
# of the checked ones).


@dataclass
class OneHomReport:
    is_one_homogeneous: bool
    constants: list  # (k, b_k, c_k), exact integers
    failing_witness: tuple | None = None  # (k, "vertex"|"edge", index or pair)


class _ExactEchelon:
    """Incremental exact rank test over the rationals for integer vectors."""

    def __init__(self):
        self.rows = []  # (pivot index, vector of Fractions with 1 at pivot)

    def contains(self, vec) -> bool:
        """Reduce vec against the basis; absorb it if independent.

        Returns True when vec was already in the span.
        """
        v = [Fraction(int(x)) for x in vec]
        for pivot, row in self.rows:
            coeff = v[pivot]
            if coeff:
                v = [a - coeff * b for a, b in zip(v, row)]
        for idx, a in enumerate(v):
            if a:
                inv = a
                v = [x / inv for x in v]
                self.rows.append((idx, v))
                return False
        return True


def _integer_power_iter(A_bool: np.ndarray):
    """Yields exact integer powers I, A, A^2, ...; falls back to Python
    big integers when an int64 product could overflow."""
    n = A_bool.shape[0]
    A64 = A_bool.astype(np.int64)
    row_sum = int(A64.sum(axis=1).max()) if n else 0
    P = np.eye(n, dtype=np.int64)
    exact = False
    A_obj = None
    while True:
        yield P
        if not exact:
            peak = int(np.abs(P).max())
            if row_sum and peak > (2**62) // max(row_sum, 1):
                exact = True
                A_obj = A64.astype(object)
                P = P.astype(object)
        if exact:
            P = P @ A_obj
        else:
            P = P @ A64


def one_homogeneous_check(G: Graph) -> OneHomReport:
    """Exact combinatorial test of the two walk-count conditions."""
    n = G.n
    if n == 0:
        return OneHomReport(True, [(0, 1, 0)])
    adj = G.adj
    edge_idx = np.argwhere(np.triu(adj))
    echelon = _ExactEchelon()
    constants = []
    for k, P in enumerate(_integer_power_iter(adj)):
        diag = P.diagonal()
        b_k = int(diag[0])
        mism = np.nonzero(diag != diag[0])[0]
        if mism.size:
            return OneHomReport(False, constants, (k, "vertex", int(mism[0])))
        if len(edge_idx):
            vals = P[edge_idx[:, 0], edge_idx[:, 1]]
            c_k = int(vals[0])
            mism = np.nonzero(vals != vals[0])[0]
            if mism.size:
                u, v = edge_idx[int(mism[0])]
                return OneHomReport(False, constants, (k, "edge", (int(u), int(v))))
        else:
            c_k = 0
        constants.append((k, b_k, c_k))
        if echelon.contains(P.ravel()):
            # k is the minimal-polynomial degree; all higher powers are
            # combinations of the checked ones
            return OneHomReport(True, constants)


def spectral_vector_chromatic(G: Graph) -> ParamResult:
    """Closed-form value 1 - k/tau for 1-homogeneous graphs with an edge.

    The certificate is the scaled projector onto the least eigenspace,
    which is a feasible matrix for the primal-form SDP.
    """
    if G.edge_count == 0:
        raise DomainError("spectral formula needs at least one edge")
    report = one_homogeneous_check(G)
    if not report.is_one_homogeneous:
        raise DomainError(
            f"graph is not 1-homogeneous (witness {report.failing_witness})"
        )
    degree = int(G.degrees()[0])
    spec = eig_sym(G.adjacency())
    tau = spec.least
    value = 1.0 - degree / tau
    E_tau = spec.projector_for_least()
    rank = spec.multiplicities()[-1]
    M = -(G.n * degree) / (rank * tau) * E_tau
    return ParamResult(value=value, gap=0.0, method="spectral", primal_certificate=M)


# ---------------------------------------------------------------------------
# Exact chromatic number by branch and bound on bitmask adjacency, with a
# greedy (saturation-order) upper bound and an exact clique lower bound.


def _neighbor_masks(G: Graph) -> list[int]:
    masks = []
    for u in range(G.n):
        m = 0
        for v in np.flatnonzero(G.adj[u]):
            m |= 1 << int(v)
        masks.append(m)
    return masks


def _max_clique(masks: list[int], n: int) -> list[int]:
    best: list[int] = []

    def expand(current: list[int], candidates: int):
        nonlocal best
        if not candidates:
            if len(current) > len(best):
                best = current[:]
            return
        while candidates:
            if len(current) + bin(candidates).count("1") <= len(best):
                return
            v = (candidates & -candidates).bit_length() - 1
            candidates &= ~(1 << v)
            expand(current + [v], candidates & masks[v])

    expand([], (1 << n) - 1)
    return best


def _greedy_coloring(masks: list[int], n: int) -> np.ndarray:
    colors = np.full(n, -1, dtype=int)
    uncolored = set(range(n))
    while uncolored:
        # pick the most saturated vertex, ties by degree
        best_u, best_key = None, None
        for u in uncolored:
            sat = {colors[v] for v in range(n) if (masks[u] >> v) & 1 and colors[v] >= 0}
            key = (len(sat), bin(masks[u]).count("1"))
            if best_key is None or key > best_key:
                best_u, best_key = u, key
        used = {colors[v] for v in range(n) if (masks[best_u] >> v) & 1 and colors[v] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[best_u] = c
        uncolored.remove(best_u)
    return colors


def _search_coloring(masks: list[int], n: int, k: int, clique: list[int]):
    """Backtracking k-colorability with clique seeding and symmetry breaking.

    Returns a coloring array or None.
    """
    if len(clique) > k:
        return None
    colors = [-1] * n
    for i, v in enumerate(clique):
        colors[v] = i
    max_used = len(clique) - 1

    def choose():
        best_u, best_opts, best_deg = -1, None, -1
        for u in range(n):
            if colors[u] >= 0:
                continue
            used = 0
            m = masks[u]
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                if colors[v] >= 0:
                    used |= 1 << colors[v]
            limit = min(k, max_used + 2)
            opts = [c for c in range(limit) if not (used >> c) & 1]
            deg = bin(masks[u]).count("1")
            if best_opts is None or (len(opts), -deg) < (len(best_opts), -best_deg):
                best_u, best_opts, best_deg = u, opts, deg
                if not opts:
                    break
        return best_u, best_opts

    def backtrack(remaining: int) -> bool:
        nonlocal max_used
        if remaining == 0:
            return True
        u, opts = choose()
        if not opts:
            return False
        saved = max_used
        for c in opts:
            colors[u] = c
            max_used = max(max_used, c)
            if backtrack(remaining - 1):
                return True
            colors[u] = -1
            max_used = saved
        return False

    if backtrack(n - len(clique)):
        return np.array(colors, dtype=int)
    return None


def proper_coloring(G: Graph, k: int, *, cap: int = CHROMATIC_CAP_DEFAULT):
    """A proper k-coloring as an array, or None when no such coloring exists."""
    if G.n > cap:
        raise CapacityError(f"graph order {G.n} exceeds chromatic cap {cap}")
    if G.n == 0:
        return np.zeros(0, dtype=int)
    if k <= 0:
        return None
    masks = _neighbor_masks(G)
    clique = _max_clique(masks, G.n)
    return _search_coloring(masks, G.n, k, clique)


def chromatic_number(G: Graph, limit: int | None = None, *, cap: int = CHROMATIC_CAP_DEFAULT) -> int:
    """Exact chromatic number by deterministic backtracking.

    Raises :class:`LimitExceededError` when the answer provably exceeds
    ``limit`` and :class:`CapacityError` above the vertex cap.
    """
    if G.n > cap:
        raise CapacityError(f"graph order {G.n} exceeds chromatic cap {cap}")
    if G.n == 0:
        chi = 0
    elif G.edge_count == 0:
        chi = 1
    else:
        masks = _neighbor_masks(G)
        clique = _max_clique(masks, G.n)
        greedy = _greedy_coloring(masks, G.n)
        ub = int(greedy.max()) + 1
        lb = len(clique)
        chi = ub
        for k in range(lb, ub):
            if limit is not None and k > limit:
                raise LimitExceededError(
                    f"chromatic number exceeds limit {limit}", limit=limit
                )
            if _search_coloring(masks, G.n, k, clique) is not None:
                chi = k
                break
    if limit is not None and chi > limit:
        raise LimitExceededError(f"chromatic number {chi} exceeds limit {limit}", limit=limit)
    return chi
