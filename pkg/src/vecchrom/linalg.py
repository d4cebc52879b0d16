"""Dense symmetric matrix kernels: eigendecomposition, Gram factors, products.

The eigensolver is a cyclic Jacobi sweep, which is simple, deterministic
and accurate at the orders this package works with (a few hundred at
most).  Eigenvalues come back sorted in descending order together with
orthonormal eigenvectors and one projector per distinct eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, NotPsdError

JACOBI_MAX_SWEEPS = 100
JACOBI_OFF_TOL = 1e-12  # relative to the Frobenius norm
SYMMETRY_TOL = 1e-12


def symmetrize(M, tol: float = SYMMETRY_TOL) -> np.ndarray:
    """Return (M + M^T)/2 after checking M is symmetric within tol."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {M.shape}")
    if M.size:
        scale = max(1.0, float(np.abs(M).max()))
        skew = float(np.abs(M - M.T).max())
        if skew > tol * scale:
            raise DomainError(f"matrix asymmetry {skew:.3e} exceeds tolerance")
    return (M + M.T) / 2.0


@dataclass
class Spectrum:
    """Eigendecomposition of a real symmetric matrix.

    ``eigenvalues`` are sorted descending, ``eigenvectors`` holds the
    matching orthonormal columns, and ``projectors`` has one orthogonal
    projector per distinct eigenvalue (grouped at the tolerance passed
    to :func:`eig_sym`), aligned with ``distinct``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    distinct: np.ndarray
    projectors: list

    @property
    def greatest(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def least(self) -> float:
        return float(self.eigenvalues[-1])

    def projector_for_least(self) -> np.ndarray:
        return self.projectors[-1]

    def multiplicities(self) -> list[int]:
        return [int(round(np.trace(P))) for P in self.projectors]


def _jacobi(M: np.ndarray, max_sweeps: int):
    """Cyclic Jacobi rotations; returns (diagonal values, rotation matrix)."""
    n = M.shape[0]
    A = M.copy()
    V = np.eye(n)
    fro = float(np.linalg.norm(A))
    if n < 2 or fro == 0.0:
        return np.diag(A).copy(), V
    target = JACOBI_OFF_TOL * fro
    skip = target / (2.0 * n)
    iu = np.triu_indices(n, k=1)
    for _ in range(max_sweeps):
        # gathered directly from the strict triangle; the textbook
        # ||A||^2 - ||diag||^2 form cancels catastrophically near the end
        off = float(np.sqrt(2.0) * np.linalg.norm(A[iu]))
        if off <= target:
            return np.diag(A).copy(), V
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= skip:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                app, aqq = A[p, p], A[q, q]
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    off = float(np.sqrt(2.0) * np.linalg.norm(A[iu]))
    if off > target:
        raise ConvergenceError(
            f"Jacobi sweeps did not converge: off-diagonal norm {off:.3e} "
            f"above target {target:.3e} after {max_sweeps} sweeps",
            residual=off,
        )
    return np.diag(A).copy(), V


def eig_sym(M, tol: float = 1e-6, max_sweeps: int = JACOBI_MAX_SWEEPS) -> Spectrum:
    """Full spectrum of a symmetric matrix via cyclic Jacobi rotations.

    ``tol`` controls only the grouping of nearby eigenvalues into shared
    eigenprojectors; the rotation sweep itself runs to a fixed relative
    off-diagonal threshold.
    """
    M = symmetrize(M)
    n = M.shape[0]
    if n == 0:
        return Spectrum(np.array([]), np.zeros((0, 0)), np.array([]), [])
    if not np.isfinite(M).all():
        raise DomainError("matrix entries must be finite")
    vals, vecs = _jacobi(M, max_sweeps)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]

    spread = float(vals[0] - vals[-1])
    gap = tol * (1.0 + spread)
    groups = []
    start = 0
    for i in range(1, n):
        if vals[i - 1] - vals[i] > gap:
            groups.append((start, i))
            start = i
    groups.append((start, n))
    distinct = np.array([float(vals[a:b].mean()) for a, b in groups])
    projectors = []
    for a, b in groups:
        block = vecs[:, a:b]
        P = block @ block.T
        projectors.append((P + P.T) / 2.0)
    return Spectrum(vals, vecs, distinct, projectors)


def gram_factor(M, tol: float = 1e-9) -> np.ndarray:
    """Vectors (as rows) whose Gram matrix is M, for M PSD up to -tol.

    The output dimension is the number of eigenvalues above tol; small
    negative eigenvalues within tolerance are clamped to zero, anything
    below -tol raises.
    """
    spec = eig_sym(M)
    if spec.eigenvalues.size == 0:
        return np.zeros((0, 0))
    least = spec.least
    if least < -tol:
        raise NotPsdError(f"matrix has eigenvalue {least:.3e} below -{tol:.1e}")
    keep = spec.eigenvalues > tol
    vals = spec.eigenvalues[keep]
    vecs = spec.eigenvectors[:, keep]
    return vecs * np.sqrt(vals)


def project_psd(M) -> np.ndarray:
    """Nearest positive semidefinite matrix in Frobenius distance."""
    spec = eig_sym(M)
    if spec.eigenvalues.size == 0:
        return np.zeros((0, 0))
    vals = np.maximum(spec.eigenvalues, 0.0)
    V = spec.eigenvectors
    out = (V * vals) @ V.T
    return (out + out.T) / 2.0


def kron(A, B) -> np.ndarray:
    """Kronecker product in the standard block layout."""
    return np.kron(np.asarray(A), np.asarray(B))


def schur(A, B) -> np.ndarray:
    """Entrywise (Schur) product."""
    return np.multiply(np.asarray(A), np.asarray(B))


def msum(A) -> float:
    """Sum of all matrix entries; tr(A^T B) == msum(A o B)."""
    return float(np.asarray(A).sum())
