"""Graph Laplacian, deterministic Jacobi eigensolver, overlaps, heat trace.

The Laplacian L = D - A of an undirected weighted graph is real symmetric
and positive semidefinite, its rows sum to zero, and the all-ones vector
spans (part of) its kernel. The eigensolver is a cyclic Jacobi iteration:
for the fixed matrix sizes used here it is accurate, simple, and fully
deterministic (fixed rotation order, fixed tie-breaking), which is what a
reproducible digest needs. Library eigensolvers are used only as test
oracles, never in this pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph

JACOBI_REL_TOL = 1e-12   # stop when off-diagonal Frobenius mass falls below this * ||L||_F
JACOBI_MAX_SWEEPS = 100
DEGENERATE_GAP = 1e-9    # eigenvalues closer than this form one degenerate cluster


def laplacian(graph: WeightedGraph) -> np.ndarray:
    """Dense Laplacian: diagonal holds weighted degrees, off-diagonal -w(i,j)."""
    n = graph.n_nodes
    lap = np.zeros((n, n), dtype=np.float64)
    for (u, v), w in graph.weights.items():
        lap[u, v] = lap[v, u] = -float(w)
        lap[u, u] += w
        lap[v, v] += w
    return lap


@dataclass
class SpectralDecomposition:
    """Eigenvalues ascending; orthonormal eigenvectors as matrix columns.

    Each column is sign-normalized: its largest-magnitude component (ties
    resolved to the lowest index) is positive. Exact eigenvalue ties are
    broken by lexicographic comparison of the sign-normalized columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)


def _sign_normalize(vec: np.ndarray) -> np.ndarray:
    pivot = int(np.argmax(np.abs(vec)))
    return -vec if vec[pivot] < 0 else vec


def eigendecompose(matrix: np.ndarray) -> SpectralDecomposition:
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Sweeps rotate away each strict upper-triangle entry in row-major order
    until the off-diagonal Frobenius norm drops below
    JACOBI_REL_TOL * ||input||_F, then eigenpairs are sorted, sign-normalized,
    and degenerate clusters re-orthonormalized by Gram-Schmidt in index order
    so repeated runs produce bit-identical output.

    Raises RuntimeError if the tolerance is not reached in
    JACOBI_MAX_SWEEPS sweeps (does not happen for the matrix sizes in scope).
    """
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.array_equal(a, a.T):
        if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
            raise ValueError("matrix must be symmetric")
        a = (a + a.T) / 2.0

    n = a.shape[0]
    vec = np.eye(n)
    threshold = JACOBI_REL_TOL * np.linalg.norm(a, "fro")

    converged = False
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(np.diag(a)), "fro")
        if off <= threshold:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # stable rotation angle (Golub & Van Loan sym.schur2)
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vcol_p = vec[:, p].copy()
                vcol_q = vec[:, q].copy()
                vec[:, p] = c * vcol_p - s * vcol_q
                vec[:, q] = s * vcol_p + c * vcol_q
    else:
        converged = np.linalg.norm(a - np.diag(np.diag(a)), "fro") <= threshold
    if not converged:
        raise RuntimeError(
            f"Jacobi iteration did not reach tolerance in {JACOBI_MAX_SWEEPS} sweeps"
        )

    values = np.diag(a).copy()
    columns = [_sign_normalize(vec[:, k].copy()) for k in range(n)]
    # ties sort by descending lexicographic column comparison, which leaves
    # the zero matrix with identity columns in natural order
    order = sorted(range(n), key=lambda k: (values[k], tuple(-columns[k])))
    values = values[order]
    basis = np.column_stack([columns[k] for k in order])

    _reorthonormalize_clusters(values, basis)
    return SpectralDecomposition(values, basis)


def _reorthonormalize_clusters(values: np.ndarray, basis: np.ndarray) -> None:
    """Gram-Schmidt, in index order, inside each near-degenerate cluster.

    Jacobi already returns an orthonormal basis; this pass only pins down
    the arbitrary rotation freedom inside clusters so the output is a
    deterministic function of the input matrix.
    """
    n = len(values)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] < DEGENERATE_GAP:
            stop += 1
        if stop - start > 1:
            for j in range(start, stop):
                col = basis[:, j]
                for i in range(start, j):
                    col = col - np.dot(basis[:, i], col) * basis[:, i]
                col = col / np.linalg.norm(col)
                basis[:, j] = _sign_normalize(col)
        start = stop


@dataclass
class Overlaps:
    """Eigenbasis overlaps of an input state: c[k] = <v_k|psi>, p[k] = |c[k]|^2."""

    c: np.ndarray
    p: np.ndarray


def overlaps(decomp: SpectralDecomposition, psi: np.ndarray) -> Overlaps:
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (decomp.dim,):
        raise ValueError(f"state has dim {psi.shape}, expected ({decomp.dim},)")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ValueError("input state must be normalized")
    c = decomp.eigenvectors.T @ psi
    return Overlaps(c, np.abs(c) ** 2)


def exact_heat_trace(decomp: SpectralDecomposition, ov: Overlaps, tau: float) -> float:
    """Overlap-weighted diffusion trace sum(p_k * exp(-tau * lambda_k)).

    Evaluated with the full-precision eigenvalues; this is the classical
    oracle that the phase-estimated heat traces are checked against.
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    return float(np.sum(ov.p * np.exp(-tau * decomp.eigenvalues)))


def matrix_to_json(matrix: np.ndarray) -> str:
    """Row-major JSON array-of-arrays dump (full double precision)."""
    rows = ", ".join("[" + ", ".join(repr(float(x)) for x in row) + "]" for row in matrix)
    return f"[{rows}]"


def eigenvalues_to_json(decomp: SpectralDecomposition) -> str:
    """JSON list of the eigenvalues, full double precision."""
    return "[" + ", ".join(repr(float(v)) for v in decomp.eigenvalues) + "]"
