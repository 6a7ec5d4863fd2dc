"""Time-evolution unitaries exp(i*L*t): exact spectral form and Trotter products.

The exact construction applies the spectral theorem to a decomposition of L.
The Trotter construction splits L into per-edge terms (which generally do
not commute) and interleaves their exponentials; each edge exponential is
computed in closed form on its 2x2 invariant subspace, so the product is a
product of exact unitaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph
from .spectral import SpectralDecomposition


def exact_unitary(decomp: SpectralDecomposition, t: float) -> np.ndarray:
    """U = V diag(exp(i*lambda*t)) V^T; eigenvectors keep their role, each
    eigenvalue becomes the phase factor exp(i*lambda*t)."""
    phases = np.exp(1j * decomp.eigenvalues * t)
    return (decomp.eigenvectors * phases) @ decomp.eigenvectors.T


@dataclass(frozen=True)
class EdgeTerm:
    """One edge's Laplacian contribution: +w on (u,u),(v,v), -w on (u,v),(v,u)."""

    u: int
    v: int
    w: int
    n_nodes: int

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n_nodes, self.n_nodes))
        m[self.u, self.u] = m[self.v, self.v] = float(self.w)
        m[self.u, self.v] = m[self.v, self.u] = -float(self.w)
        return m

    def exponential(self, s: float) -> np.ndarray:
        """exp(i*s*term) in closed form.

        The 2x2 block w*[[1,-1],[-1,1]] equals 2w times a projector, so the
        exponential is the identity plus (exp(2iws) - 1) times that projector.
        """
        phase = np.exp(2j * self.w * s)
        m = np.eye(self.n_nodes, dtype=np.complex128)
        m[self.u, self.u] = m[self.v, self.v] = (1.0 + phase) / 2.0
        m[self.u, self.v] = m[self.v, self.u] = (1.0 - phase) / 2.0
        return m


def edge_split(graph: WeightedGraph) -> list[EdgeTerm]:
    """Per-edge terms in sorted edge order; they sum exactly to laplacian(graph)."""
    return [EdgeTerm(u, v, w, graph.n_nodes) for (u, v), w in graph.edge_items()]


def trotter_unitary(terms: list[EdgeTerm], t: float, n_steps: int) -> np.ndarray:
    """First-order product formula (prod_e exp(i*L_e*t/n))^n.

    The inner product multiplies edge exponentials left to right in the
    given term order; with no terms the result is the identity (zero
    Laplacian evolves trivially).
    """
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    if not terms:
        return np.eye(1, dtype=np.complex128)
    n = terms[0].n_nodes
    s = t / n_steps
    step = np.eye(n, dtype=np.complex128)
    for term in terms:
        if term.n_nodes != n:
            raise ValueError("terms disagree on node count")
        step = step @ term.exponential(s)
    return np.linalg.matrix_power(step, n_steps)


def operator_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Frobenius norm of the difference."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b, "fro"))


def trotter_laplacian_unitary(graph: WeightedGraph, t: float, n_steps: int) -> np.ndarray:
    """Trotterized exp(i*L*t) for a graph; identity when the graph has no edges."""
    terms = edge_split(graph)
    if not terms:
        return np.eye(graph.n_nodes, dtype=np.complex128)
    return trotter_unitary(terms, t, n_steps)
