"""Exact simulation of quantum phase estimation over a non-eigenvector input.

Two independent routes produce the counting-register outcome distribution:

* `qpe_statevector` simulates the circuit on the joint register
  (m counting qubits tensor an N-dimensional system register): Hadamards,
  controlled powers U^(2^j), inverse QFT, then the exact marginal over
  counting outcomes.
* `qpe_closed_form` evaluates the known outcome law directly: a mixture of
  Fejer-type kernels, one per eigenphase, weighted by the input state's
  overlap probabilities.

Both must agree to floating-point accuracy; the closed form is the oracle
for the simulator and vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .rng import random_doubles
from .spectral import SpectralDecomposition, eigendecompose
from .evolution import exact_unitary


@dataclass(frozen=True)
class QpeConfig:
    """Counting-register size m, evolution time t, and measurement mode.

    Mode "exact" keeps the full outcome distribution; "shots" draws a
    seeded sample from it.
    """

    m: int = 8
    t: float = 1.0
    mode: str = "exact"
    shots: int = 1024
    seed: int = 0

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("counting register needs at least one qubit (m >= 1)")
        if not self.t > 0:
            raise ValueError("evolution time t must be positive")
        if self.mode not in ("exact", "shots"):
            raise ValueError(f"mode must be 'exact' or 'shots', got {self.mode!r}")
        if self.mode == "shots" and self.shots < 1:
            raise ValueError("shots must be >= 1 in shots mode")


@dataclass
class InputState:
    """System-register state in the node basis, with its construction tag."""

    amplitudes: np.ndarray
    strategy: str


def prepare_input_state(strategy: str, n_nodes: int) -> InputState:
    """Build one of the supported input states.

    "uniform" is the equal superposition over all nodes (which is exactly
    the Laplacian's zero-mode, so it degenerates phase estimation to the
    zero outcome); "node:<idx>" is a single node basis state; "ramp" has
    amplitude proportional to (node index + 1), a fixed non-degenerate
    default.
    """
    if n_nodes < 2:
        raise ValueError("need at least two nodes")
    if strategy == "uniform":
        amp = np.full(n_nodes, 1.0 / np.sqrt(n_nodes), dtype=np.complex128)
    elif strategy == "ramp":
        ramp = np.arange(1, n_nodes + 1, dtype=np.float64)
        amp = (ramp / np.linalg.norm(ramp)).astype(np.complex128)
    elif strategy.startswith("node:"):
        idx = int(strategy.split(":", 1)[1])
        if not 0 <= idx < n_nodes:
            raise ValueError(f"node index {idx} outside [0, {n_nodes})")
        amp = np.zeros(n_nodes, dtype=np.complex128)
        amp[idx] = 1.0
    else:
        raise ValueError(f"unknown input-state strategy {strategy!r}")
    return InputState(amp, strategy)


def choose_evolution_time(lap: np.ndarray, m: int) -> float:
    """Evolution time that keeps every eigenphase strictly inside [0, 1).

    The Gershgorin bound lambda_max <= 2 * max_i degree_i gives an upper
    bound lambda_ub; t = 2*pi*(2^m - 1)/(2^m * lambda_ub) places the largest
    possible phase at (2^m - 1)/2^m, so no eigenvalue aliases onto a small
    phase. A zero Laplacian gets t = 1 (any positive time works).
    """
    lam_ub = 2.0 * float(np.max(np.diag(lap))) if lap.size else 0.0
    if lam_ub <= 0.0:
        return 1.0
    return 2.0 * np.pi * (2**m - 1) / (2**m * lam_ub)


@lru_cache(maxsize=8)
def _iqft_matrix(d: int) -> np.ndarray:
    j = np.arange(d)
    return np.exp(-2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def inverse_qft(segment: np.ndarray) -> np.ndarray:
    """Inverse quantum Fourier transform along axis 0.

    Applies the unitary with entries exp(-2*pi*i*j*k/d)/sqrt(d) where d is
    the axis-0 dimension, which must be a power of two.
    """
    segment = np.asarray(segment, dtype=np.complex128)
    d = segment.shape[0]
    if d < 1 or d & (d - 1):
        raise ValueError(f"register dimension {d} is not a power of two")
    return _iqft_matrix(d) @ segment


def qft(segment: np.ndarray) -> np.ndarray:
    """Forward transform, provided so round-trip identities are testable."""
    segment = np.asarray(segment, dtype=np.complex128)
    d = segment.shape[0]
    if d < 1 or d & (d - 1):
        raise ValueError(f"register dimension {d} is not a power of two")
    return _iqft_matrix(d).conj() @ segment


def qpe_statevector(
    lap: np.ndarray,
    psi: InputState,
    cfg: QpeConfig,
    unitary: np.ndarray | None = None,
) -> np.ndarray:
    """Full statevector simulation; returns the 2^m counting-outcome probabilities.

    The joint state starts as |0...0> tensor psi. Hadamards put the counting
    register into uniform superposition, counting qubit j then controls
    U^(2^j) (powers built by repeated squaring), the inverse QFT acts on the
    counting register, and the system register is traced out of the final
    probabilities. If `unitary` is omitted, U = exp(i*L*t) is built exactly
    from a fresh eigendecomposition of `lap`.
    """
    n = lap.shape[0]
    amp = psi.amplitudes
    if amp.shape != (n,):
        raise ValueError(f"input state dim {amp.shape} does not match Laplacian dim {n}")
    if abs(np.linalg.norm(amp) - 1.0) > 1e-12:
        raise ValueError("input state must be unit norm")
    if unitary is None:
        unitary = exact_unitary(eigendecompose(lap), cfg.t)
    if unitary.shape != (n, n):
        raise ValueError("unitary dimension does not match the system register")

    m = cfg.m
    dim = 2**m
    state = np.zeros((dim, n), dtype=np.complex128)
    state[0] = amp

    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for j in range(m):
        view = state.reshape(-1, 2, 2**j, n)
        zero = view[:, 0].copy()
        one = view[:, 1].copy()
        view[:, 0] = (zero + one) * inv_sqrt2
        view[:, 1] = (zero - one) * inv_sqrt2

    u_pow = unitary
    for j in range(m):
        view = state.reshape(-1, 2, 2**j, n)
        view[:, 1] = view[:, 1] @ u_pow.T
        if j != m - 1:
            u_pow = u_pow @ u_pow

    state = inverse_qft(state)
    return np.sum(np.abs(state) ** 2, axis=1)


def qpe_closed_form(phis: np.ndarray, weights: np.ndarray, m: int) -> np.ndarray:
    """Mixture of phase-estimation kernels: P[y] = sum_k p_k K_m(phi_k - y/2^m).

    K_m(delta) = sin^2(2^m pi delta) / (4^m sin^2(pi delta)), extended by its
    limit value 1 at integer delta. The kernel is 1-periodic, so phases just
    outside [0, 1) from floating-point noise are harmless.
    """
    phis = np.atleast_1d(np.asarray(phis, dtype=np.float64))
    weights = np.atleast_1d(np.asarray(weights, dtype=np.float64))
    if phis.shape != weights.shape:
        raise ValueError("phases and weights must align")
    dim = 2**m
    delta = phis[:, None] - np.arange(dim)[None, :] / dim
    frac = delta - np.round(delta)  # kernel is 1-periodic; reduce to [-1/2, 1/2]
    kernel = np.ones_like(frac)
    # below ~1e-100 the quotient is 1 to double precision and sin^2 can
    # underflow to an exact 0/0, so keep the limit value there
    far = np.abs(frac) > 1e-100
    kernel[far] = np.sin(dim * np.pi * frac[far]) ** 2 / (
        4.0**m * np.sin(np.pi * frac[far]) ** 2
    )
    return weights @ kernel


def qpe_from_decomposition(
    decomp: SpectralDecomposition, p: np.ndarray, cfg: QpeConfig
) -> np.ndarray:
    """Closed-form distribution for a decomposition's phases phi_k = lambda_k*t/(2*pi)."""
    phis = decomp.eigenvalues * cfg.t / (2.0 * np.pi)
    return qpe_closed_form(phis, p, cfg.m)


def sample_shots(probs: np.ndarray, shots: int, seed: int) -> np.ndarray:
    """Histogram of `shots` inverse-CDF draws from the distribution (deterministic)."""
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 1 or probs.size == 0:
        raise ValueError("need a one-dimensional distribution")
    if np.any(probs < -1e-12) or abs(probs.sum() - 1.0) > 1e-9:
        raise ValueError("probabilities must be nonnegative and sum to 1")
    if shots < 1:
        raise ValueError("shots must be >= 1")
    cdf = np.cumsum(probs)
    draws = random_doubles(seed, shots)
    idx = np.minimum(np.searchsorted(cdf, draws, side="right"), probs.size - 1)
    return np.bincount(idx, minlength=probs.size)


def phase_to_eigenvalue(y, m: int, t: float):
    """Map counting outcome y back to an eigenvalue estimate 2*pi*(y/2^m)/t."""
    if t <= 0:
        raise ValueError("t must be positive")
    est = 2.0 * np.pi * (np.asarray(y, dtype=np.float64) / 2**m) / t
    return float(est) if est.ndim == 0 else est


def histogram_to_json(counts: np.ndarray) -> str:
    """JSON map of outcome -> count, nonzero entries in outcome order."""
    entries = ", ".join(f'"{y}": {int(c)}' for y, c in enumerate(counts) if c)
    return "{" + entries + "}"
