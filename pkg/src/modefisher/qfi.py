"""Quantum Fisher information: spectral oracle, diagonal-state closed form, bounds.

Two independent routes are kept deliberately separate: ``qfi_spectral``
evaluates the standard eigendecomposition sum for any density matrix, while
``qfi_diagonal_closed_form`` evaluates the explicit formula valid for states
diagonal in the Fock basis.  Tests and the acceptance suite cross-check one
against the other.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .collective import CollectiveObservable, Direction
from .fock import SectorState, expectation, validate_state

SPECTRAL_CUTOFF = 1e-12
CLASSIFY_TOL = 1e-8

CLASS_ZERO = "zero"
CLASS_SHOT_NOISE = "at-or-below-shot-noise"
CLASS_SUB_SHOT_NOISE = "sub-shot-noise"
CLASS_HEISENBERG = "heisenberg-saturating"


@dataclass(frozen=True)
class QfiReport:
    """A Fisher value with its phase-uncertainty bound and classification."""

    fisher: float
    phase_bound: float
    n_particles: int
    classification: str
    heisenberg_fraction: float


def _observable_matrix(observable) -> np.ndarray:
    if isinstance(observable, CollectiveObservable):
        return observable.matrix
    return np.asarray(observable, dtype=complex)


def qfi_spectral(state: SectorState, observable, cutoff: float = SPECTRAL_CUTOFF,
                 tol: float = 1e-10) -> float:
    """F = 2 sum_{i,j} (l_i - l_j)^2 / (l_i + l_j) |<i|A|j>|^2 over eig(rho).

    Pairs with l_i + l_j <= cutoff (null-space pairs) are excluded; this is
    the standard regularization of the sum.  For pure states the result
    equals 4 Var(A).
    """
    a = _observable_matrix(observable)
    if a.shape != (state.dim, state.dim):
        raise ValueError(f"observable shape {a.shape} does not match sector dimension {state.dim}")
    violations = validate_state(state, tol)
    if violations:
        raise ValueError(f"invalid state: {', '.join(violations)}")
    lam, vec = np.linalg.eigh(state.density_matrix())
    a_eig = vec.conj().T @ a @ vec
    li = lam[:, None]
    lj = lam[None, :]
    pair_sum = li + lj
    mask = pair_sum > cutoff
    weight = np.where(mask, (li - lj) ** 2 / np.where(mask, pair_sum, 1.0), 0.0)
    return float(2.0 * np.sum(weight * np.abs(a_eig) ** 2))


def qfi_diagonal_closed_form(p, n_particles: int, n: Direction, tol: float = 1e-10) -> float:
    """Fisher information of the mixture sum_k p_k |k, N-k><k, N-k| under J_n.

    F = (n_x^2 + n_y^2) [N + 2 sum_k p_k k(N-k)
                           - 4 sum_k p_k p_{k+1}/(p_k + p_{k+1}) (k+1)(N-k)],
    with 0/0 terms (consecutive zero probabilities) contributing 0.
    """
    big_n = n_particles
    p = np.asarray(p, dtype=float)
    if p.shape != (big_n + 1,):
        raise ValueError(f"probability vector must have length {big_n + 1}, got {p.shape}")
    if p.min() < -tol:
        raise ValueError("probabilities must be nonnegative")
    if abs(p.sum() - 1.0) > tol:
        raise ValueError(f"probabilities must sum to 1, got {p.sum():.12g}")
    k = np.arange(big_n + 1)
    mean_term = 2.0 * float(np.sum(p * k * (big_n - k)))
    coherence_term = 0.0
    for kk in range(big_n):
        denom = p[kk] + p[kk + 1]
        if denom > 0.0:
            coherence_term += p[kk] * p[kk + 1] / denom * (kk + 1) * (big_n - kk)
    return n.in_plane_weight * (big_n + mean_term - 4.0 * coherence_term)


def qfi_pure_fock(k: int, n_particles: int, n: Direction) -> float:
    """Fisher information of the pure Fock state |k, N-k> under J_n."""
    if not 0 <= k <= n_particles:
        raise ValueError(f"k={k} out of range 0 <= k <= N={n_particles}")
    return n.in_plane_weight * (n_particles + 2.0 * k * (n_particles - k))


def variance_bound(state: SectorState, observable) -> tuple[float, float, float]:
    """(F, 4 Var(A), gap): F <= 4 Var(A), with equality for pure states."""
    a = _observable_matrix(observable)
    fisher = qfi_spectral(state, a)
    mean = expectation(state, a).real
    mean_sq = expectation(state, a @ a).real
    four_var = 4.0 * (mean_sq - mean ** 2)
    return fisher, four_var, four_var - fisher


def classify(fisher: float, n_particles: int, tol: float = CLASSIFY_TOL) -> QfiReport:
    """Phase-uncertainty bound and shot-noise/Heisenberg classification of F."""
    if fisher < -tol:
        raise ValueError(f"Fisher information must be nonnegative, got {fisher:.6g}")
    fisher = max(fisher, 0.0)
    n_sq = float(n_particles) ** 2
    if fisher > n_sq + tol:
        raise ValueError(f"Fisher information {fisher:.6g} exceeds the N^2 = {n_sq:.6g} bound")
    if fisher <= tol:
        label = CLASS_ZERO
        phase_bound = math.inf
    else:
        phase_bound = 1.0 / math.sqrt(fisher)
        if fisher >= n_sq - tol:
            label = CLASS_HEISENBERG
        elif fisher > n_particles + tol:
            label = CLASS_SUB_SHOT_NOISE
        else:
            label = CLASS_SHOT_NOISE
    fraction = fisher / n_sq if n_particles > 0 else math.nan
    return QfiReport(fisher, phase_bound, n_particles, label, fraction)
