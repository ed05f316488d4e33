"""Two-mode frame changes and the induced Fock-basis unitaries.

A ``ModeFrame`` is a 2x2 unitary mixing of the two mode operators.  Row i
of the mixing matrix gives the new mode b_i as a combination of (a_1, a_2),

    b_i = sum_j U[i, j] a_j ,

so the inverse relation used to re-expand Fock states is
a_j^dag = sum_i U[i, j] b_i^dag.  The (N+1)-dimensional change-of-basis
unitary maps spatial-frame amplitudes to amplitudes over the new frame's
Fock basis, with the index convention k = occupation of mode 1, ascending.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

UNITARITY_TOL = 1e-12


def _as_frozen_complex(a, shape):
    arr = np.array(a, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ModeFrame:
    """A 2x2 unitary mixing of the two modes, defining an algebraic bipartition."""

    mixing: np.ndarray
    label: str = "custom"
    phi: float | None = None

    def __post_init__(self):
        u = _as_frozen_complex(self.mixing, (2, 2))
        residual = np.abs(u.conj().T @ u - np.eye(2)).max()
        if residual > UNITARITY_TOL:
            raise ValueError(f"mode mixing is not unitary (residual {residual:.3e})")
        object.__setattr__(self, "mixing", u)

    def matches(self, other: "ModeFrame", tol: float = 1e-10) -> bool:
        return bool(np.abs(self.mixing - other.mixing).max() <= tol)

    @property
    def is_spatial(self) -> bool:
        return bool(np.abs(self.mixing - np.eye(2)).max() <= UNITARITY_TOL)


def spatial_frame() -> ModeFrame:
    """The identity frame: modes are the two wells themselves."""
    return ModeFrame(np.eye(2, dtype=complex), label="spatial")


def bogolubov_frame(phi: float) -> ModeFrame:
    """Frame with b_1 = (a_1 + e^{-i phi} a_2)/sqrt(2), b_2 = (a_1 - e^{-i phi} a_2)/sqrt(2).

    phi = 0 is the symmetric/antisymmetric ("energy") mode pair.
    """
    w = np.exp(-1j * phi)
    u = np.array([[1.0, w], [1.0, -w]], dtype=complex) / math.sqrt(2.0)
    return ModeFrame(u, label="bogolubov", phi=float(phi))


def custom_frame(mixing) -> ModeFrame:
    """Frame from an arbitrary 2x2 unitary mixing matrix."""
    return ModeFrame(np.asarray(mixing, dtype=complex), label="custom")


def frame_change_unitary(n_particles: int, frame: ModeFrame) -> np.ndarray:
    """(N+1)x(N+1) unitary V whose column k expands |k, N-k> over the frame's Fock basis.

    Built by binomially expanding the creation-operator monomial
    (a_1^dag)^k (a_2^dag)^{N-k} |0> in the b modes; square-root factorial
    weights are evaluated through log-gamma so the construction stays
    stable well past N = 100.
    """
    if n_particles < 0:
        raise ValueError(f"n_particles must be >= 0, got {n_particles}")
    big_n = n_particles
    u = frame.mixing
    a1 = u[:, 0]  # coefficients of (b1^dag, b2^dag) in a1^dag
    a2 = u[:, 1]
    lg = [math.lgamma(j + 1) for j in range(big_n + 1)]
    v = np.zeros((big_n + 1, big_n + 1), dtype=complex)
    for k in range(big_n + 1):
        norm_k = lg[k] + lg[big_n - k]
        for r in range(k + 1):
            c_r = math.comb(k, r) * a1[0] ** r * a1[1] ** (k - r)
            for s in range(big_n - k + 1):
                j = r + s
                weight = math.exp(0.5 * (lg[j] + lg[big_n - j] - norm_k))
                v[j, k] += (
                    c_r * math.comb(big_n - k, s) * weight
                    * a2[0] ** s * a2[1] ** (big_n - k - s)
                )
    return v


def fock_expansion_coefficients(k: int, n_particles: int, frame: ModeFrame) -> np.ndarray:
    """Amplitudes of the spatial Fock state |k, N-k> over the frame's Fock basis."""
    if not 0 <= k <= n_particles:
        raise ValueError(f"k={k} out of range 0 <= k <= N={n_particles}")
    return frame_change_unitary(n_particles, frame)[:, k].copy()


def transform_state(state, frame: ModeFrame):
    """Re-express a SectorState in a new mode frame; norm and trace are preserved."""
    from .fock import SectorState

    v_new = frame_change_unitary(state.n_particles, frame)
    if state.frame.is_spatial:
        v = v_new
    else:
        v_old = frame_change_unitary(state.n_particles, state.frame)
        v = v_new @ v_old.conj().T
    if state.amplitudes is not None:
        return SectorState(state.n_particles, frame, amplitudes=v @ state.amplitudes)
    return SectorState(state.n_particles, frame, rho=v @ state.rho @ v.conj().T)
