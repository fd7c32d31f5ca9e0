"""Resonant Jaynes-Cummings dynamics and the entangling-power test.

The qubit-mode pair evolves under the closed-form blocks of
H = g (sigma_+ a + sigma_- a†) at resonance, with tau = g t:

    |g,n>  ->  cos(tau sqrt(n)) |g,n>   - i sin(tau sqrt(n)) |e,n-1>
    |e,n>  ->  cos(tau sqrt(n+1)) |e,n> - i sin(tau sqrt(n+1)) |g,n+1>

The entangling-power test couples each mode of a two-mode state to its own
ground-state qubit for the same rescaled time, traces the modes out, and
reports the logarithmic negativity of the remaining two-qubit state.  Any
entanglement found this way lower-bounds the entanglement of the modes.

A structural caveat worth knowing: if the two-mode input has definite
photon-number parity in each mode (squeezed vacua and their superpositions
all do), the qubit branches after the exchange coupling carry orthogonal
mode parities, every two-qubit coherence traces to zero exactly, and the
transferred entanglement is identically zero for all tau.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (
    DensityMatrix,
    FockVector,
    ModeLayout,
    _apply_unitary,
    basis_state,
    reduced_density,
    tensor,
)
from .measures import two_qubit_negativity

__all__ = ["JcSpec", "jc_unitary", "jc_evolve_pair", "entangling_power"]


@dataclass(frozen=True)
class JcSpec:
    """Rescaled interaction time tau = g*t and the mode cutoff."""

    tau: float
    cutoff: int

    def __post_init__(self):
        if not np.isfinite(self.tau) or self.tau < 0:
            raise ValueError("tau must be finite and >= 0")
        if self.cutoff < 1:
            raise ValueError("cutoff must be positive")


def jc_unitary(spec: JcSpec) -> np.ndarray:
    """Closed-form evolution on the (qubit, mode) space, qubit index first.

    Each excitation block {|g,n>, |e,n-1>} rotates independently; the
    top block whose partner lies beyond the cutoff is left untouched, so
    the matrix is exactly unitary at any truncation.
    """
    d = spec.cutoff
    u = np.eye(2 * d, dtype=complex)
    for n in range(1, d):
        c = np.cos(spec.tau * np.sqrt(n))
        s = np.sin(spec.tau * np.sqrt(n))
        ig = n            # |g, n>
        ie = d + n - 1    # |e, n-1>
        u[ig, ig] = c
        u[ie, ie] = c
        u[ie, ig] = -1j * s
        u[ig, ie] = -1j * s
    return u


def jc_evolve_pair(state: FockVector | DensityMatrix, tau: float):
    """Evolve a (qubit, mode) pair for rescaled time tau."""
    if state.layout.nmodes != 2 or state.layout.dims[0] != 2:
        raise ValueError("expected a (qubit, mode) layout with qubit dimension 2")
    u = jc_unitary(JcSpec(tau, state.layout.dims[1]))
    return _apply_unitary(state, [0, 1], u)


def entangling_power(state: FockVector | DensityMatrix, tau: float) -> float:
    """Two-qubit log-negativity extracted from a two-mode state by local JC.

    Attaches a ground-state qubit to each mode, evolves both pairs for the
    same tau, traces out the modes and returns the negativity of the qubits.
    """
    if state.layout.nmodes != 2:
        raise ValueError("entangling_power expects a two-mode state")
    qubit = basis_state(ModeLayout((2,)), (0,))
    qubits = tensor(qubit, qubit)
    if isinstance(state, DensityMatrix):
        qubits = qubits.density()
    # joint layout: (a, b, q1, q2)
    joint = tensor(state, qubits)
    u = jc_unitary(JcSpec(tau, state.layout.dims[0]))
    joint = _apply_unitary(joint, [2, 0], u)
    u = jc_unitary(JcSpec(tau, state.layout.dims[1]))
    joint = _apply_unitary(joint, [3, 1], u)
    return two_qubit_negativity(reduced_density(joint, keep=[2, 3]))
