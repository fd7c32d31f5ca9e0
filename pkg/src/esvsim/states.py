"""Constructors for squeezed-vacuum states and their entangled superpositions.

The central family is the two-mode state

    |Psi(phi)> = N (|s+>|s-> + e^{i phi} |s->|s+>),
    N = 1/sqrt(2 [1 + sech(2s) cos(phi)]),

built from single-mode vacua squeezed along opposite quadratures,
|s+-> = S(+-s)|0>.  The mixed-state version applies the conditional map

    T = 1 (x) R(pi/2) + e^{i phi} R(pi/2) (x) 1

to a product of single-mode inputs and renormalizes; R(pi/2) flips
|s+> <-> |s-> because squeezed vacua live on even photon numbers.

Constructors that build superpositions return unit-norm vectors with the
global phase fixed so the largest-magnitude amplitude is real positive.
Closed-form constructors (squeezed vacuum, two-mode squeezed vacuum,
displaced squeezed states) keep their natural amplitudes; their norm is
1 minus the truncation tail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (
    DensityMatrix,
    FockVector,
    ModeLayout,
    apply_single_mode,
    check_tail,
)

__all__ = [
    "SqueezeSpec",
    "EsvSpec",
    "DisplacedSqueezedSpec",
    "STRICT_SQUEEZE_LIMIT",
    "squeezed_vacuum",
    "esv_pure",
    "esv_aligned",
    "esv_mixed",
    "phi_basis",
    "displaced_squeezed",
    "displaced_overlap",
    "two_mode_squeezed_vacuum",
    "esv_generalized",
]

STRICT_SQUEEZE_LIMIT = 3.0
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class SqueezeSpec:
    """Single-mode squeezing amount and Fock cutoff."""

    s: float
    cutoff: int

    def __post_init__(self):
        if not np.isfinite(self.s):
            raise ValueError("squeezing parameter must be finite")
        if self.cutoff < 2:
            raise ValueError("cutoff must be at least 2")


@dataclass(frozen=True)
class EsvSpec:
    """Parameters of |Psi(phi)>; phi is wrapped into [0, 2*pi)."""

    s: float
    phi: float
    cutoff: int

    def __post_init__(self):
        if self.s < 0 or not np.isfinite(self.s):
            raise ValueError("squeezing parameter must be finite and >= 0")
        if self.cutoff < 2:
            raise ValueError("cutoff must be at least 2")
        object.__setattr__(self, "phi", float(np.mod(self.phi, TWO_PI)))
        # N = 1/sqrt(2 [1 + sech(2s) cos(phi)]) must stay finite
        if 1.0 + np.cos(self.phi) / np.cosh(2.0 * self.s) < 1e-12:
            raise ValueError("degenerate superposition: s = 0 with phi = pi is the zero vector")

    @property
    def norm_factor(self) -> float:
        return 1.0 / np.sqrt(2.0 * (1.0 + np.cos(self.phi) / np.cosh(2.0 * self.s)))


@dataclass(frozen=True)
class DisplacedSqueezedSpec:
    """Displacements for the two modes plus a common squeezing magnitude."""

    alpha: complex
    beta: complex
    s: float
    cutoff: int

    def __post_init__(self):
        if self.cutoff < 2:
            raise ValueError("cutoff must be at least 2")
        bound = _displacement_bound(self.cutoff)
        for name, z in (("alpha", self.alpha), ("beta", self.beta)):
            if abs(z) > bound:
                raise ValueError(
                    f"|{name}| = {abs(z):.3f} exceeds the cutoff-{self.cutoff} guard {bound:.3f}"
                )


def _displacement_bound(cutoff: int) -> float:
    # mean photon number |alpha|^2 plus a Poisson-tail margin must fit
    return max(np.sqrt(cutoff + 5.0) - 3.0, 0.5)


def _phase_fixed(amps: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest amplitude is real positive."""
    k = int(np.argmax(np.abs(amps)))
    z = amps[k]
    if abs(z) == 0.0:
        return amps
    return amps * (np.conj(z) / abs(z))


def squeezed_vacuum(spec: SqueezeSpec, strict: bool = False) -> FockVector:
    """|psi_s> with amplitudes sech(s)^1/2 sqrt((2n)!)/n! (-tanh(s)/2)^n on |2n>.

    Amplitudes come from the stable two-step recurrence
    c_{2n+2} = -tanh(s) sqrt((2n+1)/(2n+2)) c_{2n}; odd levels are exact zeros.
    """
    if strict and abs(spec.s) > STRICT_SQUEEZE_LIMIT:
        raise ValueError(f"|s| > {STRICT_SQUEEZE_LIMIT} rejected in strict mode")
    d = spec.cutoff
    amps = np.zeros(d, dtype=complex)
    t = np.tanh(spec.s)
    n = np.arange(1, (d + 1) // 2)
    ratios = -t * np.sqrt((2.0 * n - 1.0) / (2.0 * n))
    evens = np.concatenate([[1.0], np.cumprod(ratios)]) / np.sqrt(np.cosh(spec.s))
    amps[0::2] = evens
    out = FockVector(ModeLayout((d,)), amps)
    check_tail(out, strict=strict, context="squeezed_vacuum")
    return out


def _pair(spec_s: float, cutoff: int, strict: bool = False):
    plus = squeezed_vacuum(SqueezeSpec(spec_s, cutoff), strict=strict)
    minus = squeezed_vacuum(SqueezeSpec(-spec_s, cutoff), strict=strict)
    return plus, minus


def esv_pure(spec: EsvSpec, strict: bool = False) -> FockVector:
    """|Psi(phi)> = N (|s+>|s-> + e^{i phi} |s->|s+>), normalized."""
    plus, minus = _pair(spec.s, spec.cutoff, strict=strict)
    amps = (np.kron(plus.amps, minus.amps)
            + np.exp(1j * spec.phi) * np.kron(minus.amps, plus.amps))
    norm = np.linalg.norm(amps)
    if norm < 1e-12:
        raise ValueError("degenerate superposition is the zero vector")
    return FockVector(ModeLayout((spec.cutoff, spec.cutoff)), _phase_fixed(amps / norm))


def esv_aligned(spec: EsvSpec, strict: bool = False) -> FockVector:
    """The companion state N (|s+>|s+> + e^{i phi} |s->|s->).

    For phi = pi this is the swap/teleportation resource; it differs from
    |Psi(pi)> by a local pi/2 phase rotation on one mode.
    """
    plus, minus = _pair(spec.s, spec.cutoff, strict=strict)
    amps = (np.kron(plus.amps, plus.amps)
            + np.exp(1j * spec.phi) * np.kron(minus.amps, minus.amps))
    norm = np.linalg.norm(amps)
    if norm < 1e-12:
        raise ValueError("degenerate superposition is the zero vector")
    return FockVector(ModeLayout((spec.cutoff, spec.cutoff)), _phase_fixed(amps / norm))


def esv_mixed(rho_a: DensityMatrix, rho_b: DensityMatrix, phi: float) -> DensityMatrix:
    """Entangle two single-mode inputs with the conditional map T.

    T = 1 (x) R(pi/2) + e^{i phi} R(pi/2) (x) 1 is diagonal in the Fock
    basis; the output T (rho_a (x) rho_b) T† is renormalized to unit trace.
    On pure squeezed-vacuum inputs this reproduces |Psi(phi)><Psi(phi)|.
    """
    if rho_a.layout.nmodes != 1 or rho_b.layout.nmodes != 1:
        raise ValueError("esv_mixed needs two single-mode density matrices")
    if rho_a.layout.dims != rho_b.layout.dims:
        raise ValueError("input cutoffs must match")
    for name, rho in (("rho_a", rho_a), ("rho_b", rho_b)):
        ev_min = float(np.linalg.eigvalsh(rho.mat).min())
        if ev_min < -1e-9 or abs(rho.trace() - 1.0) > 1e-6:
            raise ValueError(f"{name} is not a physical unit-trace state")
    d = rho_a.layout.dims[0]
    i_pow = 1j ** np.arange(d)
    t_diag = np.kron(np.ones(d), i_pow) + np.exp(1j * phi) * np.kron(i_pow, np.ones(d))
    joint = np.kron(rho_a.mat, rho_b.mat)
    out = t_diag[:, None] * joint * t_diag.conj()[None, :]
    tr = float(np.trace(out).real)
    if tr < 1e-12:
        raise ValueError("conditional map annihilated the input state")
    return DensityMatrix(ModeLayout((d, d)), out / tr)


def phi_basis(s: float, sign: int, cutoff: int) -> FockVector:
    """Orthogonal superpositions N_{+-} (|s+> +- |s->).

    The plus state is supported exactly on photon numbers 4k, the minus
    state exactly on 4k + 2; together they form an orthonormal qubit basis
    for the span of the two squeezed vacua.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    plus, minus = _pair(s, cutoff)
    amps = plus.amps + sign * minus.amps
    norm = np.linalg.norm(amps)
    if norm < 1e-12:
        raise ValueError("null state: the minus branch vanishes at s = 0")
    return FockVector(ModeLayout((cutoff,)), _phase_fixed(amps / norm))


def displaced_squeezed(alpha: complex, s: float, cutoff: int, strict: bool = False) -> FockVector:
    """D(alpha) S(s) |0>."""
    bound = _displacement_bound(cutoff)
    if abs(alpha) > bound:
        raise ValueError(f"|alpha| = {abs(alpha):.3f} exceeds the cutoff guard {bound:.3f}")
    base = squeezed_vacuum(SqueezeSpec(s, cutoff), strict=strict)
    out = apply_single_mode(base, 0, "displace", alpha, strict=strict)
    return FockVector(out.layout, _phase_fixed(out.amps))


def displaced_overlap(alpha: complex, beta: complex, r: float) -> float:
    """|<alpha,+r | beta,-r>|^2 for oppositely squeezed displaced states.

    Closed form exp(-|beta-alpha|^2 / cosh 2r) / cosh 2r; it decreases
    monotonically in |beta - alpha| and, at fixed separation d > 1, is
    maximized over r at r = arccosh(d^2)/2.
    """
    c = np.cosh(2.0 * r)
    return float(np.exp(-abs(beta - alpha) ** 2 / c) / c)


def two_mode_squeezed_vacuum(s: float, cutoff: int, strict: bool = False) -> FockVector:
    """sech(s) sum_n tanh(s)^n |n, n>."""
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    if strict and abs(s) > STRICT_SQUEEZE_LIMIT:
        raise ValueError(f"|s| > {STRICT_SQUEEZE_LIMIT} rejected in strict mode")
    d = cutoff
    diag = (np.tanh(s) ** np.arange(d)) / np.cosh(s)
    amps = np.zeros((d, d), dtype=complex)
    np.fill_diagonal(amps, diag)
    out = FockVector(ModeLayout((d, d)), amps.reshape(-1))
    check_tail(out, strict=strict, context="two_mode_squeezed_vacuum")
    return out


def esv_generalized(spec: DisplacedSqueezedSpec, phi: float, strict: bool = False) -> FockVector:
    """N' (|alpha+, beta-> + e^{i phi} |beta-, alpha+>) from displaced components."""
    ap = displaced_squeezed(spec.alpha, spec.s, spec.cutoff, strict=strict)
    bm = displaced_squeezed(spec.beta, -spec.s, spec.cutoff, strict=strict)
    amps = np.kron(ap.amps, bm.amps) + np.exp(1j * phi) * np.kron(bm.amps, ap.amps)
    norm = np.linalg.norm(amps)
    if norm < 1e-9:
        raise ValueError("degenerate superposition is the zero vector")
    return FockVector(ModeLayout((spec.cutoff, spec.cutoff)), _phase_fixed(amps / norm))
