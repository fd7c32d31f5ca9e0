"""Truncated-Fock-space tensor algebra for multi-mode bosonic states.

Each mode is truncated to a finite photon-number basis |0>, ..., |cutoff-1>.
Multi-mode objects are stored flat (row-major over the per-mode dimensions),
with mode 0 the slowest index.  All operations are pure functions: inputs are
never mutated and outputs are freshly allocated, so values can be shared
freely across threads.

Conventions fixed here and relied on everywhere else:

* vacuum quadrature variance is 1/2, with x = (a + a^dag)/sqrt(2);
* the squeeze gate S(s) = exp[(s/2)(a^2 - a^dag^2)] squeezes x for s > 0 and
  produces even-photon amplitudes proportional to (-tanh(s)/2)^n;
* the displacement gate is D(alpha) = exp(alpha a^dag - conj(alpha) a);
* the balanced beam splitter on modes (a, b) realizes
  a -> (a + b)/sqrt(2), b -> (b - a)/sqrt(2).

Gates are matrix exponentials of the generator restricted to the cutoff.
They are exactly unitary on the truncated space (the truncated generators
stay anti-Hermitian); what is lost to truncation shows up as infidelity
against the untruncated ideal, which the tail-mass diagnostic tracks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import expm

__all__ = [
    "ModeLayout",
    "FockVector",
    "DensityMatrix",
    "MomentIndex",
    "TruncationError",
    "TruncationWarning",
    "vacuum",
    "basis_state",
    "annihilator",
    "squeeze_matrix",
    "displace_matrix",
    "phase_matrix",
    "beamsplitter_matrix",
    "apply_single_mode",
    "apply_beamsplitter",
    "tensor",
    "partial_trace",
    "reduced_density",
    "partial_transpose",
    "swap_modes",
    "resize_mode",
    "moment",
    "eigs_hermitian",
    "fidelity",
    "tail_mass",
    "check_tail",
]

TAIL_THRESHOLD = 1e-8     # tolerated population in the top Fock band
TAIL_FRACTION = 0.1       # the "top band" is the highest 10% of levels
HERMITICITY_TOL = 1e-10
EIG_ZERO_BAND = 1e-11     # eigenvalues below this are treated as exact zeros


class TruncationError(RuntimeError):
    """Raised in strict mode when the Fock tail carries too much weight."""


class TruncationWarning(UserWarning):
    """Emitted (non-strict mode) when the Fock tail carries too much weight."""


@dataclass(frozen=True)
class ModeLayout:
    """Ordered per-mode Fock cutoffs; dimension of mode m is dims[m]."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise ValueError(f"mode dimensions must be positive, got {self.dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def nmodes(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def check_mode(self, mode: int) -> int:
        if not 0 <= mode < self.nmodes:
            raise ValueError(f"mode {mode} out of range for {self.nmodes} modes")
        return mode


@dataclass(frozen=True)
class FockVector:
    """Pure multi-mode state: complex amplitudes over the tensor basis."""

    layout: ModeLayout
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if amps.size != self.layout.total_dim:
            raise ValueError(
                f"amplitude length {amps.size} != layout dimension {self.layout.total_dim}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("non-finite amplitude")
        object.__setattr__(self, "amps", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "FockVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return FockVector(self.layout, self.amps / n)

    def as_tensor(self) -> np.ndarray:
        return self.amps.reshape(self.layout.dims)

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.layout, np.outer(self.amps, self.amps.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed multi-mode state: Hermitian matrix over the same tensor basis.

    Hermiticity is enforced at construction.  Positivity is not (partial
    transposes are legitimately non-positive); physical inputs are expected
    to have eigenvalues >= -1e-9.
    """

    layout: ModeLayout
    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        d = self.layout.total_dim
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} != ({d}, {d})")
        scale = max(1.0, float(np.abs(mat).max())) if mat.size else 1.0
        dev = float(np.abs(mat - mat.conj().T).max())
        if dev > HERMITICITY_TOL * scale:
            raise ValueError(f"matrix not Hermitian: max deviation {dev:.3e}")
        object.__setattr__(self, "mat", mat)

    def trace(self) -> float:
        return float(np.trace(self.mat).real)


@dataclass(frozen=True)
class MomentIndex:
    """Multi-index (i1, i2, i3, i4) labelling a†^i1 a^i2 b†^i3 b^i4."""

    i1: int
    i2: int
    i3: int
    i4: int

    def __post_init__(self):
        for v in self.astuple():
            if v < 0:
                raise ValueError(f"negative multi-index entry in {self.astuple()}")

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.i1, self.i2, self.i3, self.i4)

    @property
    def weight(self) -> int:
        return self.i1 + self.i2 + self.i3 + self.i4


# ---------------------------------------------------------------------------
# constructors and elementary matrices
# ---------------------------------------------------------------------------

def vacuum(layout: ModeLayout) -> FockVector:
    """The state |0...0>."""
    amps = np.zeros(layout.total_dim, dtype=complex)
    amps[0] = 1.0
    return FockVector(layout, amps)


def basis_state(layout: ModeLayout, occupations: Sequence[int]) -> FockVector:
    """The Fock basis state |n_0, n_1, ...>."""
    if len(occupations) != layout.nmodes:
        raise ValueError("one occupation number per mode required")
    for n, d in zip(occupations, layout.dims):
        if not 0 <= n < d:
            raise ValueError(f"occupation {n} outside cutoff {d}")
    amps = np.zeros(layout.total_dim, dtype=complex)
    amps[np.ravel_multi_index(tuple(occupations), layout.dims)] = 1.0
    return FockVector(layout, amps)


@lru_cache(maxsize=None)
def annihilator(dim: int) -> np.ndarray:
    """Truncated annihilation operator a with a|n> = sqrt(n)|n-1>."""
    a = np.zeros((dim, dim), dtype=complex)
    ns = np.arange(1, dim)
    a[ns - 1, ns] = np.sqrt(ns)
    a.flags.writeable = False
    return a


@lru_cache(maxsize=None)
def squeeze_matrix(dim: int, s: float) -> np.ndarray:
    """S(s) = exp[(s/2)(a^2 - a†^2)]; S(s)|0> has amplitudes ~ (-tanh(s)/2)^n."""
    a = annihilator(dim)
    gen = 0.5 * s * (a @ a - a.conj().T @ a.conj().T)
    u = expm(gen)
    u.flags.writeable = False
    return u


@lru_cache(maxsize=512)
def displace_matrix(dim: int, alpha: complex) -> np.ndarray:
    """D(alpha) = exp(alpha a† - conj(alpha) a)."""
    a = annihilator(dim)
    gen = alpha * a.conj().T - np.conjugate(alpha) * a
    u = expm(gen)
    u.flags.writeable = False
    return u


@lru_cache(maxsize=None)
def phase_matrix(dim: int, theta: float) -> np.ndarray:
    """R(theta) = exp(i theta a†a), diagonal in the Fock basis."""
    u = np.diag(np.exp(1j * theta * np.arange(dim)))
    u.flags.writeable = False
    return u


@lru_cache(maxsize=16)
def _beamsplitter_blocks(dim_a: int, dim_b: int, theta: float) -> tuple:
    """Per-block unitaries of exp[theta (a b† - a† b)] over total photon number.

    The generator conserves n_a + n_b even on the truncated grid, so the
    exponential factorizes into one small unitary per total; this is exactly
    the full matrix exponential, computed and applied without ever building
    the (dim_a*dim_b)^2 matrix.
    """
    blocks = []
    for total in range(dim_a + dim_b - 1):
        ms = np.array([m for m in range(dim_a) if 0 <= total - m < dim_b])
        k = len(ms)
        gen = np.zeros((k, k))
        for idx in range(1, k):
            m = ms[idx]
            # a b† moves |m, total-m> to |m-1, total-m+1>
            gen[idx - 1, idx] = np.sqrt(m * (total - m + 1))
        block = expm(theta * (gen - gen.T))
        blocks.append((ms, total - ms, block))
    return tuple(blocks)


def beamsplitter_matrix(dim_a: int, dim_b: int, theta: float = np.pi / 4) -> np.ndarray:
    """Dense exp[theta (a b† - a† b)] on the (dim_a x dim_b) grid.

    theta = pi/4 gives the balanced splitter a -> (a+b)/sqrt(2),
    b -> (b-a)/sqrt(2).  Intended for inspection and small dimensions;
    apply_beamsplitter works block-wise and never builds this matrix.
    """
    u = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for ms, ns, block in _beamsplitter_blocks(dim_a, dim_b, theta):
        rows = ms * dim_b + ns
        u[np.ix_(rows, rows)] = block
    return u


# ---------------------------------------------------------------------------
# tail-mass diagnostic
# ---------------------------------------------------------------------------

def _band_mask(layout: ModeLayout) -> np.ndarray:
    """Boolean mask of basis states with any mode in its top Fock band.

    The band is the top 10% of levels, at least two of them so that both
    photon-number parities are covered.  Modes with fewer than 8 levels
    (qubit ancillas and the like) are not treated as truncated oscillators
    and carry no band.
    """
    mask = np.zeros(layout.dims, dtype=bool)
    for m, d in enumerate(layout.dims):
        if d < 8:
            continue
        band = max(2, int(round(TAIL_FRACTION * d)))
        idx = [slice(None)] * layout.nmodes
        idx[m] = slice(d - band, d)
        mask[tuple(idx)] = True
    return mask.reshape(-1)


def tail_mass(state: FockVector | DensityMatrix) -> float:
    """Population in the top 10% of Fock levels of any mode."""
    mask = _band_mask(state.layout)
    if isinstance(state, FockVector):
        return float(np.abs(state.amps[mask]) ** 2 @ np.ones(mask.sum()))
    return float(np.real(np.diag(state.mat))[mask].sum())


def check_tail(state, strict: bool = False, context: str = "operation") -> None:
    """Flag excessive truncation-tail mass: error in strict mode, else warn."""
    mass = tail_mass(state)
    if mass <= TAIL_THRESHOLD:
        return
    if strict:
        raise TruncationError(
            f"{context}: tail mass {mass:.3e} exceeds {TAIL_THRESHOLD:.0e}; raise the cutoff"
        )
    warnings.warn(
        f"{context}: Fock-tail mass above {TAIL_THRESHOLD:.0e}; results may be truncation-limited",
        TruncationWarning,
        stacklevel=3,
    )


# ---------------------------------------------------------------------------
# applying operators
# ---------------------------------------------------------------------------

def _apply_left(amps: np.ndarray, dims: Sequence[int], modes: Sequence[int], u: np.ndarray) -> np.ndarray:
    """Apply u to the given modes of a flat coefficient array.

    The array may carry extra trailing structure (e.g. the bra index of a
    density matrix); everything that is not a target mode is left alone.
    """
    extra = amps.size // int(np.prod(dims))
    shape = list(dims) + ([extra] if extra > 1 else [])
    t = amps.reshape(shape)
    naxes = len(shape)
    order = list(modes) + [ax for ax in range(naxes) if ax not in modes]
    t = np.transpose(t, order)
    dsel = int(np.prod([shape[ax] for ax in modes]))
    rest = t.size // dsel
    t = (u @ t.reshape(dsel, rest)).reshape([shape[ax] for ax in order])
    t = np.transpose(t, np.argsort(order))
    return t.reshape(-1)


def _apply_unitary(state, modes: Sequence[int], u: np.ndarray):
    """Apply a unitary acting on the given modes: U|psi> or U rho U†."""
    if isinstance(state, FockVector):
        return FockVector(state.layout, _apply_left(state.amps, state.layout.dims, modes, u))
    d = state.layout.total_dim
    half = _apply_left(state.mat.reshape(-1), state.layout.dims, modes, u).reshape(d, d)
    full = _apply_left(half.conj().T.reshape(-1), state.layout.dims, modes, u).reshape(d, d)
    return DensityMatrix(state.layout, full.conj().T)


def apply_single_mode(state, mode: int, gate: str, value, strict: bool = False):
    """Apply a single-mode gate ("squeeze", "displace" or "phase") to a state.

    The gate is the truncated-generator matrix exponential; no renormalization
    is performed, so any norm loss is a truncation diagnostic.
    """
    state.layout.check_mode(mode)
    z = complex(value)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError("gate parameter must be finite")
    dim = state.layout.dims[mode]
    if gate == "squeeze":
        u = squeeze_matrix(dim, float(value))
    elif gate == "displace":
        u = displace_matrix(dim, z)
    elif gate == "phase":
        u = phase_matrix(dim, float(value))
    else:
        raise ValueError(f"unknown gate {gate!r}; expected squeeze, displace or phase")
    out = _apply_unitary(state, [mode], u)
    if gate != "phase":
        check_tail(out, strict=strict, context=f"{gate} gate")
    return out


def _apply_bs_left(amps: np.ndarray, dims: Sequence[int], mode_a: int, mode_b: int,
                   blocks) -> np.ndarray:
    """Block-wise left action of the beam splitter on a flat coefficient array."""
    extra = amps.size // int(np.prod(dims))
    shape = list(dims) + ([extra] if extra > 1 else [])
    naxes = len(shape)
    order = [mode_a, mode_b] + [ax for ax in range(naxes) if ax not in (mode_a, mode_b)]
    t = np.transpose(amps.reshape(shape), order)
    tshape = t.shape
    t = t.reshape(tshape[0], tshape[1], -1).copy()
    for ms, ns, block in blocks:
        t[ms, ns, :] = block @ t[ms, ns, :]
    t = t.reshape(tshape)
    t = np.transpose(t, np.argsort(order))
    return t.reshape(-1)


def apply_beamsplitter(state, mode_a: int, mode_b: int, theta: float = np.pi / 4,
                       strict: bool = False):
    """Mix two modes on a beam splitter: a -> a cos(theta) + b sin(theta).

    theta = pi/4 (default) is the balanced splitter.  Total photon number in
    the pair is conserved exactly, including on the truncated grid.
    """
    state.layout.check_mode(mode_a)
    state.layout.check_mode(mode_b)
    if mode_a == mode_b:
        raise ValueError("beam splitter requires two distinct modes")
    da, db = state.layout.dims[mode_a], state.layout.dims[mode_b]
    blocks = _beamsplitter_blocks(da, db, theta)
    dims = state.layout.dims
    if isinstance(state, FockVector):
        out = FockVector(state.layout, _apply_bs_left(state.amps, dims, mode_a, mode_b, blocks))
    else:
        d = state.layout.total_dim
        half = _apply_bs_left(state.mat.reshape(-1), dims, mode_a, mode_b, blocks).reshape(d, d)
        full = _apply_bs_left(half.conj().T.reshape(-1), dims, mode_a, mode_b, blocks).reshape(d, d)
        out = DensityMatrix(state.layout, full.conj().T)
    check_tail(out, strict=strict, context="beam splitter")
    return out


# ---------------------------------------------------------------------------
# tensor structure
# ---------------------------------------------------------------------------

def tensor(x, y):
    """Tensor product of two states of the same kind; layouts concatenate."""
    layout = ModeLayout(x.layout.dims + y.layout.dims)
    if isinstance(x, FockVector) and isinstance(y, FockVector):
        return FockVector(layout, np.kron(x.amps, y.amps))
    if isinstance(x, DensityMatrix) and isinstance(y, DensityMatrix):
        return DensityMatrix(layout, np.kron(x.mat, y.mat))
    raise TypeError("tensor requires two FockVectors or two DensityMatrices")


def _parse_modes(layout: ModeLayout, modes: Iterable[int]) -> list[int]:
    out = sorted({layout.check_mode(int(m)) for m in modes})
    return out


def reduced_density(state, keep: Iterable[int]) -> DensityMatrix:
    """Reduced density matrix on the kept modes (complement traced out)."""
    keep = _parse_modes(state.layout, keep)
    if not keep:
        raise ValueError("keep set must be non-empty")
    dims = state.layout.dims
    n = len(dims)
    drop = [m for m in range(n) if m not in keep]
    dkeep = int(np.prod([dims[m] for m in keep]))
    if isinstance(state, FockVector):
        t = np.transpose(state.as_tensor(), keep + drop).reshape(dkeep, -1)
        mat = t @ t.conj().T
    else:
        t = state.mat.reshape(dims + dims)
        # pair up bra/ket axes of each dropped mode and trace them out
        for m in reversed(drop):
            t = np.trace(t, axis1=m, axis2=m + (t.ndim // 2))
        perm_dims = [dims[m] for m in keep]
        mat = t.reshape(int(np.prod(perm_dims)), -1)
    out_layout = ModeLayout(tuple(dims[m] for m in keep))
    mat = 0.5 * (mat + mat.conj().T)  # scrub rounding noise
    return DensityMatrix(out_layout, mat)


def partial_trace(state: DensityMatrix, keep: Iterable[int]) -> DensityMatrix:
    """Trace out every mode not in `keep`."""
    if not isinstance(state, DensityMatrix):
        raise TypeError("partial_trace acts on density matrices; see reduced_density")
    return reduced_density(state, keep)


def partial_transpose(state: DensityMatrix, modes: Iterable[int]) -> DensityMatrix:
    """Transpose the bra/ket indices of the selected modes (exact, involutive)."""
    modes = _parse_modes(state.layout, modes)
    dims = state.layout.dims
    n = len(dims)
    t = state.mat.reshape(dims + dims)
    perm = list(range(2 * n))
    for m in modes:
        perm[m], perm[m + n] = perm[m + n], perm[m]
    d = state.layout.total_dim
    return DensityMatrix(state.layout, np.transpose(t, perm).reshape(d, d))


def swap_modes(state, i: int, j: int):
    """Exchange two modes of equal cutoff."""
    i = state.layout.check_mode(i)
    j = state.layout.check_mode(j)
    dims = state.layout.dims
    if dims[i] != dims[j]:
        raise ValueError("swap requires equal cutoffs")
    n = len(dims)
    perm = list(range(n))
    perm[i], perm[j] = perm[j], perm[i]
    if isinstance(state, FockVector):
        return FockVector(state.layout, np.transpose(state.as_tensor(), perm).reshape(-1))
    t = state.mat.reshape(dims + dims)
    return DensityMatrix(state.layout,
                         np.transpose(t, perm + [p + n for p in perm]).reshape(state.mat.shape))


def resize_mode(state, mode: int, dim: int):
    """Zero-pad (or truncate) one mode to a new cutoff.

    Padding is exact.  Truncation discards the amplitudes above the new
    cutoff, so the result may need renormalization; callers own that choice.
    """
    mode = state.layout.check_mode(mode)
    dims = list(state.layout.dims)
    old = dims[mode]
    if dim == old:
        return state
    dims_new = dims.copy()
    dims_new[mode] = int(dim)
    new_layout = ModeLayout(tuple(dims_new))
    take = min(old, dim)
    if isinstance(state, FockVector):
        t = np.zeros(dims_new, dtype=complex)
        src = state.as_tensor()
        sel = [slice(None)] * len(dims)
        sel[mode] = slice(0, take)
        t[tuple(sel)] = src[tuple(sel)]
        return FockVector(new_layout, t.reshape(-1))
    n = len(dims)
    t = np.zeros(dims_new + dims_new, dtype=complex)
    src = state.mat.reshape(dims + dims)
    sel = [slice(None)] * (2 * n)
    sel[mode] = slice(0, take)
    sel[mode + n] = slice(0, take)
    t[tuple(sel)] = src[tuple(sel)]
    d = new_layout.total_dim
    return DensityMatrix(new_layout, t.reshape(d, d))


# ---------------------------------------------------------------------------
# moments, spectra, fidelity
# ---------------------------------------------------------------------------

def _word_operators(layout: ModeLayout, word) -> dict[int, np.ndarray]:
    """Collapse an operator word into one matrix per touched mode.

    `word` is a sequence of (mode, dagger_power, lower_power) factors read
    left to right; factors on different modes commute, factors on the same
    mode are multiplied in word order.
    """
    ops: dict[int, np.ndarray] = {}
    for mode, ndag, nlow in word:
        mode = layout.check_mode(int(mode))
        if ndag < 0 or nlow < 0:
            raise ValueError("operator powers must be non-negative")
        d = layout.dims[mode]
        a = annihilator(d)
        f = np.linalg.matrix_power(a.conj().T, ndag) @ np.linalg.matrix_power(a, nlow)
        ops[mode] = f if mode not in ops else ops[mode] @ f
    return ops


def moment(state, word, strict: bool = False) -> complex:
    """Expectation of an ordered ladder-operator word, <a†^k a^l ...>.

    Example: ``moment(psi, [(0, 1, 1)])`` is <a†a> on mode 0, and
    ``moment(psi, [(0, 1, 0), (1, 0, 1)])`` is <a† b>.
    """
    ops = _word_operators(state.layout, word)
    if strict:
        raises = max((sum(nd for m, nd, _ in word if m == mode) for mode in ops), default=0)
        if raises > 0:
            check_tail(state, strict=True, context="moment")
    if isinstance(state, FockVector):
        amps = state.amps
        for mode, op in ops.items():
            amps = _apply_left(amps, state.layout.dims, [mode], op)
        return complex(np.vdot(state.amps, amps))
    flat = state.mat.reshape(-1)
    for mode, op in ops.items():
        flat = _apply_left(flat, state.layout.dims, [mode], op)
    d = state.layout.total_dim
    return complex(np.trace(flat.reshape(d, d)))


def eigs_hermitian(m) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, descending."""
    mat = m.mat if isinstance(m, DensityMatrix) else np.asarray(m, dtype=complex)
    scale = max(1.0, float(np.abs(mat).max()))
    dev = float(np.abs(mat - mat.conj().T).max())
    if dev > HERMITICITY_TOL * scale:
        raise ValueError(f"input not Hermitian: max deviation {dev:.3e}")
    ev = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
    return ev[::-1]


def fidelity(x: FockVector, y: FockVector) -> float:
    """|<x|y>|^2 for two normalized pure states on the same layout."""
    if x.layout != y.layout:
        raise ValueError("fidelity requires matching layouts")
    return float(np.abs(np.vdot(x.amps, y.amps)) ** 2)
