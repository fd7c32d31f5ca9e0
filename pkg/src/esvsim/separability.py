"""Moment-matrix separability tests for two-mode states.

The matrix M(rho^PT) collects moments of the partially transposed state,

    M_ij(rho^PT) = <a†^i1 a^i2 b†^i3 b^i4  a†^j2 a^j1 b†^j4 b^j3>_{rho^PT},

indexed by multi-indices i = (i1, i2, i3, i4).  Partial transposition on
mode b exchanges the b-entries of i and j, so every entry can be evaluated
directly on the original state:

    M_ij(rho^PT) = <a†^i1 a^i2  b†^j3 b^j4  a†^j2 a^j1  b†^i4 b^i3>_rho.

A state is inseparable iff some principal minor of M(rho^PT) has negative
determinant.  The classic second-moment tests are the minors selected by
positions (1,2,3,4,5) and (1,2,4) of the canonical multi-index enumeration;
a dedicated fourth-order 5x5 minor certifies the entanglement of the
squeezed-vacuum superpositions for every squeezing and relative phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from itertools import product

import numpy as np

from .fock import FockVector, MomentIndex, moment, partial_transpose

__all__ = [
    "MinorSelector",
    "multiindex_compare",
    "canonical_indices",
    "moment_matrix_entry",
    "moment_matrix_entry_via_pt",
    "minor_determinant",
    "simon_det",
    "duan_det",
    "esv_criterion_det",
    "SIMON_SELECTOR",
    "DUAN_SELECTOR",
]

MAX_WEIGHT = 4          # moment words above this weight are not supported
DET_IMAG_TOL = 1e-10


@dataclass(frozen=True)
class MinorSelector:
    """Strictly increasing 1-based row/column positions of a principal minor."""

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if not rows:
            raise ValueError("selector must be non-empty")
        if any(r < 1 for r in rows) or any(b <= a for a, b in zip(rows, rows[1:])):
            raise ValueError(f"selector must be strictly increasing and >= 1: {rows}")
        object.__setattr__(self, "rows", rows)


SIMON_SELECTOR = MinorSelector((1, 2, 3, 4, 5))
DUAN_SELECTOR = MinorSelector((1, 2, 4))

# multi-indices of the dedicated fourth-order criterion, in display order
_ESV_CRITERION_INDICES = (
    MomentIndex(0, 0, 0, 0),
    MomentIndex(0, 1, 0, 1),
    MomentIndex(0, 1, 1, 0),
    MomentIndex(1, 0, 0, 1),
    MomentIndex(1, 0, 1, 0),
)


def multiindex_compare(i: MomentIndex, j: MomentIndex) -> int:
    """Total order on multi-indices: -1, 0 or +1 for i < j, i = j, i > j.

    Lower total weight comes first; at equal weight the highest position k
    where the indices differ decides, larger entry meaning larger index.
    """
    if i.weight != j.weight:
        return -1 if i.weight < j.weight else 1
    ti, tj = i.astuple(), j.astuple()
    for k in (3, 2, 1, 0):
        if ti[k] != tj[k]:
            return -1 if ti[k] < tj[k] else 1
    return 0


@lru_cache(maxsize=None)
def canonical_indices(max_weight: int = MAX_WEIGHT) -> tuple[MomentIndex, ...]:
    """All multi-indices with weight <= max_weight, ascending in the order above."""
    idx = [MomentIndex(*t) for t in product(range(max_weight + 1), repeat=4)
           if sum(t) <= max_weight]
    return tuple(sorted(idx, key=cmp_to_key(multiindex_compare)))


def moment_matrix_entry(state, i: MomentIndex, j: MomentIndex, strict: bool = False) -> complex:
    """M_ij(rho^PT), evaluated on the original state via the b-swap identity."""
    _check_two_mode(state)
    if i.weight > MAX_WEIGHT or j.weight > MAX_WEIGHT:
        raise ValueError(f"multi-index weight above {MAX_WEIGHT} not supported")
    word = [(0, i.i1, i.i2), (1, j.i3, j.i4), (0, j.i2, j.i1), (1, i.i4, i.i3)]
    return moment(state, word, strict=strict)


def moment_matrix_entry_via_pt(state, i: MomentIndex, j: MomentIndex) -> complex:
    """Same entry computed the long way: transpose mode b, then plain moments.

    Kept as an independent cross-check of the swap identity.
    """
    _check_two_mode(state)
    rho = state.density() if isinstance(state, FockVector) else state
    rho_pt = partial_transpose(rho, [1])
    word = [(0, i.i1, i.i2), (1, i.i3, i.i4), (0, j.i2, j.i1), (1, j.i4, j.i3)]
    return moment(rho_pt, word)


def minor_determinant(state, selector: MinorSelector, strict: bool = False) -> float:
    """Determinant of the selected principal minor of M(rho^PT).

    The minor is Hermitian by construction; any imaginary residue of the
    determinant beyond tolerance is an error, otherwise it is discarded.
    """
    order = canonical_indices()
    if selector.rows[-1] > len(order):
        raise ValueError(
            f"selector position {selector.rows[-1]} beyond the weight-{MAX_WEIGHT} table"
        )
    idx = [order[r - 1] for r in selector.rows]
    return _det_of(state, idx, strict=strict)


def _det_of(state, indices, strict: bool = False) -> float:
    k = len(indices)
    m = np.empty((k, k), dtype=complex)
    for p in range(k):
        for q in range(k):
            m[p, q] = moment_matrix_entry(state, indices[p], indices[q], strict=strict)
    dev = float(np.abs(m - m.conj().T).max())
    scale = max(1.0, float(np.abs(m).max()))
    if dev > 1e-9 * scale:
        raise ValueError(f"moment minor not Hermitian: deviation {dev:.3e}")
    det = complex(np.linalg.det(m))
    if abs(det.imag) > DET_IMAG_TOL * (1.0 + abs(det)):
        raise ValueError(f"determinant has imaginary residue {det.imag:.3e}")
    return float(det.real)


def simon_det(state, strict: bool = False) -> float:
    """Second-moment determinant test; negative for every entangled Gaussian."""
    return minor_determinant(state, SIMON_SELECTOR, strict=strict)


def duan_det(state, strict: bool = False) -> float:
    """Three-row second-moment determinant test."""
    return minor_determinant(state, DUAN_SELECTOR, strict=strict)


def esv_criterion_det(state, strict: bool = False) -> float:
    """Fourth-order 5x5 minor tailored to squeezed-vacuum superpositions.

    Negative value certifies a negative partial transpose.  Unlike the
    second-moment tests it detects |Psi(phi)> for every s > 0 and phi.
    """
    return _det_of(state, _ESV_CRITERION_INDICES, strict=strict)


def _check_two_mode(state) -> None:
    if state.layout.nmodes != 2:
        raise ValueError("moment-matrix tests are defined for two-mode states")
