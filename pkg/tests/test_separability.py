import numpy as np
import pytest

from esvsim import (
    DUAN_SELECTOR,
    EsvSpec,
    MinorSelector,
    MomentIndex,
    SqueezeSpec,
    canonical_indices,
    duan_det,
    esv_criterion_det,
    esv_pure,
    minor_determinant,
    moment_matrix_entry,
    multiindex_compare,
    simon_det,
    squeezed_vacuum,
    tensor,
    two_mode_squeezed_vacuum,
    vacuum,
)
from esvsim.fock import DensityMatrix, ModeLayout
from esvsim.separability import moment_matrix_entry_via_pt

from oracles import full_operator


def test_ordering_examples():
    zero = MomentIndex(0, 0, 0, 0)
    e1 = MomentIndex(1, 0, 0, 0)
    e4 = MomentIndex(0, 0, 0, 1)
    assert multiindex_compare(zero, e1) == -1
    assert multiindex_compare(e1, e4) == -1   # highest differing slot decides
    assert multiindex_compare(e4, e4) == 0
    assert multiindex_compare(e4, e1) == 1


def test_ordering_is_a_total_order_up_to_weight_three():
    idx = [i for i in canonical_indices(3)]
    assert len(idx) == 35
    for a in idx:
        for b in idx:
            cab, cba = multiindex_compare(a, b), multiindex_compare(b, a)
            assert cab == -cba                         # antisymmetry
            assert (cab == 0) == (a.astuple() == b.astuple())  # trichotomy
    # transitivity on the sorted enumeration
    for i in range(len(idx) - 1):
        assert multiindex_compare(idx[i], idx[i + 1]) == -1
    rng = np.random.default_rng(0)
    for a, b, c in rng.choice(len(idx), size=(300, 3)):
        trip = sorted((idx[a], idx[b], idx[c]),
                      key=lambda x: [multiindex_compare(x, y) for y in idx].count(1))
        assert multiindex_compare(trip[0], trip[2]) <= 0


def test_canonical_enumeration_prefix():
    first5 = [i.astuple() for i in canonical_indices()[:5]]
    assert first5 == [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]


def test_entry_unit_and_hermiticity():
    state = esv_pure(EsvSpec(0.7, 0.9, 20))
    zero = MomentIndex(0, 0, 0, 0)
    assert moment_matrix_entry(state, zero, zero) == pytest.approx(1.0, abs=1e-10)
    rng = np.random.default_rng(7)
    idx = canonical_indices(2)
    for _ in range(30):
        i, j = rng.choice(len(idx), size=2)
        a = moment_matrix_entry(state, idx[i], idx[j])
        b = moment_matrix_entry(state, idx[j], idx[i])
        assert a == pytest.approx(np.conj(b), abs=1e-10)


def test_entry_swap_identity_equals_explicit_pt():
    state = esv_pure(EsvSpec(0.8, 0.0, 18))
    idx = canonical_indices(2)
    for i in idx:
        for j in idx:
            direct = moment_matrix_entry(state, i, j)
            via_pt = moment_matrix_entry_via_pt(state, i, j)
            assert direct == pytest.approx(via_pt, abs=1e-9)


def test_minor_selector_validation():
    with pytest.raises(ValueError):
        MinorSelector(())
    with pytest.raises(ValueError):
        MinorSelector((2, 2))
    with pytest.raises(ValueError):
        MinorSelector((0, 1))
    with pytest.raises(ValueError):
        minor_determinant(esv_pure(EsvSpec(0.5, 0.0, 10)), MinorSelector((1, 10_000)))


def test_minor_trivial_cases():
    state = esv_pure(EsvSpec(0.6, 0.2, 16))
    assert minor_determinant(state, MinorSelector((1,))) == pytest.approx(1.0, abs=1e-10)
    vac = vacuum(ModeLayout((8, 8)))
    assert simon_det(vac) == pytest.approx(0.0, abs=1e-12)
    assert duan_det(vac) == pytest.approx(0.0, abs=1e-12)
    assert esv_criterion_det(vac) == pytest.approx(0.0, abs=1e-12)


def test_duan_minor_negative_for_tmsv_with_dense_oracle():
    d = 28
    state = two_mode_squeezed_vacuum(0.5, d).normalized()
    got = minor_determinant(state, DUAN_SELECTOR)
    assert got < -1e-3
    # dense-kron reconstruction of the same 3x3 determinant
    def dense_entry(i, j):
        word = [(0, i[0], i[1]), (1, j[2], j[3]), (0, j[1], j[0]), (1, i[3], i[2])]
        op = full_operator((d, d), word)
        return complex(np.vdot(state.amps, op @ state.amps))
    rows = [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0)]
    m = np.array([[dense_entry(i, j) for j in rows] for i in rows])
    assert got == pytest.approx(np.linalg.det(m).real, abs=1e-9)
    # closed form: det = -sinh(s)^2 for the two-mode squeezed vacuum
    assert got == pytest.approx(-np.sinh(0.5) ** 2, abs=1e-6)


def test_simon_detects_tmsv():
    state = two_mode_squeezed_vacuum(0.5, 28).normalized()
    assert simon_det(state) < -1e-3


def test_second_moment_tests_blind_to_esv():
    for phi in (0.0, np.pi):
        state = esv_pure(EsvSpec(1.0, phi, 36))
        assert simon_det(state) >= -1e-9
        assert duan_det(state) >= -1e-9


def test_esv_criterion_detects_everywhere_on_grid():
    for s in (0.2, 0.5, 1.0):
        for phi in (0.0, np.pi / 2, np.pi):
            state = esv_pure(EsvSpec(s, phi, 36))
            assert esv_criterion_det(state) < -1e-12


def test_esv_criterion_nonnegative_on_product_state():
    prod = tensor(squeezed_vacuum(SqueezeSpec(0.8, 30)),
                  squeezed_vacuum(SqueezeSpec(-0.8, 30))).normalized()
    assert esv_criterion_det(prod) >= -1e-9


def test_moment_weight_bound():
    state = esv_pure(EsvSpec(0.5, 0.0, 12))
    heavy = MomentIndex(3, 2, 0, 0)
    with pytest.raises(ValueError):
        moment_matrix_entry(state, heavy, heavy)


def test_minors_work_on_density_matrices():
    state = esv_pure(EsvSpec(0.7, np.pi, 24))
    rho = state.density()
    assert esv_criterion_det(rho) == pytest.approx(esv_criterion_det(state), abs=1e-10)


def test_maximally_mixed_state_is_undetected():
    d = 6
    rho = DensityMatrix(ModeLayout((d, d)), np.eye(d * d, dtype=complex) / (d * d))
    assert simon_det(rho) >= -1e-12
    assert duan_det(rho) >= -1e-12
    assert esv_criterion_det(rho) >= -1e-12
