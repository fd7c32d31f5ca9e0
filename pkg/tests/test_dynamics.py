import numpy as np
import pytest

from esvsim import (
    EsvSpec,
    JcSpec,
    SqueezeSpec,
    bs_loss,
    entangling_power,
    esv_mixed,
    esv_pure,
    jc_evolve_pair,
    jc_unitary,
    log_negativity,
    squeezed_vacuum,
    tensor,
    two_mode_squeezed_vacuum,
)
from esvsim.fock import ModeLayout, basis_state


def qubit_mode_state(q, n, d):
    return basis_state(ModeLayout((2, d)), (q, n))


def test_jc_tau_zero_is_identity():
    v = qubit_mode_state(0, 3, 8)
    out = jc_evolve_pair(v, 0.0)
    assert np.array_equal(out.amps, v.amps)


def test_jc_exchanges_one_excitation():
    # |g,1> at tau = pi/2 -> -i |e,0>
    out = jc_evolve_pair(qubit_mode_state(0, 1, 6), np.pi / 2)
    t = out.as_tensor()
    assert t[1, 0] == pytest.approx(-1j, abs=1e-12)
    assert np.abs(np.delete(t.reshape(-1), 6)).max() < 1e-12


def test_jc_ground_vacuum_invariant():
    for tau in (0.3, 2.0, 8.0):
        out = jc_evolve_pair(qubit_mode_state(0, 0, 6), tau)
        assert out.as_tensor()[0, 0] == pytest.approx(1.0, abs=1e-14)


def test_jc_unitarity_and_excitation_conservation():
    d = 12
    u = jc_unitary(JcSpec(1.7, d))
    assert np.abs(u @ u.conj().T - np.eye(2 * d)).max() < 1e-12
    # total excitation = qubit + photon number is conserved blockwise
    exc = np.concatenate([np.arange(d), np.arange(d) + 1]).astype(float)
    mixing = u * (exc[:, None] != exc[None, :])
    assert np.abs(mixing).max() < 1e-14


def test_jc_spec_validation():
    with pytest.raises(ValueError):
        JcSpec(-1.0, 8)
    with pytest.raises(ValueError):
        jc_evolve_pair(basis_state(ModeLayout((3, 4)), (0, 0)), 1.0)


def test_entangling_power_zero_at_tau_zero():
    state = esv_pure(EsvSpec(1.1, 0.0, 24))
    assert entangling_power(state, 0.0) <= 1e-12


def test_entangling_power_zero_for_separable_inputs():
    prod = tensor(squeezed_vacuum(SqueezeSpec(0.8, 20)).normalized(),
                  squeezed_vacuum(SqueezeSpec(-0.8, 20)).normalized())
    for tau in (1.0, 4.0, 8.0):
        assert entangling_power(prod, tau) <= 1e-9


def test_entangling_power_vanishes_by_parity_for_even_states():
    """Squeezed-vacuum superpositions occupy only even photon numbers, so the
    single-quantum exchange correlates the qubit level with the photon-number
    parity: every two-qubit coherence traces to zero and the transferred
    entanglement is exactly zero, for any tau and phase."""
    for s, phi, tau in ((1.1, 0.0, 8.0), (0.6, np.pi, 3.7), (1.7, np.pi / 2, 10.0)):
        state = esv_pure(EsvSpec(s, phi, 30))
        assert entangling_power(state, tau) <= 1e-12


def test_entangling_power_detects_odd_even_mixtures():
    # sanity check that the machinery does report entanglement when the
    # input carries coherence between neighbouring photon numbers
    state = two_mode_squeezed_vacuum(1.1, 30).normalized()
    vals = [entangling_power(state, tau) for tau in (2.0, 4.6, 8.0)]
    assert max(vals) > 0.5
    assert all(v >= 0.0 for v in vals)


def test_entangling_power_lower_bounds_mode_entanglement():
    state = two_mode_squeezed_vacuum(0.9, 26).normalized()
    ln_modes = log_negativity(state, [1])
    for tau in (2.0, 4.0, 6.0, 8.0, 10.0):
        assert entangling_power(state, tau) <= ln_modes + 1e-6
    esv = esv_pure(EsvSpec(1.1, 0.0, 26))
    ln_esv = log_negativity(esv, [1])
    for tau in (2.0, 8.0):
        assert entangling_power(esv, tau) <= ln_esv + 1e-6


def test_jc_unitary_matches_brute_force_exponential():
    # independent oracle: expm(-i tau (sp (x) a + sm (x) a†))
    from scipy.linalg import expm
    d, tau = 10, 1.37
    a = np.zeros((d, d), dtype=complex)
    a[np.arange(d - 1), np.arange(1, d)] = np.sqrt(np.arange(1, d))
    sp = np.array([[0, 0], [1, 0]], dtype=complex)   # |e><g| with g = 0
    h = np.kron(sp, a) + np.kron(sp.conj().T, a.conj().T)
    brute = expm(-1j * tau * h)
    assert np.abs(jc_unitary(JcSpec(tau, d)) - brute).max() < 1e-12


def test_entangling_power_pure_and_mixed_paths_agree():
    state = two_mode_squeezed_vacuum(0.8, 16).normalized()
    for tau in (1.0, 4.6):
        pure = entangling_power(state, tau)
        mixed = entangling_power(state.density(), tau)
        assert pure == pytest.approx(mixed, abs=1e-10)


def test_entangling_power_mixed_input_runs_at_small_cutoff():
    d = 14
    lossy = bs_loss(squeezed_vacuum(SqueezeSpec(1.1, d)).normalized().density(), 0.8)
    rho = esv_mixed(lossy, lossy, 0.0)
    vals = [entangling_power(rho, tau) for tau in (0.0, 4.0, 8.0)]
    assert vals[0] <= 1e-12
    assert all(v <= 0.4 + 1e-3 for v in vals)
