import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from opo_sidebands import gaussian
from opo_sidebands.errors import SpectrumPairingError
from opo_sidebands.modes import Bipartition


def random_state(n_modes, seed, pure=False):
    rng = np.random.default_rng(seed)
    return oracles.random_physical_state(n_modes, rng, pure=pure)


class TestSymplecticForm:
    def test_single_mode_block(self):
        assert np.array_equal(gaussian.symplectic_form(1), [[0.0, 1.0], [-1.0, 0.0]])

    def test_two_modes_is_direct_sum(self):
        w = gaussian.symplectic_form(2)
        assert np.array_equal(w[:2, :2], gaussian.symplectic_form(1))
        assert np.array_equal(w[2:, 2:], gaussian.symplectic_form(1))
        assert np.all(w[:2, 2:] == 0) and np.all(w[2:, :2] == 0)

    def test_antisymmetric_and_squares_to_minus_identity(self):
        w = gaussian.symplectic_form(6)
        assert np.array_equal(w.T, -w)
        assert np.allclose(w @ w, -np.eye(12))

    def test_rejects_nonpositive_mode_count(self):
        with pytest.raises(ValueError):
            gaussian.symplectic_form(0)


class TestSymplecticEigenvalues:
    def test_vacuum_spectrum_is_ones(self):
        for n in (1, 3, 6):
            assert np.allclose(gaussian.symplectic_eigenvalues(gaussian.vacuum(n)), 1.0)

    def test_squeezed_vacuum_is_pure(self):
        r = 0.8
        v = np.diag([math.exp(2 * r), math.exp(-2 * r)])
        assert gaussian.symplectic_eigenvalues(v) == pytest.approx([1.0], abs=1e-12)

    def test_thermal_scaling(self):
        assert np.allclose(gaussian.symplectic_eigenvalues(3.0 * np.eye(4)), [3.0, 3.0])

    def test_matches_williamson_oracle_on_random_states(self):
        rng = np.random.default_rng(42)
        for n in (1, 2, 3, 4, 5, 6):
            for _ in range(5):
                v, nus = oracles.random_physical_state(n, rng)
                got = gaussian.symplectic_eigenvalues(v)
                assert np.max(np.abs(got - oracles.williamson_eigenvalues(v))) < 1e-8
                assert np.max(np.abs(got - nus)) < 1e-8

    def test_rejects_asymmetric_input(self):
        v = np.eye(4)
        v[0, 1] = 1e-6
        with pytest.raises(ValueError, match="symmetric"):
            gaussian.symplectic_eigenvalues(v)

    def test_indefinite_matrix_clips_to_zero(self):
        # Symmetric but too strongly correlated to be a state: -(WV)^2 still
        # pairs (3, 3, -1, -1) and the negative pair surfaces as nu = 0.
        v = np.array(
            [
                [1.0, 0.0, 2.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [2.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]
        )
        nus = gaussian.symplectic_eigenvalues(v)
        assert nus[0] == 0.0
        assert not gaussian.is_physical(v)

    def test_rejects_unpairable_spectrum(self):
        # A symmetric matrix for which -(WV)^2 has genuinely complex
        # eigenvalues, so no degenerate real pairing exists.
        v = np.array(
            [
                [1.0, 0.0, 0.0, 2.0],
                [0.0, 1.0, 2.0, 0.0],
                [0.0, 2.0, -1.0, 0.0],
                [2.0, 0.0, 0.0, -1.0],
            ]
        )
        with pytest.raises(SpectrumPairingError):
            gaussian.symplectic_eigenvalues(v)


class TestIsPhysical:
    def test_vacuum_is_physical(self):
        assert gaussian.is_physical(np.eye(4))

    def test_below_vacuum_is_not(self):
        assert not gaussian.is_physical(0.5 * np.eye(4))

    def test_tmsv_is_physical_and_pure(self):
        v = oracles.tmsv_covariance(1.0)
        assert gaussian.is_physical(v)
        assert float(np.min(gaussian.symplectic_eigenvalues(v))) == pytest.approx(
            1.0, abs=1e-9
        )

    def test_indefinite_matrix_is_not_physical(self):
        assert not gaussian.is_physical(np.diag([1.0, 1.0, 1.0, -1.0]))


class TestPartialTranspose:
    def test_empty_subset_is_identity(self):
        v, _ = random_state(3, 11)
        assert np.array_equal(gaussian.partial_transpose(v, []), v)

    def test_tmsv_witness_values(self):
        for r in (0.2, 0.5, 1.0):
            v = oracles.tmsv_covariance(r)
            nu = np.min(gaussian.symplectic_eigenvalues(gaussian.partial_transpose(v, [1])))
            assert nu == pytest.approx(math.exp(-2 * r), abs=1e-9)

    def test_out_of_range_mode_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            gaussian.partial_transpose(np.eye(4), [2])


class TestPtWitness:
    def test_vacuum_witness_is_one(self):
        v = gaussian.vacuum(6)
        for side in ({0}, {0, 3}, {1, 2, 4}):
            b = Bipartition.of(side, 6)
            assert gaussian.pt_witness(v, b) == pytest.approx(1.0, abs=1e-12)

    def test_tmsv_one_by_one(self):
        v = oracles.tmsv_covariance(0.5)
        b = Bipartition.of({1}, 2)
        assert gaussian.pt_witness(v, b) == pytest.approx(math.exp(-1.0), abs=1e-9)

    def test_split_between_independent_pairs_is_separable(self):
        v = np.zeros((8, 8))
        v[:4, :4] = oracles.tmsv_covariance(0.7)
        v[4:, 4:] = oracles.tmsv_covariance(1.1)
        b = Bipartition.of({0, 1}, 4)
        assert gaussian.pt_witness(v, b) == pytest.approx(1.0, abs=1e-9)

    def test_mode_count_mismatch_rejected(self):
        with pytest.raises(ValueError, match="covers"):
            gaussian.pt_witness(gaussian.vacuum(3), Bipartition.of({1}, 2))

    def test_unphysical_state_rejected(self):
        with pytest.raises(ValueError, match="physical"):
            gaussian.pt_witness(0.5 * np.eye(4), Bipartition.of({1}, 2))


class TestLogNegativityAndPurity:
    def test_log_negativity_values(self):
        assert gaussian.log_negativity(1.0) == 0.0
        assert gaussian.log_negativity(math.exp(-1.0)) == pytest.approx(1.0, abs=1e-12)
        assert gaussian.log_negativity(2.0) == 0.0
        with pytest.raises(ValueError):
            gaussian.log_negativity(0.0)

    def test_purity_values(self):
        assert gaussian.purity(np.eye(6)) == pytest.approx(1.0, abs=1e-12)
        assert gaussian.purity(2.0 * np.eye(2)) == pytest.approx(0.5, abs=1e-12)
        assert gaussian.purity(oracles.tmsv_covariance(0.9)) == pytest.approx(1.0, abs=1e-9)

    def test_purity_rejects_singular(self):
        with pytest.raises(ValueError):
            gaussian.purity(np.diag([1.0, 0.0]))


class TestGeneratedSymplectics:
    def test_two_mode_squeeze_at_zero_is_identity(self):
        assert np.array_equal(gaussian.two_mode_squeeze_symplectic(0.0, (0, 1), 2), np.eye(4))

    def test_two_mode_squeeze_preserves_symplectic_form(self):
        s = gaussian.two_mode_squeeze_symplectic(0.7, (0, 1), 2)
        w = gaussian.symplectic_form(2)
        assert np.max(np.abs(s @ w @ s.T - w)) < 1e-12

    def test_epr_variances_on_vacuum(self):
        r = 0.5
        s = gaussian.two_mode_squeeze_symplectic(r, (0, 1), 2)
        v = gaussian.apply_symplectic(gaussian.vacuum(2), s)
        assert np.max(np.abs(v - oracles.tmsv_covariance(r))) < 1e-12
        var_p_minus = (v[0, 0] + v[2, 2] - 2 * v[0, 2]) / 2.0
        var_q_plus = (v[1, 1] + v[3, 3] + 2 * v[1, 3]) / 2.0
        assert var_p_minus == pytest.approx(math.exp(-1.0), abs=1e-12)
        assert var_q_plus == pytest.approx(math.exp(-1.0), abs=1e-12)

    def test_beam_splitter_limits(self):
        assert np.array_equal(gaussian.beam_splitter_symplectic(0.0, (0, 1), 2), np.eye(4))
        swap = gaussian.beam_splitter_symplectic(math.pi / 2, (0, 1), 2)
        v = np.diag([2.0, 2.0, 5.0, 5.0])
        out = gaussian.apply_symplectic(v, swap)
        assert np.allclose(out, np.diag([5.0, 5.0, 2.0, 2.0]), atol=1e-12)

    def test_beam_splitter_conserves_total_variance(self):
        s = gaussian.beam_splitter_symplectic(0.3, (0, 1), 2)
        v = np.diag([2.0, 2.0, 5.0, 5.0])
        out = gaussian.apply_symplectic(v, s)
        assert np.trace(out) == pytest.approx(np.trace(v), abs=1e-12)

    def test_phase_rotation_is_symplectic(self):
        s = gaussian.phase_rotation_symplectic(0.4, 1, 3)
        w = gaussian.symplectic_form(3)
        assert np.max(np.abs(s @ w @ s.T - w)) < 1e-12

    def test_same_mode_pair_rejected(self):
        with pytest.raises(ValueError):
            gaussian.two_mode_squeeze_symplectic(0.1, (1, 1), 2)
        with pytest.raises(ValueError):
            gaussian.beam_splitter_symplectic(0.1, (1, 1), 2)


class TestAttenuationChannel:
    def test_full_transmission_is_identity(self):
        v, _ = random_state(2, 5)
        assert np.allclose(gaussian.attenuation_channel(v, 0, 1.0), v, atol=1e-12)

    def test_zero_transmission_replaces_with_environment(self):
        v = oracles.tmsv_covariance(1.0)
        out = gaussian.attenuation_channel(v, 0, 0.0)
        assert np.allclose(out[:2, :2], np.eye(2), atol=1e-12)
        assert np.allclose(out[:2, 2:], 0.0, atol=1e-12)
        thermal = gaussian.attenuation_channel(v, 0, 0.0, n_th=1.5)
        assert np.allclose(thermal[:2, :2], 4.0 * np.eye(2), atol=1e-12)

    def test_matches_beam_splitter_dilation(self):
        v = oracles.tmsv_covariance(1.0)
        got = gaussian.attenuation_channel(v, 1, 0.87)
        ref = oracles.attenuate_by_dilation(v, 1, 0.87)
        assert np.max(np.abs(got - ref)) < 1e-9

    def test_eta_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            gaussian.attenuation_channel(np.eye(2), 0, 1.2)


class TestMarginal:
    def test_full_subset_returns_state(self):
        v, _ = random_state(3, 9)
        assert np.array_equal(gaussian.marginal(v, [0, 1, 2]), v)

    def test_single_mode_of_vacuum(self):
        assert np.array_equal(gaussian.marginal(gaussian.vacuum(6), [4]), np.eye(2))

    def test_tmsv_arm_is_thermal(self):
        r = 0.6
        arm = gaussian.marginal(oracles.tmsv_covariance(r), [0])
        assert np.allclose(arm, math.cosh(2 * r) * np.eye(2), atol=1e-12)

    def test_empty_subset_rejected(self):
        with pytest.raises(ValueError):
            gaussian.marginal(np.eye(4), [])


@st.composite
def physical_states(draw, max_modes=6):
    n = draw(st.integers(min_value=1, max_value=max_modes))
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    v, nus = random_state(n, seed)
    return v, nus


@given(physical_states())
@settings(max_examples=40, deadline=None)
def test_property_pairing_of_ordinary_eigenvalues(state):
    v, _ = state
    n = v.shape[0] // 2
    wv = gaussian.symplectic_form(n) @ v
    ev = np.sort(np.linalg.eigvals(-wv @ wv).real)
    first, second = ev[0::2], ev[1::2]
    rel = np.abs(first - second) / np.maximum(np.abs(first), 1.0)
    assert np.max(rel) < 1e-8


@given(physical_states())
@settings(max_examples=40, deadline=None)
def test_property_symplectic_invariance(state):
    v, nus = state
    n = v.shape[0] // 2
    s = oracles.random_symplectic(n, np.random.default_rng(1234), scale=0.3)
    transformed = gaussian.apply_symplectic(v, s)
    got = gaussian.symplectic_eigenvalues(transformed)
    assert np.max(np.abs(got - np.repeat(nus, 1))) < 1e-9 * max(1.0, np.max(nus))


@given(physical_states(), st.integers(min_value=0, max_value=2**20))
@settings(max_examples=40, deadline=None)
def test_property_pt_involution_is_exact(state, subset_seed):
    v, _ = state
    n = v.shape[0] // 2
    rng = np.random.default_rng(subset_seed)
    modes = [m for m in range(n) if rng.integers(2)]
    assert np.array_equal(gaussian.partial_transpose(gaussian.partial_transpose(v, modes), modes), v)


@given(physical_states(max_modes=5), st.integers(min_value=0, max_value=2**20))
@settings(max_examples=40, deadline=None)
def test_property_witness_side_symmetry(state, subset_seed):
    v, _ = state
    n = v.shape[0] // 2
    if n < 2:
        return
    rng = np.random.default_rng(subset_seed)
    side = {int(rng.integers(n))}
    other = set(range(n)) - side
    nu_a = np.min(gaussian.symplectic_eigenvalues(gaussian.partial_transpose(v, side)))
    nu_b = np.min(gaussian.symplectic_eigenvalues(gaussian.partial_transpose(v, other)))
    assert abs(nu_a - nu_b) < 1e-10 * max(1.0, nu_a)


@given(physical_states(), st.floats(min_value=0.0, max_value=1.0), st.integers(0, 5))
@settings(max_examples=40, deadline=None)
def test_property_channels_preserve_physicality(state, eta, mode):
    v, _ = state
    n = v.shape[0] // 2
    out = gaussian.attenuation_channel(v, mode % n, eta)
    s = oracles.random_symplectic(n, np.random.default_rng(77), scale=0.3)
    out = gaussian.apply_symplectic(out, s)
    assert float(np.min(gaussian.symplectic_eigenvalues(out))) >= 1.0 - 1e-9


@given(physical_states())
@settings(max_examples=40, deadline=None)
def test_property_purity_never_exceeds_one(state):
    v, _ = state
    assert gaussian.purity(v) <= 1.0 + 1e-9
