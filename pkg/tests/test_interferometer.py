"""Mach-Zehnder propagation, detection probabilities and measurement observables."""

import numpy as np
import pytest

from lglab import (
    MZConfig,
    apply,
    born_probability,
    bs_unitary,
    detection_probabilities,
    input_state,
    mz_basis,
    output_observable,
    path_observable,
    phase_unitary,
    projector_onto,
    propagate,
)

SQ2 = np.sqrt(2.0)
SQ3 = np.sqrt(3.0)


class TestConfig:
    def test_alpha_derived_from_beta(self):
        cfg = MZConfig(beta=0.5)
        assert cfg.alpha == pytest.approx(SQ3 / 2, abs=1e-15)

    def test_rejects_off_circle(self):
        with pytest.raises(ValueError, match="alpha\\^2"):
            MZConfig(beta=0.5, alpha=0.5)

    def test_rejects_beta_out_of_range(self):
        with pytest.raises(ValueError):
            MZConfig(beta=1.5)

    def test_rejects_bad_mode(self):
        with pytest.raises(ValueError, match="mode"):
            MZConfig(beta=0.0, mode="magic")


class TestBasis:
    def test_output_basis_construction(self):
        b = mz_basis()
        np.testing.assert_allclose(b.psi3.amps, (b.psi1.amps + b.psi2.amps) / SQ2, atol=0)
        np.testing.assert_allclose(b.psi4.amps, (b.psi1.amps - b.psi2.amps) / SQ2, atol=0)

    def test_orthonormal_pairs(self):
        b = mz_basis()
        for x, y in ((b.psi1, b.psi2), (b.psi3, b.psi4)):
            assert abs(np.vdot(x.amps, y.amps)) < 1e-15
            assert abs(np.vdot(x.amps, x.amps) - 1) < 1e-15


class TestInputState:
    def test_pure_path(self):
        np.testing.assert_allclose(input_state(MZConfig(beta=0.0)).amps, [1.0, 0.0], atol=0)

    def test_balanced_gives_psi3(self):
        s = input_state(MZConfig(beta=1 / SQ2))
        np.testing.assert_allclose(s.amps, mz_basis().psi3.amps, atol=1e-15)

    def test_generic_amplitudes(self):
        s = input_state(MZConfig(beta=0.5))
        np.testing.assert_allclose(s.amps, [SQ3 / 2, 0.5], atol=1e-15)


class TestElementConventions:
    def test_bs_on_psi1(self):
        out = apply(bs_unitary(), mz_basis().psi1)
        np.testing.assert_allclose(out.amps, [1 / SQ2, 1j / SQ2], atol=1e-15)

    def test_phase_zero_is_identity(self):
        np.testing.assert_allclose(phase_unitary(0.0).entries, np.eye(2), atol=0)

    def test_phase_pi_flips_psi2(self):
        out = apply(phase_unitary(np.pi), mz_basis().psi2)
        np.testing.assert_allclose(out.amps, [0.0, -1.0], atol=1e-15)


class TestPropagate:
    def test_destructive_arm(self):
        out = propagate(MZConfig(beta=1 / SQ2))
        b = mz_basis()
        assert abs(np.vdot(b.psi4.amps, out.amps)) < 1e-12
        assert abs(np.vdot(b.psi3.amps, out.amps)) == pytest.approx(1.0, abs=1e-12)

    def test_single_path_splits_evenly(self):
        out = propagate(MZConfig(beta=0.0))
        b = mz_basis()
        assert abs(np.vdot(b.psi3.amps, out.amps)) ** 2 == pytest.approx(0.5, abs=1e-12)
        assert abs(np.vdot(b.psi4.amps, out.amps)) ** 2 == pytest.approx(0.5, abs=1e-12)

    def test_generic_dark_port_probability(self):
        out = propagate(MZConfig(beta=0.5))
        p4 = abs(np.vdot(mz_basis().psi4.amps, out.amps)) ** 2
        assert p4 == pytest.approx((2 - SQ3) / 4, abs=1e-12)

    @pytest.mark.parametrize("beta", np.linspace(-1.0, 1.0, 41))
    def test_modes_agree_on_port_probabilities(self, beta):
        b = mz_basis()
        p3_proj, p4_proj = projector_onto(b.psi3), projector_onto(b.psi4)
        probs = {}
        for mode in ("closed_form", "unitary"):
            out = propagate(MZConfig(beta=float(beta), mode=mode))
            probs[mode] = (born_probability(p3_proj, out), born_probability(p4_proj, out))
        assert probs["closed_form"][0] == pytest.approx(probs["unitary"][0], abs=1e-12)
        assert probs["closed_form"][1] == pytest.approx(probs["unitary"][1], abs=1e-12)


class TestDetectionProbabilities:
    def test_balanced(self):
        assert detection_probabilities(MZConfig(beta=1 / SQ2)) == pytest.approx((1.0, 0.0), abs=1e-12)

    def test_single_path(self):
        assert detection_probabilities(MZConfig(beta=0.0)) == pytest.approx((0.5, 0.5), abs=1e-12)

    def test_generic(self):
        p3, p4 = detection_probabilities(MZConfig(beta=0.5))
        assert p3 == pytest.approx((2 + SQ3) / 4, abs=1e-12)
        assert p4 == pytest.approx((2 - SQ3) / 4, abs=1e-12)

    @pytest.mark.parametrize("beta", np.linspace(-1.0, 1.0, 41))
    def test_agrees_with_born_rule_both_modes(self, beta):
        b = mz_basis()
        for mode in ("closed_form", "unitary"):
            cfg = MZConfig(beta=float(beta), mode=mode)
            p3, p4 = detection_probabilities(cfg)
            out = propagate(cfg)
            assert p3 == pytest.approx(born_probability(projector_onto(b.psi3), out), abs=1e-12)
            assert p4 == pytest.approx(born_probability(projector_onto(b.psi4), out), abs=1e-12)
            assert p3 + p4 == pytest.approx(1.0, abs=1e-12)

    def test_sign_flip_symmetry(self):
        for beta in np.linspace(-0.99, 0.99, 23):
            alpha = float(np.sqrt(1 - beta**2))
            p3, _ = detection_probabilities(MZConfig(beta=float(beta), alpha=alpha))
            _, p4 = detection_probabilities(MZConfig(beta=float(-beta), alpha=alpha))
            assert p3 == pytest.approx(p4, abs=1e-12)

    def test_full_visibility_fringe(self):
        # oracle: unitary-mode propagation over a 100-point phase grid
        b = mz_basis()
        p4_proj = projector_onto(b.psi4)
        for phi in np.linspace(0.0, 2 * np.pi, 100):
            cfg = MZConfig(beta=1 / SQ2, phi=float(phi), mode="unitary")
            _, p4 = detection_probabilities(cfg)
            assert p4 == pytest.approx((1 - np.cos(phi)) / 2, abs=1e-12)
            assert p4 == pytest.approx(born_probability(p4_proj, propagate(cfg)), abs=1e-12)


class TestObservables:
    def test_path_eigenstates(self):
        b = mz_basis()
        m2 = path_observable().operator().entries
        np.testing.assert_allclose(m2 @ b.psi1.amps, b.psi1.amps, atol=1e-15)
        np.testing.assert_allclose(m2 @ b.psi2.amps, -b.psi2.amps, atol=1e-15)

    def test_output_eigenstates(self):
        b = mz_basis()
        m3 = output_observable().operator().entries
        np.testing.assert_allclose(m3 @ b.psi3.amps, -b.psi3.amps, atol=1e-15)
        np.testing.assert_allclose(m3 @ b.psi4.amps, b.psi4.amps, atol=1e-15)

    def test_squares_to_identity(self):
        for obs in (path_observable(), output_observable()):
            m = obs.operator().entries
            np.testing.assert_allclose(m @ m, np.eye(2), atol=1e-15)
