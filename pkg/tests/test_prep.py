import math

import numpy as np
import pytest

from gadentropy.channel import GadChannel, ParameterOutOfRangeError, apply
from gadentropy.prep import (
    AngleOutOfRangeError,
    CoherenceOutOfRangeError,
    PrepSetting,
    alpha_for_coherence,
    evolved_closed_form,
    hwp_phi_for_r,
    hwp_theta_for_p,
    prepare,
)
from gadentropy.qstate import (
    MAXIMALLY_MIXED,
    PLUS,
    dephase,
    l1_coherence,
    validate,
)


class TestPrepare:
    def test_alpha_zero_gives_plus(self):
        assert prepare(PrepSetting(0.0)).isclose(PLUS)

    def test_alpha_pi_over_8_gives_mixed(self):
        assert prepare(PrepSetting(math.pi / 8.0)).isclose(MAXIMALLY_MIXED)

    def test_alpha_for_08_coherence(self):
        # 9.22 degrees prepares off-diagonal 0.400
        state = prepare(PrepSetting(math.radians(9.22)))
        assert state.matrix[0, 1].real == pytest.approx(0.400, abs=5e-4)

    def test_dephased_always_maximally_mixed(self):
        for alpha in np.linspace(0.0, math.pi / 4.0, 9):
            assert prepare(PrepSetting(alpha, dephased=True)).isclose(MAXIMALLY_MIXED)

    def test_equal_populations_and_validity(self):
        for alpha in np.linspace(0.0, math.pi / 4.0, 9):
            state = prepare(PrepSetting(alpha))
            validate(state)
            assert state.matrix[0, 0].real == 0.5
            assert state.matrix[1, 1].real == 0.5

    def test_l1_coherence_is_cos_4alpha(self):
        for alpha in np.linspace(0.0, math.pi / 4.0, 9):
            got = l1_coherence(prepare(PrepSetting(alpha)))
            assert got == pytest.approx(abs(math.cos(4.0 * alpha)), abs=1e-12)

    def test_dephase_matches_dephased_preparation(self):
        for alpha in np.linspace(0.0, math.pi / 4.0, 9):
            a = dephase(prepare(PrepSetting(alpha)))
            b = prepare(PrepSetting(alpha, dephased=True))
            assert a.isclose(b)

    def test_angle_out_of_range(self):
        with pytest.raises(AngleOutOfRangeError):
            PrepSetting(-0.1)
        with pytest.raises(AngleOutOfRangeError):
            PrepSetting(math.pi / 2.0)


class TestAlphaForCoherence:
    def test_extremes(self):
        assert alpha_for_coherence(1.0) == 0.0
        assert alpha_for_coherence(0.0) == pytest.approx(math.pi / 8.0, abs=1e-15)

    def test_reference_angles(self):
        assert math.degrees(alpha_for_coherence(0.8)) == pytest.approx(9.22, abs=0.01)
        assert math.degrees(alpha_for_coherence(0.6)) == pytest.approx(13.28, abs=0.01)
        assert math.degrees(alpha_for_coherence(0.4)) == pytest.approx(16.61, abs=0.01)

    def test_round_trip(self):
        for c in np.linspace(0.0, 1.0, 21):
            alpha = alpha_for_coherence(c)
            assert l1_coherence(prepare(PrepSetting(alpha))) == pytest.approx(
                c, abs=1e-12
            )

    def test_out_of_range(self):
        with pytest.raises(CoherenceOutOfRangeError):
            alpha_for_coherence(1.2)
        with pytest.raises(CoherenceOutOfRangeError):
            alpha_for_coherence(-0.1)


class TestEvolvedClosedForm:
    def test_r_zero_returns_prepared(self):
        setting = PrepSetting(0.2)
        out = evolved_closed_form(setting, GadChannel(0.8, 0.0))
        assert out.isclose(prepare(setting))

    def test_r_one_returns_equilibrium(self):
        out = evolved_closed_form(PrepSetting(0.1), GadChannel(0.75, 1.0))
        assert out.isclose(
            evolved_closed_form(PrepSetting(0.1, dephased=True), GadChannel(0.75, 1.0))
        )
        assert out.matrix[0, 0].real == pytest.approx(0.75, abs=1e-15)

    def test_reference_point(self):
        out = evolved_closed_form(PrepSetting(0.0), GadChannel(0.9, 0.5))
        c = math.sqrt(0.5) / 2.0
        assert np.allclose(out.matrix, [[0.7, c], [c, 0.3]], atol=1e-12)

    def test_oracle_agreement_dense_grid(self):
        for alpha in np.linspace(0.0, math.pi / 4.0, 9):
            for dephased in (False, True):
                setting = PrepSetting(alpha, dephased=dephased)
                state = prepare(setting)
                for p in np.linspace(0.5, 1.0, 11):
                    for r in np.linspace(0.0, 1.0, 11):
                        ch = GadChannel(p, r)
                        kraus = apply(ch, state)
                        closed = evolved_closed_form(setting, ch)
                        assert np.max(np.abs(kraus.matrix - closed.matrix)) < 1e-12


class TestWavePlateConversions:
    def test_theta_extremes(self):
        assert hwp_theta_for_p(1.0) == 0.0

    def test_phi_extremes(self):
        assert hwp_phi_for_r(1.0) == pytest.approx(math.pi / 4.0, abs=1e-15)
        assert hwp_phi_for_r(0.0) == 0.0

    def test_theta_for_p09(self):
        assert math.degrees(hwp_theta_for_p(0.9)) == pytest.approx(9.217, abs=1e-3)

    def test_round_trips(self):
        for p in np.linspace(0.5, 1.0, 11):
            theta = hwp_theta_for_p(p)
            assert math.cos(2.0 * theta) ** 2 == pytest.approx(p, abs=1e-12)
        for r in np.linspace(0.0, 1.0, 11):
            phi = hwp_phi_for_r(r)
            assert math.sin(2.0 * phi) ** 2 == pytest.approx(r, abs=1e-12)

    def test_out_of_range(self):
        with pytest.raises(ParameterOutOfRangeError):
            hwp_theta_for_p(0.4)
        with pytest.raises(ParameterOutOfRangeError):
            hwp_phi_for_r(1.2)
