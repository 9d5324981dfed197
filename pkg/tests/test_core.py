"""Parameter bundles, energy points, and the error taxonomy."""

import math

import pytest

from actionvar.core import (
    EPSILON_HARD_LIMIT,
    EpsilonOutOfRange,
    NonPositiveEnergy,
    NonPositiveParameter,
    SchemeTag,
    WeakRegimeWarning,
    energy_point,
    make_params,
    natural_params,
    require_weak_regime,
)


class TestMakeParams:
    def test_natural_units(self):
        p = make_params(1.0, 1.0, 10.0, 1.0)
        assert p.omega0 == 1.0
        assert p.rest_energy == 100.0

    def test_omega0_from_stiffness(self):
        p = make_params(1.0, 4.0, 1.0, 1.0)
        assert p.omega0 == 2.0

    def test_hbar_zero_is_legal(self):
        p = make_params(1.0, 1.0, 1.0, 0.0)
        assert p.hbar == 0.0
        assert p.level_ratio == 0.0

    @pytest.mark.parametrize("bad", [(0, 1, 1, 1), (1, -2, 1, 1), (1, 1, 0, 1), (1, 1, 1, -1)])
    def test_rejects_nonpositive(self, bad):
        with pytest.raises(NonPositiveParameter):
            make_params(*bad)

    def test_rejects_nonfinite(self):
        with pytest.raises(NonPositiveParameter):
            make_params(math.inf, 1, 1, 1)

    def test_level_ratio(self):
        p = make_params(1.0, 1.0, 10.0, 1.0)
        assert p.level_ratio == pytest.approx(0.01)

    def test_params_are_frozen(self):
        p = natural_params()
        with pytest.raises(AttributeError):
            p.m = 2.0


class TestEnergyPoint:
    def test_direct_ratio(self):
        p = make_params(1.0, 1.0, 10.0, 1.0)
        assert energy_point(p, 1.0).epsilon == pytest.approx(0.01)
        assert energy_point(p, 5.0).epsilon == pytest.approx(0.05)

    def test_epsilon_scales_linearly(self):
        p = natural_params(c=10.0)
        base = energy_point(p, 2.0).epsilon
        for s in (0.5, 3.0, 7.25):
            assert energy_point(p, 2.0 * s).epsilon == pytest.approx(s * base)

    def test_warn_flag_set_above_soft_limit(self):
        p = make_params(1.0, 1.0, 1.0, 1.0)
        assert energy_point(p, 0.6).weak_warn
        assert not energy_point(p, 0.05).weak_warn

    def test_rejects_nonpositive_energy(self):
        p = natural_params()
        with pytest.raises(NonPositiveEnergy):
            energy_point(p, 0.0)
        with pytest.raises(NonPositiveEnergy):
            energy_point(p, -1.0)


class TestWeakRegimeGate:
    def test_hard_limit_raises(self):
        p = make_params(1.0, 1.0, 1.0, 1.0)
        ep = energy_point(p, EPSILON_HARD_LIMIT + 0.01)
        with pytest.raises(EpsilonOutOfRange):
            require_weak_regime(ep, "test")

    def test_soft_limit_warns(self):
        p = make_params(1.0, 1.0, 1.0, 1.0)
        ep = energy_point(p, 0.2)
        with pytest.warns(WeakRegimeWarning):
            require_weak_regime(ep, "test")

    def test_comfortable_regime_silent(self, recwarn):
        p = natural_params(c=10.0)
        require_weak_regime(energy_point(p, 1.0), "test")
        assert not recwarn.list


class TestSchemeTag:
    def test_twelve_schemes(self):
        assert len(SchemeTag) == 12

    def test_values_are_stable_strings(self):
        assert SchemeTag.CLASSICAL_WR_PDX.value == "classical-wr-pdx"
        assert SchemeTag.RAYLEIGH_SCHRODINGER.value == "rayleigh-schrodinger"
        assert SchemeTag.JWKB_WR.value == "jwkb-wr"
