"""
결어긋남 핵심 계산 테스트

스케일링 법칙, 영역 분류, 무방출 겹침, 수치 예시를 확인합니다.
"""

import math

import numpy as np
import pytest

from app.exceptions import ConfigError, DecoherenceError
from app.schemas.common import Channel, Regime
from app.schemas.decoherence import ExperimentConfig, ModelConstants
from app.services.decoherence_service import (
    DecoherenceService,
    gamma_from_ln,
    overlap_from_no_emission,
    poisson_no_emission,
)
from physconst import em_coupling, gravitational_coupling


def make_config(mass=1e-8, beta=0.5, charge=0.0, **extra):
    return ExperimentConfig(
        mass=mass,
        net_charge=charge,
        separation=1e-6,
        duration=1.0,
        beta=beta,
        wavepacket_spread=1e-6,
        **extra,
    )


# =============================================================================
# 수치 예시
# =============================================================================


def test_planck_mass_half_light_speed(decoherence, m_planck):
    """m = m_P, β = 0.5 → ln Γ_G = −1/16"""
    result = decoherence.grav_decoherence(make_config(mass=m_planck, beta=0.5))
    assert result.ln_gamma == pytest.approx(-0.0625, rel=1e-12)
    assert result.gamma == pytest.approx(0.939413, abs=1e-6)
    assert result.regime is Regime.SHORT_WAVELENGTH
    assert result.expected_quanta_per_path == pytest.approx(0.0625)


def test_electron_at_tenth_light_speed(decoherence, consts):
    """전자 하나, β = 0.1, C = 1 → ln Γ_E ≈ −4.6457e-5"""
    result = decoherence.em_decoherence(make_config(charge=consts.elementary_charge, beta=0.1))
    assert result.ln_gamma == pytest.approx(-4.6457e-5, rel=1e-4)
    assert result.regime is Regime.LONG_WAVELENGTH


def test_zero_mass_and_zero_beta_are_coherent(decoherence):
    assert decoherence.grav_decoherence(make_config(mass=0.0)).gamma == 1.0
    result = decoherence.grav_decoherence(make_config(beta=0.0))
    assert result.gamma == 1.0
    assert math.isinf(result.radiation_wavelength)
    assert result.regime is Regime.LONG_WAVELENGTH


def test_neutral_object_has_no_em_decoherence(decoherence):
    assert decoherence.em_decoherence(make_config(charge=0.0)).gamma == 1.0


def test_small_mass_is_negligible(decoherence, consts):
    """10⁴ amu, β = 10⁻⁹: |ln Γ_G| 는 10⁻⁵⁰ 보다 작음"""
    result = decoherence.grav_decoherence(make_config(mass=1e4 * consts.amu, beta=1e-9))
    assert 0.0 <= -result.ln_gamma < 1e-50
    assert result.gamma == pytest.approx(1.0, abs=1e-15)


def test_near_planck_mass_relativistic(decoherence, consts):
    """1.3e19 amu, β = 0.9: |ln Γ_G| 가 1 의 차수 (CODATA 2018 기준 ≈ 0.645)"""
    result = decoherence.grav_decoherence(make_config(mass=1.3e19 * consts.amu, beta=0.9))
    assert 0.6 < -result.ln_gamma < 0.75
    assert result.gamma == pytest.approx(math.exp(result.ln_gamma))


def test_heavy_object_underflows_to_zero(decoherence):
    """|ln Γ| > 745 는 exp 에서 0 으로 떨어지지만 ln Γ 는 그대로 보고"""
    result = decoherence.grav_decoherence(make_config(mass=1.0, beta=0.9))
    assert result.ln_gamma < -745
    assert math.isfinite(result.ln_gamma)
    assert result.gamma == 0.0


# =============================================================================
# 스케일링 성질 (무작위 10³ 점)
# =============================================================================


def test_gravitational_scaling_laws(decoherence, rng, m_planck):
    """질량 2배 → 지수 4배, β 2배 → 지수 16배"""
    for _ in range(1000):
        mass = m_planck * 10 ** rng.uniform(-6, 0)
        beta = 10 ** rng.uniform(-4, math.log10(0.45))
        base = decoherence.grav_decoherence(make_config(mass=mass, beta=beta)).ln_gamma
        heavier = decoherence.grav_decoherence(make_config(mass=2 * mass, beta=beta)).ln_gamma
        faster = decoherence.grav_decoherence(make_config(mass=mass, beta=2 * beta)).ln_gamma
        assert heavier == pytest.approx(4 * base, rel=1e-12)
        assert faster == pytest.approx(16 * base, rel=1e-12)


def test_em_scaling_laws(decoherence, rng, consts):
    """전하 2배 → 4배, β 2배 → 4배, 질량 무관"""
    e = consts.elementary_charge
    for _ in range(1000):
        charge = e * 10 ** rng.uniform(0, 3)
        beta = 10 ** rng.uniform(-4, math.log10(0.2))
        mass = 10 ** rng.uniform(-20, -5)
        base = decoherence.em_decoherence(make_config(mass=mass, beta=beta, charge=charge)).ln_gamma
        doubled_q = decoherence.em_decoherence(make_config(mass=mass, beta=beta, charge=2 * charge)).ln_gamma
        doubled_b = decoherence.em_decoherence(make_config(mass=mass, beta=2 * beta, charge=charge)).ln_gamma
        other_m = decoherence.em_decoherence(make_config(mass=3 * mass, beta=beta, charge=charge)).ln_gamma
        assert doubled_q == pytest.approx(4 * base, rel=1e-12)
        assert doubled_b == pytest.approx(4 * base, rel=1e-12)
        assert other_m == base


def test_gamma_is_bounded_and_monotone(decoherence, rng):
    for _ in range(1000):
        mass = 10 ** rng.uniform(-12, -6)
        beta = rng.uniform(0.0, 0.99)
        config = make_config(mass=mass, beta=beta)
        result = decoherence.grav_decoherence(config)
        assert 0.0 <= result.gamma <= 1.0
        assert result.ln_gamma <= 0.0
        assert decoherence.grav_decoherence(config.with_point(mass, min(beta * 1.01, 0.99))).ln_gamma <= result.ln_gamma


def test_couplings_match_formula(decoherence, consts):
    config = make_config(mass=3e-9, beta=0.3, charge=5 * consts.elementary_charge)
    em = decoherence.em_decoherence(config)
    grav = decoherence.grav_decoherence(config)
    alpha_e = em_coupling(config.net_charge, consts)
    alpha_g = gravitational_coupling(config.mass, consts)
    assert em.ln_gamma == pytest.approx(-(2 * alpha_e / math.pi) * 0.09)
    assert grav.ln_gamma == pytest.approx(-alpha_g * 0.3**4)


def test_model_constants_scale_exponent(decoherence, m_planck):
    base = decoherence.grav_decoherence(make_config(mass=m_planck, beta=0.5)).ln_gamma
    scaled = decoherence.grav_decoherence(
        make_config(mass=m_planck, beta=0.5, model_constants=ModelConstants(c_double_prime=3.0))
    ).ln_gamma
    assert scaled == pytest.approx(3 * base)


def test_channel_ratio_law(decoherence, rng, consts):
    """ln Γ_G / ln Γ_E = (α_G/α_E)(C″/C)(π/2)β²"""
    constants = ModelConstants(c=2.0, c_double_prime=3.0)
    for _ in range(200):
        mass = 10 ** rng.uniform(-12, -6)
        charge = consts.elementary_charge * 10 ** rng.uniform(0, 4)
        beta = rng.uniform(0.01, 0.45)
        config = make_config(mass=mass, beta=beta, charge=charge, model_constants=constants)
        ratio = decoherence.grav_decoherence(config).ln_gamma / decoherence.em_decoherence(config).ln_gamma
        expected = (
            gravitational_coupling(mass, consts)
            / em_coupling(charge, consts)
            * (3.0 / 2.0)
            * (math.pi / 2)
            * beta**2
        )
        assert ratio == pytest.approx(expected, rel=1e-10)


def test_log_infrared_model(decoherence, m_planck):
    """C(τ) = max(1, ln(τ/τ_IR)): τ = 1 s, τ_IR = e⁻² s → C = 2"""
    constants = ModelConstants(log_ir_model=True, tau_ir=math.exp(-2))
    assert constants.effective(1.0) == pytest.approx((2.0, 2.0, 2.0))
    assert ModelConstants(log_ir_model=True, tau_ir=10.0).effective(1.0) == (1.0, 1.0, 1.0)
    result = decoherence.grav_decoherence(make_config(mass=m_planck, beta=0.5, model_constants=constants))
    assert result.ln_gamma == pytest.approx(-0.125)


def test_log_infrared_model_requires_cutoff():
    with pytest.raises(ValueError):
        ModelConstants(log_ir_model=True)


def test_relativistic_em_form(decoherence, consts):
    """단파장 영역에서만 −α_E C′ β² 로 바뀜"""
    charge = consts.elementary_charge
    alpha = em_coupling(charge, consts)
    fast = decoherence.em_decoherence(make_config(charge=charge, beta=0.8, em_relativistic_form=True))
    slow = decoherence.em_decoherence(make_config(charge=charge, beta=0.1, em_relativistic_form=True))
    assert fast.ln_gamma == pytest.approx(-alpha * 0.64)
    assert slow.ln_gamma == pytest.approx(-(2 * alpha / math.pi) * 0.01)


# =============================================================================
# 영역 분류 / β
# =============================================================================


@pytest.mark.parametrize(
    "beta,regime",
    [(0.1, Regime.LONG_WAVELENGTH), (0.4999, Regime.LONG_WAVELENGTH), (0.5, Regime.SHORT_WAVELENGTH), (0.9, Regime.SHORT_WAVELENGTH)],
)
def test_regime_classification(decoherence, beta, regime):
    found, wavelength = decoherence.classify_regime(make_config(beta=beta))
    assert found is regime
    assert wavelength == pytest.approx(1e-6 / beta)


def test_relativistic_threshold_is_configurable(decoherence):
    regime, _ = decoherence.classify_regime(make_config(beta=0.3, relativistic_threshold=0.25))
    assert regime is Regime.SHORT_WAVELENGTH


def test_derived_beta(decoherence, consts):
    config = ExperimentConfig(mass=1e-8, separation=1e-6, duration=1e-3, wavepacket_spread=1e-7)
    result = decoherence.grav_decoherence(config)
    assert result.beta == pytest.approx(1e-6 / (consts.c * 1e-3))


def test_derived_beta_at_or_above_light_speed_is_rejected(decoherence):
    config = ExperimentConfig(mass=1e-8, separation=1.0, duration=1e-9, wavepacket_spread=1e-7)
    with pytest.raises(ConfigError):
        decoherence.grav_decoherence(config)


def test_explicit_beta_must_be_below_one():
    with pytest.raises(ValueError):
        make_config(beta=1.0)


def test_beta_disagreement_is_reported(decoherence, consts):
    config = ExperimentConfig(mass=1e-8, separation=1e-6, duration=1e-3, beta=0.5, wavepacket_spread=1e-7)
    ratio = decoherence.beta_disagreement(config)
    assert ratio == pytest.approx(0.5 / (1e-6 / (consts.c * 1e-3)))
    # 지정값이 우선
    assert decoherence.grav_decoherence(config).beta == 0.5
    assert decoherence.gamma_report(config).beta_disagreement == pytest.approx(ratio)


def test_beta_disagreement_absent_without_override(decoherence, experiment):
    assert decoherence.beta_disagreement(experiment) is None


def test_threshold_mass_inverts_exponent(decoherence, m_planck):
    for target, beta in [(0.1, 0.5), (1.0, 0.9), (1e-3, 0.01)]:
        mass = decoherence.threshold_mass(target, beta, 1.0)
        result = decoherence.grav_decoherence(make_config(mass=mass, beta=beta))
        assert -result.ln_gamma == pytest.approx(target, rel=1e-12)


@pytest.mark.parametrize("target", [1e-3, 0.1, 1.0])
def test_threshold_mass_quadruples_at_half_speed(decoherence, target):
    """β 를 절반으로 줄이면 m* 는 정확히 4배"""
    for beta in (0.9, 0.5, 0.1, 1e-3):
        ratio = decoherence.threshold_mass(target, beta / 2, 1.0) / decoherence.threshold_mass(target, beta, 1.0)
        assert ratio == pytest.approx(4.0, rel=1e-12)


def test_gamma_report(decoherence, m_planck):
    report = decoherence.gamma_report(make_config(mass=4 * m_planck, beta=0.5))
    assert report.em.channel is Channel.EM
    assert report.gravitational.channel is Channel.GRAVITATIONAL
    assert report.alpha_gravitational == pytest.approx(16.0)
    # m β² = m_P
    assert report.many_quanta is True
    assert math.isinf(report.thermal_wavelength)
    assert report.acceleration == pytest.approx(1e-6)


def test_planck_mass_report(decoherence):
    report = decoherence.planck_mass_report()
    assert report.constants == "codata2018"
    assert report.ug == pytest.approx(21.764, rel=1e-4)


def test_planck_mass_report_in_natural_units():
    """자연 단위에서는 kg 값만 의미가 있음 (μg, amu, GeV 환산 생략)"""
    from physconst import get_constants

    report = DecoherenceService(get_constants("natural")).planck_mass_report()
    assert report.unit_system == "natural"
    assert report.kg == pytest.approx(1.0)
    assert report.ug is None and report.amu is None and report.gev is None


# =============================================================================
# 무방출 겹침
# =============================================================================


def test_overlap_equals_gamma_with_poisson_no_emission(decoherence, rng, m_planck):
    """대칭 푸아송 방출에서 √(p₁p₂) = exp(−N̄) = |Γ|"""
    for _ in range(1000):
        mass = m_planck * 10 ** rng.uniform(-3, 1)
        beta = rng.uniform(0.5, 0.95)
        result = decoherence.grav_decoherence(make_config(mass=mass, beta=beta))
        p = poisson_no_emission(result.expected_quanta_per_path)
        assert overlap_from_no_emission(p, p) == pytest.approx(result.gamma, rel=1e-12, abs=1e-300)


def test_overlap_examples():
    assert overlap_from_no_emission(1.0, 1.0) == 1.0
    assert overlap_from_no_emission(0.0, 0.7) == 0.0
    assert overlap_from_no_emission(0.25, 1.0) == pytest.approx(0.5)


@pytest.mark.parametrize("p1,p2", [(-0.1, 0.5), (0.5, 1.5)])
def test_overlap_rejects_invalid_probability(p1, p2):
    with pytest.raises(DecoherenceError):
        overlap_from_no_emission(p1, p2)


def test_poisson_no_emission():
    assert poisson_no_emission(0.0) == 1.0
    assert poisson_no_emission(1.0) == pytest.approx(math.exp(-1))
    assert poisson_no_emission(1e4) == 0.0
    with pytest.raises(DecoherenceError):
        poisson_no_emission(-1.0)


def test_gamma_from_ln_clamps_underflow():
    assert gamma_from_ln(-746.0) == 0.0
    assert gamma_from_ln(-700.0) == pytest.approx(math.exp(-700.0))
    assert gamma_from_ln(0.0) == 1.0


def test_natural_units_give_same_gamma():
    from physconst import get_constants

    si = DecoherenceService(get_constants("codata2018"))
    natural = DecoherenceService(get_constants("natural"))
    mass_amu = 1e18
    si_config = make_config(mass=mass_amu * si.consts.amu, beta=0.7)
    natural_config = ExperimentConfig(
        mass=mass_amu * natural.consts.amu,
        separation=1.0,
        duration=10.0,
        beta=0.7,
        wavepacket_spread=1.0,
    )
    assert natural.grav_decoherence(natural_config).ln_gamma == pytest.approx(
        si.grav_decoherence(si_config).ln_gamma, rel=1e-9
    )
