"""
결어긋남 계산 서비스

전자기 쌍극자 / 중력 사중극자 제동복사에 의한 결어긋남 지수,
무방출 겹침 법칙, 두 경로 축약 밀도행렬을 계산하는 서비스 레이어
"""

import math
from typing import Optional, Tuple

import numpy as np
from loguru import logger

from app.exceptions import ConfigError, DecoherenceError, ErrorCodes
from app.schemas.common import Channel, Regime
from app.schemas.decoherence import (
    DecoherenceResult,
    ExperimentConfig,
    GammaReport,
    PlanckMassReport,
    TwoPathDensityMatrix,
)
from physconst import (
    ConstantSet,
    Dimension,
    PhysicalConstants,
    Quantity,
    em_coupling,
    get_constants,
    gravitational_coupling,
    planck_mass,
    thermal_wavelength,
)

# exp(x) 가 float64 에서 0 으로 떨어지는 경계
LN_GAMMA_UNDERFLOW = -745.0

# 지정 β 와 L/(cτ) 가 이 배율 이상 다르면 경고
BETA_CONSISTENCY_FACTOR = 3.0


def gamma_from_ln(ln_gamma: float) -> float:
    """로그 공간 지수를 Γ 로 변환 (언더플로 구간은 0)"""
    if ln_gamma < LN_GAMMA_UNDERFLOW:
        return 0.0
    return math.exp(ln_gamma)


def overlap_from_no_emission(p1: float, p2: float) -> float:
    """
    무방출 확률의 기하평균 √(p₁p₂)

    단파장 영역에서 |Γ| 와 같습니다 (위상은 0 으로 고정).

    Raises:
        DecoherenceError: 확률이 [0, 1] 밖인 경우
    """
    for p in (p1, p2):
        if not 0.0 <= p <= 1.0:
            raise DecoherenceError(
                f"확률은 [0, 1] 안에 있어야 합니다: {p}",
                ErrorCodes.PROBABILITY_OUT_OF_RANGE,
            )
    return math.sqrt(p1 * p2)


def poisson_no_emission(n_bar: float) -> float:
    """푸아송 방출에서 한 양자도 방출하지 않을 확률 exp(−N̄)"""
    if n_bar < 0:
        raise DecoherenceError(
            f"기대 양자 수는 음수일 수 없습니다: {n_bar}",
            ErrorCodes.NEGATIVE_EXPECTED_QUANTA,
        )
    return gamma_from_ln(-n_bar)


def density_matrix(gamma: complex) -> TwoPathDensityMatrix:
    """
    축약 밀도행렬 ½[[1, Γ], [Γ*, 1]]

    Raises:
        DecoherenceError: |Γ| > 1
    """
    gamma = complex(gamma)
    # 반올림으로 1 을 아주 약간 넘는 값은 허용
    if abs(gamma) > 1.0 + 1e-12:
        raise DecoherenceError(
            f"|Γ| ≤ 1 이어야 합니다: |Γ| = {abs(gamma)}",
            ErrorCodes.GAMMA_OUT_OF_DISK,
        )
    entries = 0.5 * np.array([[1.0, gamma], [gamma.conjugate(), 1.0]], dtype=complex)
    return TwoPathDensityMatrix(entries=entries)


class DecoherenceService:
    """결어긋남 계산 서비스 클래스"""

    def __init__(self, consts: Optional[PhysicalConstants] = None):
        self.consts = consts if consts else get_constants()

    def _beta(self, config: ExperimentConfig) -> float:
        try:
            return config.effective_beta(self.consts)
        except ValueError as e:
            raise ConfigError(str(e), ErrorCodes.BETA_OUT_OF_RANGE)

    def classify_regime(self, config: ExperimentConfig) -> Tuple[Regime, float]:
        """
        복사 파장 λ_rad = L/β 와 영역 분류

        β ≥ β_rel 이면 단파장(단일 양자로 경로 정보가 충분), 아니면 장파장.
        λ_rad ≤ L/β_rel 과 같은 규칙입니다.
        """
        beta = self._beta(config)
        wavelength = config.separation / beta if beta > 0 else math.inf
        if beta >= config.relativistic_threshold:
            return Regime.SHORT_WAVELENGTH, wavelength
        return Regime.LONG_WAVELENGTH, wavelength

    def _result(
        self, channel: Channel, ln_gamma: float, config: ExperimentConfig
    ) -> DecoherenceResult:
        regime, wavelength = self.classify_regime(config)
        return DecoherenceResult(
            channel=channel,
            ln_gamma=ln_gamma,
            gamma=gamma_from_ln(ln_gamma),
            regime=regime,
            radiation_wavelength=wavelength,
            # 대칭 경로 규약: N̄₁ = N̄₂ = N̄ = −ln Γ
            expected_quanta_per_path=max(0.0, -ln_gamma),
            beta=self._beta(config),
        )

    def em_decoherence(self, config: ExperimentConfig) -> DecoherenceResult:
        """ln Γ_E = −(2α_E/π) C β² (옵션: 단파장에서 −α_E C′ β²)"""
        beta = self._beta(config)
        c, c_prime, _ = config.model_constants.effective(config.duration)
        alpha = em_coupling(config.net_charge, self.consts)
        regime, _ = self.classify_regime(config)

        if config.em_relativistic_form and regime is Regime.SHORT_WAVELENGTH:
            ln_gamma = -alpha * c_prime * beta**2
        else:
            ln_gamma = -(2.0 * alpha / math.pi) * c * beta**2
        return self._result(Channel.EM, ln_gamma, config)

    def grav_decoherence(self, config: ExperimentConfig) -> DecoherenceResult:
        """ln Γ_G = −(m/m_P)² C″ β⁴"""
        beta = self._beta(config)
        _, _, c_double_prime = config.model_constants.effective(config.duration)
        alpha_g = gravitational_coupling(config.mass, self.consts)
        ln_gamma = -alpha_g * c_double_prime * beta**4
        return self._result(Channel.GRAVITATIONAL, ln_gamma, config)

    def decoherence(self, config: ExperimentConfig, channel: Channel) -> DecoherenceResult:
        if channel is Channel.EM:
            return self.em_decoherence(config)
        return self.grav_decoherence(config)

    def threshold_mass(self, target_exponent: float, beta: float, c_double_prime: float) -> float:
        """(m/m_P)² C″ β⁴ = E₀ 을 푸는 질량 m* = m_P √(E₀/C″) / β²"""
        return planck_mass(self.consts) * math.sqrt(target_exponent / c_double_prime) / beta**2

    def beta_disagreement(self, config: ExperimentConfig) -> Optional[float]:
        """지정 β 와 L/(cτ) 의 비율 (≥ 1). β 를 생략했으면 None"""
        if config.beta is None:
            return None
        derived = config.derived_beta(self.consts)
        if config.beta == 0.0 or derived == 0.0:
            return math.inf
        return max(config.beta / derived, derived / config.beta)

    def warn_if_beta_inconsistent(self, config: ExperimentConfig) -> Optional[float]:
        ratio = self.beta_disagreement(config)
        if ratio is not None and ratio > BETA_CONSISTENCY_FACTOR:
            logger.warning(
                f"지정 β={config.beta:.4g} 가 L/(cτ)={config.derived_beta(self.consts):.4g} "
                f"와 {ratio:.3g} 배 다릅니다 (지정값 사용)"
            )
        return ratio

    def gamma_report(self, config: ExperimentConfig) -> GammaReport:
        """단일 점 평가: 두 채널 결과와 부가 스케일"""
        ratio = self.warn_if_beta_inconsistent(config)
        beta = self._beta(config)
        return GammaReport(
            em=self.em_decoherence(config),
            gravitational=self.grav_decoherence(config),
            alpha_em=em_coupling(config.net_charge, self.consts),
            alpha_gravitational=gravitational_coupling(config.mass, self.consts),
            acceleration=config.acceleration(),
            thermal_wavelength=thermal_wavelength(config.temperature, self.consts),
            many_quanta=config.mass * beta**2 >= planck_mass(self.consts),
            beta_disagreement=ratio,
        )

    def planck_mass_report(self) -> PlanckMassReport:
        m_p = Quantity(planck_mass(self.consts), Dimension.MASS, "kg", self.consts)
        if self.consts.name == ConstantSet.NATURAL.value:
            return PlanckMassReport(constants=self.consts.name, unit_system="natural", kg=m_p.value)
        return PlanckMassReport(
            constants=self.consts.name,
            kg=m_p.value,
            ug=m_p.to("ug").value,
            amu=m_p.to("amu").value,
            gev=m_p.to("GeV/c2").value,
        )
