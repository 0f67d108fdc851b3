"""
반고전 처리 유효성 검사 서비스

복사 파장/콤프턴 파장, 속도 정의, 흑체 복사 회피, 전기적 중성 조건을
각각의 여유 비율(margin)과 함께 평가합니다.
"""

import math
from typing import Optional

from app.exceptions import ConfigError, ErrorCodes
from app.schemas.decoherence import ExperimentConfig
from app.schemas.regime import RegimeCheck, RegimeReport
from physconst import (
    PhysicalConstants,
    compton_wavelength,
    de_broglie_wavelength,
    get_constants,
    thermal_wavelength,
)

from .decoherence_service import BETA_CONSISTENCY_FACTOR

DEFAULT_STRICTNESS = 10.0


def _ratio(big: float, small: float) -> float:
    if small == 0.0:
        return math.inf
    if math.isinf(small):
        return 0.0 if not math.isinf(big) else 1.0
    return big / small


class RegimeValidator:
    """유효성 검사기 (순수 함수, 스레드 안전)"""

    def __init__(
        self,
        consts: Optional[PhysicalConstants] = None,
        strictness: float = DEFAULT_STRICTNESS,
    ):
        self.consts = consts if consts else get_constants()
        self.strictness = strictness

    def validate(self, config: ExperimentConfig) -> RegimeReport:
        """
        모든 검사를 수행하고 보고서 반환

        물리적으로 부적절한 설정은 예외가 아니라 실패한 검사로 드러납니다.
        단, β 를 정의할 수 없는 설정(L/(cτ) ≥ 1)은 ConfigError 입니다.
        """
        try:
            beta = config.effective_beta(self.consts)
        except ValueError as e:
            raise ConfigError(str(e), ErrorCodes.BETA_OUT_OF_RANGE)

        checks = [
            self._compton(config, beta),
            self._velocity(config, beta),
            self._blackbody(config),
            self._neutrality(config),
        ]
        if config.beta is not None:
            checks.append(self._beta_consistency(config))

        return RegimeReport(
            checks=checks,
            strictness=self.strictness,
            overall_valid=all(c.satisfied for c in checks if c.required),
        )

    def _compton(self, config: ExperimentConfig, beta: float) -> RegimeCheck:
        # (1) 방출 양자 에너지 ≪ 정지 에너지: λ_rad ≫ λ_C
        reference_mass = config.constituent_mass or self.consts.electron_mass
        lambda_c = compton_wavelength(reference_mass, self.consts)
        lambda_rad = config.separation / beta if beta > 0 else math.inf
        margin = _ratio(lambda_rad, lambda_c)
        return RegimeCheck(
            name="compton",
            satisfied=margin > self.strictness,
            margin=margin,
            detail=f"λ_rad = {lambda_rad:.3e} m, λ_C = {lambda_c:.3e} m",
        )

    def _velocity(self, config: ExperimentConfig, beta: float) -> RegimeCheck:
        # (2) σ_p/m ≪ v 와 동치인 σ_x ≫ λ_dB
        speed = beta * self.consts.c
        lambda_db = de_broglie_wavelength(config.mass, speed, self.consts)
        margin = _ratio(config.wavepacket_spread, lambda_db)
        sigma_v = config.momentum_spread(self.consts) / config.mass if config.mass > 0 else math.inf
        return RegimeCheck(
            name="velocity",
            satisfied=margin > self.strictness,
            margin=margin,
            detail=(
                f"σ_x = {config.wavepacket_spread:.3e} m, λ_dB = {lambda_db:.3e} m, "
                f"σ_p/m = {sigma_v:.3e} m/s, v = {speed:.3e} m/s"
            ),
        )

    def _blackbody(self, config: ExperimentConfig) -> RegimeCheck:
        if config.temperature == 0.0:
            return RegimeCheck(
                name="blackbody",
                satisfied=True,
                margin=math.inf,
                detail="T = 0: 자명하게 충족",
            )
        lambda_th = thermal_wavelength(config.temperature, self.consts)
        margin = _ratio(lambda_th, config.separation)
        return RegimeCheck(
            name="blackbody",
            satisfied=margin > self.strictness,
            margin=margin,
            detail=f"λ_th = {lambda_th:.3e} m, L = {config.separation:.3e} m",
        )

    def _neutrality(self, config: ExperimentConfig) -> RegimeCheck:
        # 참고용: 전하가 있으면 전자기 제동복사가 함께 계산됨
        neutral = config.net_charge == 0.0
        return RegimeCheck(
            name="neutrality",
            satisfied=neutral,
            margin=math.inf if neutral else 0.0,
            required=False,
            detail="순전하 0" if neutral else f"q = {config.net_charge:.3e} C",
        )

    def _beta_consistency(self, config: ExperimentConfig) -> RegimeCheck:
        derived = config.derived_beta(self.consts)
        if config.beta == 0.0 or derived == 0.0:
            ratio = math.inf
        else:
            ratio = max(config.beta / derived, derived / config.beta)
        return RegimeCheck(
            name="beta_consistency",
            satisfied=ratio <= BETA_CONSISTENCY_FACTOR,
            margin=BETA_CONSISTENCY_FACTOR / ratio,
            required=False,
            detail=f"β = {config.beta:.4g}, L/(cτ) = {derived:.4g}",
        )
