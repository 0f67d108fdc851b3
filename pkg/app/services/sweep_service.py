"""
스윕 서비스

(m, β) 격자 위에서 결어긋남을 평가해 표를 만들고,
|ln Γ_G| 가 문턱값에 도달하는 질량 경계(frontier)와 기준 시나리오 표를 계산합니다.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from app.schemas.common import Channel
from app.schemas.decoherence import ExperimentConfig
from app.schemas.sweep import (
    FrontierPoint,
    ReferenceScenario,
    ScenarioRow,
    SweepRow,
    SweepSpec,
    SweepTable,
)
from physconst import Dimension, PhysicalConstants, Quantity, get_constants

from .decoherence_service import DecoherenceService
from .regime_service import DEFAULT_STRICTNESS, RegimeValidator

# (라벨, 질량 amu, 설명)
REFERENCE_SCENARIOS_AMU: List[Tuple[str, float, str]] = [
    ("molecule-1e4", 1e4, "분자 간섭계로 이미 구현된 규모"),
    ("nanoparticle-1e6", 1e6, "현재 기술로 확장 가능한 나노입자"),
    ("nanoparticle-1e7", 1e7, "지상 중력 환경의 한계 부근"),
    ("space-1e10", 1e10, "우주 기반 플랫폼 제안 규모"),
    ("levitated-1e14", 1e14, "부상 입자 (납 구) 제안 규모"),
    ("mirror-1e16", 1e16, "진동 거울 제안 규모"),
    ("planck-1.3e19", 1.3e19, "플랑크 질량 부근"),
]
SCENARIO_BETAS: Tuple[float, ...] = (1e-9, 0.1, 0.9)

# |ln Γ| 기준 판정 경계
NEGLIGIBLE_BELOW = 1e-3
MARGINAL_BELOW = 0.1

# 시나리오 평가용 기준 설정 (β 를 직접 지정하므로 L, τ 는 유효성 판정에만 쓰임)
SCENARIO_TEMPLATE = ExperimentConfig(
    mass=1.0,
    separation=1e-6,
    duration=1.0,
    beta=0.1,
    wavepacket_spread=1e-6,
)


def verdict(ln_gamma: float) -> str:
    magnitude = abs(ln_gamma)
    if magnitude < NEGLIGIBLE_BELOW:
        return "negligible"
    if magnitude < MARGINAL_BELOW:
        return "marginal"
    return "strong"


def reference_scenarios(consts: PhysicalConstants) -> List[ReferenceScenario]:
    return [
        ReferenceScenario(
            label=label,
            mass=Quantity(amu, Dimension.MASS, "amu", consts).to("kg").value,
            source_note=note,
        )
        for label, amu, note in REFERENCE_SCENARIOS_AMU
    ]


class SweepService:
    """격자 스윕 / 경계 / 기준 시나리오"""

    def __init__(
        self,
        consts: Optional[PhysicalConstants] = None,
        strictness: float = DEFAULT_STRICTNESS,
        workers: int = 1,
    ):
        self.consts = consts if consts else get_constants()
        self.decoherence = DecoherenceService(self.consts)
        self.validator = RegimeValidator(self.consts, strictness)
        self.workers = workers

    def _evaluate_point(
        self, template: ExperimentConfig, mass: float, beta: float, channels: Sequence[Channel]
    ) -> List[SweepRow]:
        config = template.with_point(mass, beta)
        valid = self.validator.validate(config).overall_valid
        rows = []
        for channel in channels:
            result = self.decoherence.decoherence(config, channel)
            rows.append(
                SweepRow(
                    m_kg=mass,
                    beta=beta,
                    channel=channel,
                    ln_gamma=result.ln_gamma,
                    gamma=result.gamma,
                    regime=result.regime,
                    valid=valid,
                )
            )
        return rows

    def run_sweep(self, spec: SweepSpec, template: ExperimentConfig) -> SweepTable:
        """
        격자 전체 평가

        행은 (m, β, channel) 순으로 정렬되며 작업자 수와 무관합니다.
        """
        channels = spec.channel.channels()
        points = [(m, beta) for m in spec.m_grid for beta in spec.beta_grid]

        def evaluate(point: Tuple[float, float]) -> List[SweepRow]:
            return self._evaluate_point(template, point[0], point[1], channels)

        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                blocks = list(pool.map(evaluate, points))
        else:
            blocks = [evaluate(p) for p in points]

        rows = [row for block in blocks for row in block]
        frontier = self.frontier(spec, template)
        logger.info(f"스윕 완료: {len(points)} 점, {len(rows)} 행, 경계 {len(frontier)} 점")
        return SweepTable(rows=rows, frontier=frontier)

    def frontier(self, spec: SweepSpec, template: ExperimentConfig) -> List[FrontierPoint]:
        """
        중력 채널 |ln Γ_G| = E₀ 경계 질량

        닫힌 형식 m* = m_P √(E₀/C″)/β² 와, 질량 격자 위 로그-로그 보간값을 함께 제공합니다.
        """
        _, _, c_double_prime = template.model_constants.effective(template.duration)
        log_masses = np.log(spec.m_grid)
        points = []
        for threshold in spec.target_exponents:
            for beta in spec.beta_grid:
                exponents = np.array(
                    [
                        -self.decoherence.grav_decoherence(template.with_point(m, beta)).ln_gamma
                        for m in spec.m_grid
                    ]
                )
                interpolated = None
                if len(spec.m_grid) > 1 and exponents[0] > 0 and exponents[0] <= threshold <= exponents[-1]:
                    interpolated = math.exp(
                        float(np.interp(math.log(threshold), np.log(exponents), log_masses))
                    )
                points.append(
                    FrontierPoint(
                        threshold=threshold,
                        beta=beta,
                        mass_closed_form=self.decoherence.threshold_mass(threshold, beta, c_double_prime),
                        mass_interpolated=interpolated,
                    )
                )
        return points

    def run_scenarios(
        self,
        betas: Sequence[float] = SCENARIO_BETAS,
        template: ExperimentConfig = SCENARIO_TEMPLATE,
    ) -> List[ScenarioRow]:
        """기준 질량 × β 의 중력 결어긋남 판정표"""
        rows = []
        for scenario in reference_scenarios(self.consts):
            mass_amu = Quantity(scenario.mass, Dimension.MASS, "kg", self.consts).to("amu").value
            for beta in betas:
                result = self.decoherence.grav_decoherence(template.with_point(scenario.mass, beta))
                rows.append(
                    ScenarioRow(
                        label=scenario.label,
                        mass_kg=scenario.mass,
                        mass_amu=mass_amu,
                        beta=beta,
                        ln_gamma=result.ln_gamma,
                        gamma=result.gamma,
                        verdict=verdict(result.ln_gamma),
                        source_note=scenario.source_note,
                    )
                )
        return rows
