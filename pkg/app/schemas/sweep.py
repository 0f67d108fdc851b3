"""
스윕/기준 시나리오 스키마
"""

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator

from .common import Channel, Regime, SweepChannel


class SweepSpec(BaseModel):
    """(m, β) 격자 스윕 명세"""

    m_grid: List[float] = Field(..., min_length=1, title="질량 격자 (kg, 오름차순)")
    beta_grid: List[float] = Field(..., min_length=1, title="β 격자 (0, 1)")
    channel: SweepChannel = Field(default=SweepChannel.GRAVITATIONAL)
    target_exponents: List[float] = Field(
        default_factory=lambda: [0.1, 1.0], title="|ln Γ| 문턱값 E₀"
    )

    @field_validator("m_grid")
    @classmethod
    def _check_masses(cls, values: List[float]) -> List[float]:
        if any(v <= 0 for v in values):
            raise ValueError("질량 격자는 양수여야 합니다")
        if values != sorted(values):
            raise ValueError("질량 격자는 오름차순이어야 합니다")
        return values

    @field_validator("beta_grid")
    @classmethod
    def _check_betas(cls, values: List[float]) -> List[float]:
        if any(not 0 < v < 1 for v in values):
            raise ValueError("β 격자는 (0, 1) 안에 있어야 합니다")
        if values != sorted(values):
            raise ValueError("β 격자는 오름차순이어야 합니다")
        return values

    @field_validator("target_exponents")
    @classmethod
    def _check_thresholds(cls, values: List[float]) -> List[float]:
        if any(v <= 0 for v in values):
            raise ValueError("문턱값은 양수여야 합니다")
        return values


class SweepRow(BaseModel):
    """스윕 CSV 한 행: m_kg,beta,channel,ln_gamma,gamma,regime,valid"""

    m_kg: float
    beta: float
    channel: Channel
    ln_gamma: float
    gamma: float
    regime: Regime
    valid: bool


class FrontierPoint(BaseModel):
    """문턱값 E₀ 에 도달하는 질량 m*(β)"""

    threshold: float
    beta: float
    mass_closed_form: float = Field(..., title="m_P √(E₀/C″) / β²")
    mass_interpolated: Optional[float] = Field(
        default=None, title="격자 보간값 (격자 범위 밖이면 None)"
    )


class SweepTable(BaseModel):
    rows: List[SweepRow] = Field(default_factory=list)
    frontier: List[FrontierPoint] = Field(default_factory=list)


class ReferenceScenario(BaseModel):
    """실험 현황 기준 질량"""

    label: str
    mass: float = Field(..., gt=0, title="질량 (kg)")
    source_note: str = ""


class ScenarioRow(BaseModel):
    label: str
    mass_kg: float
    mass_amu: float
    beta: float
    ln_gamma: float
    gamma: float
    verdict: str = Field(..., title="negligible / marginal / strong")
    source_note: str = ""
